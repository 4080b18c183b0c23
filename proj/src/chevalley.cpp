#include "nilgeo/error.hpp"
#include "nilgeo/repbuild.hpp"

#include <stdexcept>

namespace nilgeo {

namespace {

// Gaussian rational a + bi.
struct GaussQ {
    Rational re, im;
};

GaussQ operator*(const GaussQ& x, const GaussQ& y) { return {x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re}; }

}  // namespace

std::size_t ChevalleyBasis::root_index(const IVec& beta) const {
    const std::size_t p = rs_.positive_index(beta);
    bool positive = false;
    for (auto x : beta) {
        if (x != 0) {
            positive = x > 0;
            break;
        }
    }
    return positive ? p : p + rs_.positive_roots().size();
}

IVec ChevalleyBasis::coroot(const IVec& beta) const {
    // beta^vee = sum_i c_i (alpha_i, alpha_i) / (beta, beta) alpha_i^vee
    const std::int64_t bb = rs_.inner(beta, beta);
    IVec out(beta.size());
    for (std::size_t i = 0; i < beta.size(); ++i) {
        const std::int64_t num = beta[i] * 2 * rs_.symmetrizer()[i];
        if (num % bb != 0) throw std::logic_error("coroot is not integral");
        out[i] = num / bb;
    }
    return out;
}

std::int64_t ChevalleyBasis::structure_constant(const IVec& a, const IVec& b) const {
    auto it = constants_.find({root_index(a), root_index(b)});
    return it == constants_.end() ? 0 : it->second;
}

std::vector<QMatrix> ChevalleyBasis::root_operators(const IrrepModule& v) const {
    const std::size_t np = rs_.positive_roots().size();
    std::vector<QMatrix> ops(2 * np);
    for (std::size_t p = 0; p < np; ++p) {
        const Step& s = steps_[p];
        if (s.divisor == 0) {
            ops[p] = v.e[static_cast<std::size_t>(s.simple)];
            ops[p + np] = v.f[static_cast<std::size_t>(s.simple)];
            continue;
        }
        const Rational inv = frac(1, s.divisor);
        ops[p] = inv * commutator(v.e[static_cast<std::size_t>(s.simple)], ops[s.parent]);
        ops[p + np] = (-inv) * commutator(v.f[static_cast<std::size_t>(s.simple)], ops[s.parent + np]);
    }
    return ops;
}

ChevalleyBasis ChevalleyBasis::build(const RootSystem& rs) {
    ChevalleyBasis cb;
    cb.rs_ = rs;
    const auto pos = rs.positive_roots();
    const std::size_t np = pos.size();
    const auto r = static_cast<std::size_t>(rs.rank());
    for (const auto& p : pos) cb.all_roots_.push_back(p);
    for (const auto& p : pos) cb.all_roots_.push_back(-1 * p);

    // positive roots are graded, so every parent precedes its child
    cb.steps_.resize(np);
    for (std::size_t p = 0; p < np; ++p) {
        const IVec& beta = pos[p];
        if (rs.height(beta) == 1) {
            int i = 0;
            while (beta[static_cast<std::size_t>(i)] == 0) ++i;
            cb.steps_[p] = {i, 0, 0};
            continue;
        }
        bool found = false;
        for (int i = 0; i < rs.rank() && !found; ++i) {
            IVec parent = beta - rs.simple_root(i);
            if (!rs.is_root(parent)) continue;
            std::int64_t down = 0;
            while (rs.is_root(parent - (down + 1) * rs.simple_root(i))) ++down;
            cb.steps_[p] = {i, rs.positive_index(parent), down + 1};
            found = true;
        }
        if (!found) throw std::logic_error("positive root without a simple predecessor");
    }

    // constants read off a faithful module
    const IrrepModule adj = build_irrep(rs, WeightVec::from_ints(rs.mu2()), static_cast<std::size_t>(-1));
    const auto ops = cb.root_operators(adj);
    auto op_of = [&](std::size_t idx) -> const QMatrix& { return ops[idx]; };
    for (std::size_t a = 0; a < 2 * np; ++a) {
        for (std::size_t b = 0; b < 2 * np; ++b) {
            const IVec sum = cb.all_roots_[a] + cb.all_roots_[b];
            if (!rs.is_root(sum)) continue;
            const QMatrix lhs = commutator(op_of(a), op_of(b));
            const QMatrix& target = op_of(cb.root_index(sum));
            Rational c;
            bool set = false;
            for (std::size_t i = 0; i < target.rows() && !set; ++i) {
                for (std::size_t j = 0; j < target.cols() && !set; ++j) {
                    if (target(i, j) != 0) {
                        c = lhs(i, j) / target(i, j);
                        set = true;
                    }
                }
            }
            if (!set || !(c * target == lhs) || !is_integer(c)) throw std::logic_error("structure constant is not an integer multiple");
            cb.constants_[{a, b}] = to_int64(c);
        }
    }

    // adjoint matrices on the abstract basis
    const std::size_t dim = cb.dim();
    auto labels_of = [&](const IVec& beta) { return rs.dynkin_labels(beta); };
    cb.ad_.assign(dim, QMatrix(dim, dim));
    for (std::size_t a = 0; a < 2 * np; ++a) {
        const IVec& alpha = cb.all_roots_[a];
        QMatrix& m = cb.ad_[a];
        for (std::size_t b = 0; b < 2 * np; ++b) {
            const IVec& beta = cb.all_roots_[b];
            if (alpha + beta == IVec(r, 0)) {
                const IVec co = cb.coroot(alpha);
                for (std::size_t i = 0; i < r; ++i) m(cb.coroot_index(static_cast<int>(i)), b) = Rational(co[i]);
            } else if (auto it = cb.constants_.find({a, b}); it != cb.constants_.end()) {
                m(cb.root_index(alpha + beta), b) = Rational(it->second);
            }
        }
        const IVec lab = labels_of(alpha);
        for (std::size_t i = 0; i < r; ++i) m(a, cb.coroot_index(static_cast<int>(i))) = Rational(-lab[i]);
    }
    for (std::size_t i = 0; i < r; ++i) {
        QMatrix& m = cb.ad_[cb.coroot_index(static_cast<int>(i))];
        for (std::size_t b = 0; b < 2 * np; ++b) m(b, b) = Rational(labels_of(cb.all_roots_[b])[i]);
    }
    return cb;
}

QVec CompactAlgebra::bracket(std::size_t a, std::size_t b) const { return ad[a].column(b); }

CompactAlgebra compact_algebra(const ChevalleyBasis& cb) {
    const RootSystem& rs = cb.roots();
    const auto pos = rs.positive_roots();
    const std::size_t np = pos.size();
    const auto r = static_cast<std::size_t>(rs.rank());
    CompactAlgebra g;
    g.type = rs.type();
    g.rank = r;
    g.positive_roots.assign(pos.begin(), pos.end());
    const std::size_t dim = g.dim();
    const std::size_t cdim = cb.dim();

    // C0 elements as Gaussian-rational vectors over the Chevalley basis
    std::vector<std::vector<GaussQ>> elems(dim, std::vector<GaussQ>(cdim));
    for (std::size_t k = 0; k < r; ++k) elems[g.tau_index(k)][cb.coroot_index(static_cast<int>(k))] = {0, 1};
    for (std::size_t p = 0; p < np; ++p) {
        elems[g.a_index(p)][p] = {1, 0};
        elems[g.a_index(p)][p + np] = {-1, 0};
        elems[g.b_index(p)][p] = {0, 1};
        elems[g.b_index(p)][p + np] = {0, 1};
    }
    auto to_compact = [&](const std::vector<GaussQ>& v) {
        QVec out(dim);
        for (std::size_t k = 0; k < r; ++k) {
            const GaussQ& t = v[cb.coroot_index(static_cast<int>(k))];
            if (t.re != 0) throw std::logic_error("bracket left the compact form");
            out[g.tau_index(k)] = t.im;
        }
        for (std::size_t p = 0; p < np; ++p) {
            const GaussQ& x = v[p];
            const GaussQ& y = v[p + np];
            if (x.re != -y.re || x.im != y.im) throw std::logic_error("bracket left the compact form");
            out[g.a_index(p)] = x.re;
            out[g.b_index(p)] = x.im;
        }
        return out;
    };
    g.ad.assign(dim, QMatrix(dim, dim));
    for (std::size_t a = 0; a < dim; ++a) {
        for (std::size_t b = 0; b < dim; ++b) {
            std::vector<GaussQ> acc(cdim);
            for (std::size_t i = 0; i < cdim; ++i) {
                if (elems[a][i].re == 0 && elems[a][i].im == 0) continue;
                for (std::size_t j = 0; j < cdim; ++j) {
                    if (elems[b][j].re == 0 && elems[b][j].im == 0) continue;
                    const GaussQ w = elems[a][i] * elems[b][j];
                    const QMatrix& adi = cb.adjoint()[i];
                    for (std::size_t k = 0; k < cdim; ++k) {
                        if (adi(k, j) == 0) continue;
                        acc[k].re += w.re * adi(k, j);
                        acc[k].im += w.im * adi(k, j);
                    }
                }
            }
            g.ad[a].set_column(b, to_compact(acc));
        }
    }
    g.killing = QMatrix(dim, dim);
    for (std::size_t a = 0; a < dim; ++a) {
        for (std::size_t b = a; b < dim; ++b) {
            const QMatrix prod = g.ad[a] * g.ad[b];
            Rational tr = 0;
            for (std::size_t k = 0; k < dim; ++k) tr += prod(k, k);
            g.killing(a, b) = tr;
            g.killing(b, a) = tr;
        }
    }
    return g;
}

std::vector<QMatrix> compactify(const ChevalleyBasis& cb, const IrrepModule& v) {
    const std::size_t d = v.dim();
    const std::size_t np = cb.roots().positive_roots().size();
    const auto r = static_cast<std::size_t>(cb.roots().rank());
    const auto ops = cb.root_operators(v);
    // complex matrix P + iQ on (re, im) coordinates
    auto realified = [d](const QMatrix* p, const QMatrix* q) {
        QMatrix m(2 * d, 2 * d);
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = 0; j < d; ++j) {
                if (p && (*p)(i, j) != 0) {
                    m(i, j) = (*p)(i, j);
                    m(i + d, j + d) = (*p)(i, j);
                }
                if (q && (*q)(i, j) != 0) {
                    m(i, j + d) = -(*q)(i, j);
                    m(i + d, j) = (*q)(i, j);
                }
            }
        }
        return m;
    };
    std::vector<QMatrix> out;
    out.reserve(r + 2 * np);
    for (std::size_t k = 0; k < r; ++k) out.push_back(realified(nullptr, &v.h[k]));
    for (std::size_t p = 0; p < np; ++p) {
        const QMatrix a = ops[p] - ops[p + np];
        const QMatrix s = ops[p] + ops[p + np];
        out.push_back(realified(&a, nullptr));
        out.push_back(realified(nullptr, &s));
    }
    return out;
}

}  // namespace nilgeo
