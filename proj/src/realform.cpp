#include "nilgeo/error.hpp"
#include "nilgeo/repbuild.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace nilgeo {

bool in_positive_half(const WeightVec& w) {
    for (const auto& x : w.coords) {
        if (x != 0) return x > 0;
    }
    return false;
}

QMatrix RealModule::gram_matrix() const {
    QMatrix g(dim(), dim());
    for (std::size_t k = 0; k < dim(); ++k) g(k, k) = gram[k];
    return g;
}

namespace {

// Conjugate-linear intertwiner J = W o conj with W e_i = -f_i W, W f_i = -e_i W.
// Returns false when V is not self-conjugate.
bool find_intertwiner(const IrrepModule& v, QMatrix& w) {
    const std::size_t d = v.dim();
    const auto n = v.e.size();
    WeightVec lowest = Rational(-1) * v.lam;
    const auto low = v.weight_space(lowest);
    if (low.size() != 1) return false;
    w = QMatrix(d, d);
    w(low[0], 0) = 1;
    // basis is ordered by depth below the highest weight, so spanning f-preimages come first
    std::map<IVec, std::vector<std::size_t>> spaces;
    for (std::size_t k = 0; k < d; ++k) spaces[v.weight_labels[k]].push_back(k);
    std::size_t k = 1;
    while (k < d) {
        const auto& rows = spaces.at(v.weight_labels[k]);
        std::vector<std::pair<std::size_t, std::size_t>> cols;  // (generator, source index)
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t src = 0; src < d; ++src) {
                bool hit = false;
                for (auto r : rows) hit = hit || v.f[j](r, src) != 0;
                if (hit) cols.emplace_back(j, src);
            }
        }
        QMatrix m(rows.size(), cols.size());
        for (std::size_t a = 0; a < rows.size(); ++a) {
            for (std::size_t c = 0; c < cols.size(); ++c) m(a, c) = v.f[cols[c].first](rows[a], cols[c].second);
        }
        for (std::size_t a = 0; a < rows.size(); ++a) {
            QVec target(rows.size());
            target[a] = 1;
            QVec x;
            if (!solve(m, target, x)) throw std::logic_error("weight space not spanned by lowering operators");
            QVec image(d);
            for (std::size_t c = 0; c < cols.size(); ++c) {
                if (x[c] == 0) continue;
                const auto [j, src] = cols[c];
                // W f_j src = -e_j W src
                const QVec wsrc = w.column(src);
                const QVec ew = v.e[j] * wsrc;
                image = image - x[c] * ew;
            }
            w.set_column(rows[a], image);
        }
        k = rows.back() + 1;
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (!(w * v.e[i] == Rational(-1) * (v.f[i] * w))) return false;
        if (!(w * v.f[i] == Rational(-1) * (v.e[i] * w))) return false;
        if (!(w * v.h[i] == Rational(-1) * (v.h[i] * w))) return false;
    }
    return true;
}

// Real part of the contravariant Hermitian form on realified coordinates.
Rational re_form(const QVec& norms, const QVec& a, const QVec& b) {
    const std::size_t d = norms.size();
    Rational acc = 0;
    for (std::size_t k = 0; k < d; ++k) {
        if (a[k] != 0 && b[k] != 0) acc += norms[k] * a[k] * b[k];
        if (a[k + d] != 0 && b[k + d] != 0) acc += norms[k] * a[k + d] * b[k + d];
    }
    return acc;
}

QVec unit(std::size_t n, std::size_t k) {
    QVec v(n);
    v[k] = 1;
    return v;
}

}  // namespace

RealModule realify(const IrrepModule& v, const ChevalleyBasis& cb) {
    const std::size_t d = v.dim();
    RealModule u;
    u.type = v.type;
    u.lam = v.lam;
    u.complex_dim = d;

    QMatrix w;
    bool real = find_intertwiner(v, w);
    if (real) {
        const QMatrix w2 = w * w;
        const Rational s = w2(0, 0);
        if (!(w2 == s * QMatrix::identity(d))) throw std::logic_error("intertwiner square is not scalar");
        const auto root = s > 0 ? rational_sqrt(s) : std::nullopt;
        real = root.has_value();
        if (real) w = (1 / *root) * w;
    }
    u.real_case = real ? RealCase::Real : RealCase::Realified;

    // weight spaces of V grouped by Lambda+ representative
    std::map<QVec, std::vector<std::size_t>, decltype([](const QVec& a, const QVec& b) { return graded_less(a, b); })> groups;
    const WeightVec zero = WeightVec::zero(static_cast<int>(v.lam.size()));
    for (std::size_t k = 0; k < d; ++k) {
        const WeightVec& mu = v.weights[k];
        if (mu == zero || in_positive_half(mu)) groups[mu.coords].push_back(k);
        else if (!real) groups[(Rational(-1) * mu).coords].push_back(k);
    }

    std::vector<std::pair<WeightVec, std::vector<QVec>>> raw;
    auto zero_it = groups.find(zero.coords);
    auto emit = [&](const QVec& mu, const std::vector<std::size_t>& idx) {
        std::vector<QVec> vecs;
        const bool is_zero = WeightVec(mu) == zero;
        if (!real) {
            for (auto b : idx) {
                vecs.push_back(unit(2 * d, b));
                vecs.push_back(unit(2 * d, b + d));
            }
        } else if (!is_zero) {
            for (auto b : idx) {
                QVec p(2 * d), q(2 * d);
                p[b] += 1;
                q[b + d] += 1;
                for (std::size_t r = 0; r < d; ++r) {
                    if (w(r, b) == 0) continue;
                    p[r] += w(r, b);
                    q[r + d] -= w(r, b);
                }
                vecs.push_back(std::move(p));
                vecs.push_back(std::move(q));
            }
        } else {
            QMatrix w0(idx.size(), idx.size());
            for (std::size_t a = 0; a < idx.size(); ++a) {
                for (std::size_t b = 0; b < idx.size(); ++b) w0(a, b) = w(idx[a], idx[b]);
            }
            const QMatrix id = QMatrix::identity(idx.size());
            for (int sign : {+1, -1}) {
                for (const QVec& a : nullspace(w0 - Rational(sign) * id)) {
                    QVec vec(2 * d);
                    for (std::size_t t = 0; t < idx.size(); ++t) vec[idx[t] + (sign > 0 ? 0 : d)] = a[t];
                    vecs.push_back(std::move(vec));
                }
            }
        }
        raw.emplace_back(WeightVec(mu), std::move(vecs));
    };
    if (zero_it != groups.end()) emit(zero_it->first, zero_it->second);
    for (const auto& [mu, idx] : groups) {
        if (WeightVec(mu) != zero) emit(mu, idx);
    }

    // orthogonalize inside each block
    const RootSystem rs = cb.roots();
    for (auto& [mu, vecs] : raw) {
        WeightBlock block;
        block.weight = mu;
        block.labels = to_ivec(rs.to_fundamental(mu));
        std::vector<QVec> done;
        for (QVec vec : vecs) {
            for (std::size_t l = 0; l < done.size(); ++l) {
                const Rational c = re_form(v.norms, vec, done[l]) / re_form(v.norms, done[l], done[l]);
                if (c != 0) vec = vec - c * done[l];
            }
            done.push_back(vec);
            block.indices.push_back(u.embedding.size());
            u.gram.push_back(re_form(v.norms, vec, vec));
            u.embedding.push_back(std::move(vec));
        }
        u.blocks.push_back(std::move(block));
    }

    const std::size_t q = u.embedding.size();
    for (const QMatrix& m : compactify(cb, v)) {
        QMatrix a(q, q);
        for (std::size_t k = 0; k < q; ++k) {
            const QVec image = m * u.embedding[k];
            QVec rebuilt(2 * d);
            for (std::size_t l = 0; l < q; ++l) {
                const Rational c = re_form(v.norms, u.embedding[l], image) / u.gram[l];
                if (c == 0) continue;
                a(l, k) = c;
                rebuilt = rebuilt + c * u.embedding[l];
            }
            if (rebuilt != image) throw std::logic_error("real form is not invariant");
        }
        u.action.push_back(std::move(a));
    }
    return u;
}

std::vector<WeightBlock> weight_decompose_real(const RealModule& u, const RootSystem& rs, const IVec& probe) {
    const std::size_t q = u.dim();
    const auto r = static_cast<std::size_t>(rs.rank());
    if (q == 0) return {};
    QMatrix h(q, q);
    for (std::size_t k = 0; k < r; ++k) h = h + Rational(probe[k]) * u.action[k];
    const QMatrix h2 = h * h;

    // numeric eigenvalues in orthonormal coordinates locate the candidate values -a^2
    Eigen::MatrixXd sym(q, q);
    for (std::size_t i = 0; i < q; ++i) {
        for (std::size_t j = 0; j < q; ++j) {
            sym(i, j) = to_double(h2(i, j)) * std::sqrt(to_double(u.gram[i]) / to_double(u.gram[j]));
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(0.5 * (sym + sym.transpose()), Eigen::EigenvaluesOnly);
    std::vector<std::int64_t> values;
    for (Eigen::Index k = 0; k < solver.eigenvalues().size(); ++k) {
        const double a2 = -solver.eigenvalues()[k];
        values.push_back(std::llround(std::sqrt(std::max(a2, 0.0))));
    }
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());

    std::vector<WeightBlock> blocks;
    std::size_t covered = 0;
    for (auto a : values) {
        const QMatrix shifted = h2 + Rational(a * a) * QMatrix::identity(q);
        auto basis = nullspace(shifted);
        if (basis.empty()) continue;
        covered += basis.size();
        // products (i tau_k)(i tau_l) act as -d_k d_l on a single +-lam block
        QMatrix coords = QMatrix::from_columns(basis, q);
        std::vector<std::vector<Rational>> prod(r, std::vector<Rational>(r));
        for (std::size_t k = 0; k < r; ++k) {
            for (std::size_t l = 0; l < r; ++l) {
                const QMatrix p = u.action[k] * u.action[l];
                const QVec first = p * basis[0];
                // scalar on the block?
                Rational c = 0;
                for (std::size_t t = 0; t < q; ++t) {
                    if (basis[0][t] != 0) {
                        c = first[t] / basis[0][t];
                        break;
                    }
                }
                for (const auto& b : basis) {
                    if (p * b != c * b) throw Error(ErrorCode::DegenerateEigenvalue, "probe merges distinct weights");
                }
                prod[k][l] = -c;
            }
        }
        IVec labels(r);
        std::size_t lead = r;
        for (std::size_t k = 0; k < r; ++k) {
            if (prod[k][k] == 0) continue;
            const auto root = rational_sqrt(prod[k][k]);
            if (!root || !is_integer(*root)) throw std::logic_error("non-integral weight label");
            if (lead == r) {
                lead = k;
                labels[k] = to_int64(*root);
            } else {
                labels[k] = to_int64(prod[lead][k] / Rational(labels[lead]));
            }
        }
        WeightVec mu = rs.from_fundamental(to_qvec(labels));
        if (!(mu == WeightVec::zero(rs.rank())) && !in_positive_half(mu)) {
            mu = Rational(-1) * mu;
            for (auto& x : labels) x = -x;
        }
        if (a == 0 && !(mu == WeightVec::zero(rs.rank()))) throw Error(ErrorCode::DegenerateEigenvalue, "probe vanishes on a nonzero weight");
        WeightBlock block;
        block.weight = mu;
        block.labels = labels;
        // indices: the block is reported in U coordinates by its support
        std::vector<bool> used(q, false);
        for (const auto& b : basis) {
            for (std::size_t t = 0; t < q; ++t) used[t] = used[t] || b[t] != 0;
        }
        for (std::size_t t = 0; t < q; ++t) {
            if (used[t]) block.indices.push_back(t);
        }
        if (block.indices.size() != basis.size()) throw std::logic_error("eigenspace is not spanned by basis vectors");
        blocks.push_back(std::move(block));
    }
    if (covered != q) throw std::logic_error("eigenspaces do not cover U");
    std::stable_sort(blocks.begin(), blocks.end(), [&](const WeightBlock& a, const WeightBlock& b) {
        const bool az = a.weight == WeightVec::zero(rs.rank()), bz = b.weight == WeightVec::zero(rs.rank());
        if (az != bz) return az;
        return graded_less(a.weight.coords, b.weight.coords);
    });
    return blocks;
}

std::vector<WeightBlock> weight_decompose_real(const RealModule& u, const RootSystem& rs) {
    const auto r = static_cast<std::size_t>(rs.rank());
    for (std::int64_t base = 2; base < 40; ++base) {
        IVec probe(r);
        std::int64_t p = 1;
        for (std::size_t k = 0; k < r; ++k, p *= base) probe[k] = p;
        try {
            return weight_decompose_real(u, rs, probe);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::DegenerateEigenvalue) throw;
        }
    }
    throw Error(ErrorCode::DegenerateEigenvalue, "no separating probe found");
}

}  // namespace nilgeo
