#include "nilgeo/error.hpp"
#include "nilgeo/repbuild.hpp"
#include "nilgeo/weights.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <string>

namespace nilgeo {

std::size_t default_dimension_cap() {
    if (const char* env = std::getenv("NILGEO_DIM_CAP")) {
        const long long v = std::atoll(env);
        if (v > 0) return static_cast<std::size_t>(v);
    }
    return 512;
}

std::vector<std::size_t> IrrepModule::weight_space(const WeightVec& mu) const {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < weights.size(); ++k) {
        if (weights[k] == mu) out.push_back(k);
    }
    return out;
}

namespace {

// One weight space during construction. Bases are orthogonal for the contravariant form.
struct Space {
    IVec labels;
    std::size_t dim = 0;
    std::map<int, QMatrix> e_out;  // e_i : this -> space(mu + alpha_i)
    std::map<int, QMatrix> f_in;   // f_j : space(mu + alpha_j) -> this
    QVec norms;
};

IVec shift(const IVec& labels, const IMatrix& cartan, int j, int sign) {
    IVec out = labels;
    for (std::size_t k = 0; k < out.size(); ++k) out[k] += sign * cartan[static_cast<std::size_t>(j)][k];
    return out;
}

// Gram-Schmidt for a symmetric positive-definite rational form; columns of the result are
// the new basis in old coordinates.
QMatrix orthogonalize(const QMatrix& gram, QVec& norms) {
    const std::size_t n = gram.rows();
    std::vector<QVec> basis;
    norms.assign(n, Rational(0));
    auto form = [&](const QVec& a, const QVec& b) {
        Rational acc = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (a[i] == 0) continue;
            for (std::size_t j = 0; j < n; ++j) {
                if (b[j] != 0) acc += a[i] * gram(i, j) * b[j];
            }
        }
        return acc;
    };
    for (std::size_t k = 0; k < n; ++k) {
        QVec v(n);
        v[k] = 1;
        for (std::size_t l = 0; l < basis.size(); ++l) {
            const Rational c = form(v, basis[l]) / norms[l];
            if (c != 0) v = v - c * basis[l];
        }
        norms[k] = form(v, v);
        if (norms[k] <= 0) throw Error(ErrorCode::PreconditionViolated, "contravariant form is not positive definite");
        basis.push_back(std::move(v));
    }
    return QMatrix::from_columns(basis, n);
}

}  // namespace

IrrepModule build_irrep(const RootSystem& rs, const WeightVec& lam, std::size_t cap) {
    const QVec qlabels = rs.to_fundamental(lam);
    for (const auto& x : qlabels) {
        if (!is_integer(x) || x < 0) throw Error(ErrorCode::PreconditionViolated, "highest weight is not dominant integral");
    }
    const mpz_class expected = weyl_dimension(rs, lam);
    if (expected > mpz_class(static_cast<unsigned long>(cap))) {
        throw Error(ErrorCode::DimensionCapExceeded, "dimension " + expected.get_str() + " exceeds cap " + std::to_string(cap));
    }
    const int n = rs.rank();
    const IMatrix& cartan = rs.cartan();

    std::map<IVec, Space> spaces;
    std::vector<std::vector<IVec>> levels;
    {
        Space top;
        top.labels = to_ivec(qlabels);
        top.dim = 1;
        top.norms = {Rational(1)};
        levels.push_back({top.labels});
        spaces.emplace(top.labels, std::move(top));
    }

    while (true) {
        std::vector<IVec> candidates;
        for (const IVec& nu : levels.back()) {
            for (int j = 0; j < n; ++j) candidates.push_back(shift(nu, cartan, j, -1));
        }
        std::sort(candidates.begin(), candidates.end());
        candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

        std::vector<IVec> next_level;
        for (const IVec& mu : candidates) {
            // targets of the e-maps out of mu
            std::vector<int> up;
            std::vector<std::size_t> offset;
            std::size_t total = 0;
            for (int i = 0; i < n; ++i) {
                if (spaces.count(shift(mu, cartan, i, +1))) {
                    up.push_back(i);
                    offset.push_back(total);
                    total += spaces.at(shift(mu, cartan, i, +1)).dim;
                }
            }
            // e-images of the candidates f_j b
            struct Candidate {
                int j;
                std::size_t b;
                QVec image;
            };
            std::vector<Candidate> cands;
            for (std::size_t ui = 0; ui < up.size(); ++ui) {
                const int j = up[ui];
                const Space& src = spaces.at(shift(mu, cartan, j, +1));
                for (std::size_t b = 0; b < src.dim; ++b) {
                    QVec image(total);
                    for (std::size_t vi = 0; vi < up.size(); ++vi) {
                        const int i = up[vi];
                        // e_i f_j b = f_j e_i b + delta_ij h_i b
                        auto eit = src.e_out.find(i);
                        if (eit != src.e_out.end()) {
                            const Space& mid = spaces.at(shift(mu, cartan, i, +1));
                            const QVec eib = eit->second.column(b);
                            const QVec fe = mid.f_in.at(j) * eib;
                            for (std::size_t k = 0; k < fe.size(); ++k) image[offset[vi] + k] += fe[k];
                        }
                        if (i == j) image[offset[vi] + b] += Rational(src.labels[static_cast<std::size_t>(i)]);
                    }
                    cands.push_back({j, b, std::move(image)});
                }
            }
            EchelonBasis echelon(total);
            std::vector<std::size_t> accepted;
            for (std::size_t c = 0; c < cands.size(); ++c) {
                if (echelon.insert(cands[c].image)) accepted.push_back(c);
            }
            if (accepted.empty()) continue;

            Space space;
            space.labels = mu;
            space.dim = accepted.size();
            for (std::size_t vi = 0; vi < up.size(); ++vi) {
                const Space& target = spaces.at(shift(mu, cartan, up[vi], +1));
                QMatrix e(target.dim, space.dim);
                for (std::size_t a = 0; a < accepted.size(); ++a) {
                    for (std::size_t r = 0; r < target.dim; ++r) e(r, a) = cands[accepted[a]].image[offset[vi] + r];
                }
                space.e_out.emplace(up[vi], std::move(e));
            }
            for (int j : up) {
                const Space& src = spaces.at(shift(mu, cartan, j, +1));
                QMatrix f(space.dim, src.dim);
                for (const auto& c : cands) {
                    if (c.j != j) continue;
                    QVec coords;
                    echelon.coordinates(c.image, coords);
                    f.set_column(c.b, coords);
                }
                space.f_in.emplace(j, std::move(f));
            }
            // contravariant form: (f_j b, w) = (b, e_j w)
            QMatrix gram(space.dim, space.dim);
            for (std::size_t a = 0; a < space.dim; ++a) {
                const Candidate& ca = cands[accepted[a]];
                const Space& src = spaces.at(shift(mu, cartan, ca.j, +1));
                const QMatrix& ej = space.e_out.at(ca.j);
                for (std::size_t a2 = 0; a2 < space.dim; ++a2) {
                    gram(a, a2) = src.norms[ca.b] * ej(ca.b, a2);
                }
            }
            QVec norms;
            const QMatrix t = orthogonalize(gram, norms);
            const QMatrix tinv = inverse(t);
            for (auto& [i, e] : space.e_out) e = e * t;
            for (auto& [j, f] : space.f_in) f = tinv * f;
            space.norms = std::move(norms);
            next_level.push_back(mu);
            spaces.emplace(mu, std::move(space));
        }
        if (next_level.empty()) break;
        levels.push_back(std::move(next_level));
    }

    IrrepModule v;
    v.type = rs.type();
    v.lam = lam;
    std::map<IVec, std::size_t> start;
    for (const auto& level : levels) {
        for (const IVec& mu : level) {
            const Space& s = spaces.at(mu);
            start[mu] = v.weights.size();
            const WeightVec w = rs.from_fundamental(to_qvec(mu));
            for (std::size_t k = 0; k < s.dim; ++k) {
                v.weight_labels.push_back(mu);
                v.weights.push_back(w);
                v.norms.push_back(s.norms[k]);
            }
        }
    }
    const std::size_t d = v.weights.size();
    if (mpz_class(static_cast<unsigned long>(d)) != expected) {
        throw std::logic_error("irrep construction produced dimension " + std::to_string(d));
    }
    v.e.assign(static_cast<std::size_t>(n), QMatrix(d, d));
    v.f.assign(static_cast<std::size_t>(n), QMatrix(d, d));
    v.h.assign(static_cast<std::size_t>(n), QMatrix(d, d));
    for (const auto& [mu, s] : spaces) {
        const std::size_t c0 = start.at(mu);
        for (const auto& [i, e] : s.e_out) {
            const std::size_t r0 = start.at(shift(mu, cartan, i, +1));
            for (std::size_t r = 0; r < e.rows(); ++r) {
                for (std::size_t c = 0; c < e.cols(); ++c) v.e[static_cast<std::size_t>(i)](r0 + r, c0 + c) = e(r, c);
            }
        }
        for (const auto& [j, f] : s.f_in) {
            const std::size_t src0 = start.at(shift(mu, cartan, j, +1));
            for (std::size_t r = 0; r < f.rows(); ++r) {
                for (std::size_t c = 0; c < f.cols(); ++c) v.f[static_cast<std::size_t>(j)](c0 + r, src0 + c) = f(r, c);
            }
        }
        for (int i = 0; i < n; ++i) {
            for (std::size_t k = 0; k < s.dim; ++k) v.h[static_cast<std::size_t>(i)](c0 + k, c0 + k) = Rational(mu[static_cast<std::size_t>(i)]);
        }
    }
    return v;
}

}  // namespace nilgeo
