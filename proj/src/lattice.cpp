#include "nilgeo/error.hpp"
#include "nilgeo/nilpotent.hpp"

#include <algorithm>
#include <cstdlib>

namespace nilgeo {

std::vector<std::vector<mpz_class>> hermite_rows(std::vector<std::vector<mpz_class>> rows, std::vector<std::size_t>& pivots) {
    pivots.clear();
    if (rows.empty()) return rows;
    const std::size_t cols = rows[0].size();
    std::size_t top = 0;
    for (std::size_t c = 0; c < cols && top < rows.size(); ++c) {
        // Euclid on column c among rows[top..]
        while (true) {
            std::size_t best = rows.size();
            for (std::size_t r = top; r < rows.size(); ++r) {
                if (rows[r][c] != 0 && (best == rows.size() || abs(rows[r][c]) < abs(rows[best][c]))) best = r;
            }
            if (best == rows.size()) break;
            std::swap(rows[top], rows[best]);
            bool clean = true;
            for (std::size_t r = top + 1; r < rows.size(); ++r) {
                if (rows[r][c] == 0) continue;
                mpz_class qt;
                mpz_fdiv_q(qt.get_mpz_t(), rows[r][c].get_mpz_t(), rows[top][c].get_mpz_t());
                for (std::size_t k = c; k < cols; ++k) rows[r][k] -= qt * rows[top][k];
                clean = clean && rows[r][c] == 0;
            }
            if (clean) break;
        }
        if (rows[top][c] == 0) continue;
        if (rows[top][c] < 0) {
            for (auto& x : rows[top]) x = -x;
        }
        // reduce the entries above the pivot into [0, pivot)
        for (std::size_t r = 0; r < top; ++r) {
            mpz_class qt;
            mpz_fdiv_q(qt.get_mpz_t(), rows[r][c].get_mpz_t(), rows[top][c].get_mpz_t());
            if (qt != 0) {
                for (std::size_t k = c; k < cols; ++k) rows[r][k] -= qt * rows[top][k];
            }
        }
        pivots.push_back(c);
        ++top;
    }
    rows.resize(top);
    return rows;
}

Lattice::Lattice(const MetricNilLie& n, Rational scale) : n_(&n), scale_(std::move(scale)) {
    if (scale_ <= 0) throw Error(ErrorCode::InvalidInput, "lattice scale must be positive");
    const std::size_t q = n.u_dim();
    const std::size_t k = n.z_dim();
    // center generators: s c_k and commutators s^2 [e_a, e_b]
    std::vector<QVec> gens;
    for (std::size_t c = 0; c < k; ++c) {
        QVec v(k);
        v[c] = scale_;
        gens.push_back(std::move(v));
    }
    const Rational s2 = scale_ * scale_;
    for (std::size_t a = 0; a < q; ++a) {
        for (std::size_t b = a + 1; b < q; ++b) {
            QVec v(k);
            for (std::size_t c = 0; c < k; ++c) v[c] = s2 * n.bracket[c](a, b);
            if (!is_zero(v)) gens.push_back(std::move(v));
        }
    }
    denominator_ = 1;
    for (const auto& g : gens) {
        for (const auto& x : g) mpz_lcm(denominator_.get_mpz_t(), denominator_.get_mpz_t(), x.get_den_mpz_t());
    }
    std::vector<std::vector<mpz_class>> rows;
    for (const auto& g : gens) {
        std::vector<mpz_class> row(k);
        for (std::size_t c = 0; c < k; ++c) {
            const Rational scaled = g[c] * Rational(denominator_);
            row[c] = scaled.get_num();
        }
        rows.push_back(std::move(row));
    }
    hnf_ = hermite_rows(std::move(rows), pivots_);
    for (const auto& row : hnf_) {
        QVec v(k);
        for (std::size_t c = 0; c < k; ++c) {
            v[c] = Rational(row[c], denominator_);
            v[c].canonicalize();
        }
        center_basis_.push_back(std::move(v));
    }
}

QVec Lattice::ordered_correction(const std::vector<mpz_class>& n) const {
    const std::size_t q = n_->u_dim();
    QVec partial(q), corr(n_->z_dim());
    for (std::size_t a = 0; a < q; ++a) {
        if (n[a] == 0) continue;
        QVec step(q);
        step[a] = scale_ * Rational(n[a]);
        corr = corr + frac(1, 2) * n_->bracket_of(partial, step);
        partial = partial + step;
    }
    return corr;
}

bool Lattice::contains_central(const QVec& z) const {
    const std::size_t k = z.size();
    std::vector<mpz_class> target(k);
    for (std::size_t c = 0; c < k; ++c) {
        const Rational scaled = z[c] * Rational(denominator_);
        if (!is_integer(scaled)) return false;
        target[c] = scaled.get_num();
    }
    for (std::size_t r = 0; r < hnf_.size(); ++r) {
        const std::size_t c = pivots_[r];
        if (target[c] % hnf_[r][c] != 0) return false;
        const mpz_class qt = target[c] / hnf_[r][c];
        for (std::size_t t = c; t < k; ++t) target[t] -= qt * hnf_[r][t];
    }
    return std::all_of(target.begin(), target.end(), [](const mpz_class& x) { return x == 0; });
}

bool lattice_membership(const Lattice& gamma, const GroupElem& g) {
    std::vector<mpz_class> n(g.u.size());
    for (std::size_t a = 0; a < g.u.size(); ++a) {
        const Rational coeff = g.u[a] / gamma.scale();
        if (!is_integer(coeff)) return false;
        n[a] = coeff.get_num();
    }
    return gamma.contains_central(g.z - gamma.ordered_correction(n));
}

}  // namespace nilgeo
