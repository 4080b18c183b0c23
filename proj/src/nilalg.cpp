#include "nilgeo/error.hpp"
#include "nilgeo/nilpotent.hpp"

#include <cmath>
#include <limits>

namespace nilgeo {

QVec MetricNilLie::bracket_of(const QVec& x, const QVec& y) const {
    QVec out(z_dim());
    for (std::size_t c = 0; c < z_dim(); ++c) out[c] = dot(x, bracket[c] * y);
    return out;
}

QMatrix MetricNilLie::j(const QVec& z) const {
    QMatrix m(u_dim(), u_dim());
    for (std::size_t c = 0; c < z_dim(); ++c) {
        if (z[c] != 0) m = m + z[c] * u.action[c];
    }
    return m;
}

const WeightBlock* MetricNilLie::zero_block() const {
    for (const auto& b : u.blocks) {
        if (b.weight == WeightVec::zero(static_cast<int>(b.weight.size()))) return &b;
    }
    return nullptr;
}

MetricNilLie build_nilalg(RealModule u, CompactAlgebra g0) {
    const std::size_t q = u.dim();
    const std::size_t k = g0.dim();
    QMatrix stacked(q * k, q);
    for (std::size_t c = 0; c < k; ++c) {
        for (std::size_t r = 0; r < q; ++r) {
            for (std::size_t s = 0; s < q; ++s) stacked(c * q + r, s) = u.action[c](r, s);
        }
    }
    if (!nullspace(stacked).empty()) throw Error(ErrorCode::KernelNotTrivial, "g0 has a common kernel on U");

    MetricNilLie n;
    n.g0_inner = Rational(-1) * g0.killing;
    const QMatrix inv = inverse(n.g0_inner);
    const QMatrix gram = u.gram_matrix();
    // <[e_a, e_b], c_c> = (rho(c_c)^T G)_{ab}
    std::vector<QMatrix> pairing;
    pairing.reserve(k);
    for (std::size_t c = 0; c < k; ++c) pairing.push_back(u.action[c].transpose() * gram);
    n.bracket.assign(k, QMatrix(q, q));
    for (std::size_t d = 0; d < k; ++d) {
        for (std::size_t c = 0; c < k; ++c) {
            if (inv(d, c) != 0) n.bracket[d] = n.bracket[d] + inv(d, c) * pairing[c];
        }
    }
    n.u = std::move(u);
    n.g0 = std::move(g0);
    return n;
}

MetricNilLie build_model(const RootSystem& rs, const WeightVec& lam) {
    auto cb = ChevalleyBasis::build(rs);
    auto v = build_irrep(rs, lam);
    return build_nilalg(realify(v, cb), compact_algebra(cb));
}

GroupElem identity_elem(const MetricNilLie& n) { return {QVec(n.u_dim()), QVec(n.z_dim())}; }

GroupElem inverse(const GroupElem& a) { return {-a.u, -a.z}; }

GroupElem bch_product(const MetricNilLie& n, const GroupElem& a, const GroupElem& b) {
    return {a.u + b.u, a.z + b.z + frac(1, 2) * n.bracket_of(a.u, b.u)};
}

const char* singularity_name(Singularity s) {
    switch (s) {
        case Singularity::Nonsingular: return "Nonsingular";
        case Singularity::AlmostNonsingular: return "AlmostNonsingular";
        case Singularity::Singular: return "Singular";
    }
    return "Unknown";
}

Singularity classify_singularity(const MetricNilLie& n, const std::vector<QVec>& samples) {
    if (const auto* zero = n.zero_block(); zero && !zero->indices.empty()) return Singularity::Singular;
    std::size_t singular = 0, regular = 0;
    for (const auto& z : samples) {
        if (is_zero(z)) continue;
        if (rank(n.j(z)) < n.u_dim()) ++singular;
        else ++regular;
    }
    if (regular == 0 && singular > 0) return Singularity::Singular;
    return singular == 0 ? Singularity::Nonsingular : Singularity::AlmostNonsingular;
}

std::vector<QVec> rational_kernel_basis(const MetricNilLie& n, const QVec& z) {
    if (z.size() != n.z_dim()) throw Error(ErrorCode::InvalidInput, "center vector has the wrong length");
    return nullspace(n.j(z));
}

namespace {

// Best rational approximation with denominator at most max_den (continued fractions).
bool recognize_rational(double x, long max_den, Rational& out) {
    if (!std::isfinite(x)) return false;
    const double tol = 64 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(x));
    long double rem = x;
    mpz_class p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    for (int depth = 0; depth < 40; ++depth) {
        const long double a = std::floor(rem);
        const mpz_class ai(static_cast<double>(a));
        mpz_class p2 = ai * p1 + p0, q2 = ai * q1 + q0;
        if (q2 > max_den) return false;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        const Rational cand(p1, q1);
        if (std::abs(cand.get_d() - x) <= tol) {
            out = cand;
            out.canonicalize();
            return true;
        }
        const long double frac_part = rem - a;
        if (frac_part == 0) return false;
        rem = 1 / frac_part;
    }
    return false;
}

}  // namespace

std::vector<QVec> rational_kernel_basis(const MetricNilLie& n, std::span<const double> z) {
    QVec q(z.size());
    for (std::size_t k = 0; k < z.size(); ++k) {
        if (!recognize_rational(z[k], 1000000, q[k])) throw Error(ErrorCode::NotRationalVector, "center vector is not rational");
    }
    return rational_kernel_basis(n, q);
}

}  // namespace nilgeo
