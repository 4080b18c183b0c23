#include "nilgeo/error.hpp"
#include "nilgeo/geodesic.hpp"

#include "spectral.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

namespace nilgeo {

std::optional<Rational> continued_fraction_rational(double x, int max_depth, double bound) {
    if (!std::isfinite(x) || std::abs(x) > bound) return std::nullopt;
    long double rem = x;
    mpz_class p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    for (int depth = 0; depth < max_depth; ++depth) {
        const long double a = std::floor(rem);
        const mpz_class ai(static_cast<double>(a));
        const mpz_class p2 = ai * p1 + p0, q2 = ai * q1 + q0;
        if (q2 > bound) return std::nullopt;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        const long double frac_part = rem - a;
        if (frac_part == 0 || 1 / frac_part > bound) {
            Rational out(p1, q1);
            out.canonicalize();
            return out;
        }
        rem = 1 / frac_part;
    }
    return std::nullopt;
}

std::optional<Rational> Period::over_2pi() const { return rational_sqrt(sq); }

double Period::value() const { return 2 * std::numbers::pi * std::sqrt(sq.get_d()); }

NumericInit to_numeric(const GeodesicInit& xi) {
    NumericInit out;
    out.alpha = xi.alpha.get_d();
    for (const auto& v : xi.x) out.x.push_back(v.get_d());
    for (const auto& v : xi.z) out.z.push_back(v.get_d());
    return out;
}

namespace {

void require_center(const MetricNilLie& n, const QVec& z) {
    if (z.size() != n.z_dim()) throw Error(ErrorCode::InvalidInput, "center vector has the wrong length");
}

bool in_cartan(const MetricNilLie& n, const QVec& z) {
    for (std::size_t c = n.g0.rank; c < z.size(); ++c) {
        if (z[c] != 0) return false;
    }
    return true;
}

QVec unit(std::size_t n, std::size_t k) {
    QVec v(n);
    v[k] = 1;
    return v;
}

QMatrix diagonal_projector(std::size_t n, const std::vector<std::size_t>& indices) {
    QMatrix p(n, n);
    for (auto i : indices) p(i, i) = 1;
    return p;
}

// For Z in the Cartan subalgebra every model block is an eigenspace with a = |lambda(Z)|.
ExactSpectrum cartan_spectrum(const MetricNilLie& n, const QVec& z) {
    const std::size_t q = n.u_dim();
    std::vector<std::size_t> kernel;
    std::map<Rational, std::vector<std::size_t>> groups;
    for (const auto& b : n.u.blocks) {
        Rational value = 0;
        for (std::size_t k = 0; k < n.g0.rank; ++k) value += z[k] * Rational(b.labels[k]);
        auto& dest = value == 0 ? kernel : groups[value * value];
        dest.insert(dest.end(), b.indices.begin(), b.indices.end());
    }
    ExactSpectrum s;
    s.z = z;
    for (auto i : kernel) s.kernel.push_back(unit(q, i));
    s.kernel_projector = diagonal_projector(q, kernel);
    for (auto& [a_sq, idx] : groups) {
        SpectralBlock b;
        b.a_sq = a_sq;
        for (auto i : idx) b.basis.push_back(unit(q, i));
        b.projector = diagonal_projector(q, idx);
        s.blocks.push_back(std::move(b));
    }
    return s;
}

QMatrix neg_square(const QMatrix& m) { return Rational(-1) * (m * m); }

// g^2 for the largest g with every a / g an integer; empty when some ratio is irrational.
std::optional<Rational> common_divisor_sq(const std::vector<SpectralBlock>& blocks) {
    if (blocks.empty()) return std::nullopt;
    const Rational& base = blocks.front().a_sq;
    mpz_class num = 0, den = 1;
    for (const auto& b : blocks) {
        const auto ratio = rational_sqrt(b.a_sq / base);
        if (!ratio) return std::nullopt;
        mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), ratio->get_num_mpz_t());
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), ratio->get_den_mpz_t());
    }
    Rational g(num, den);
    g.canonicalize();
    return base * g * g;
}

QVec concat(const QVec& a, const QVec& b) {
    QVec out = a;
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

struct Split {
    QVec x0;
    std::vector<QVec> parts;  // block components
};

Split split(const ResonantCenter& rc, const GeodesicInit& xi) {
    const MetricNilLie& n = rc.model();
    if (xi.x.size() != n.u_dim()) throw Error(ErrorCode::InvalidInput, "U vector has the wrong length");
    if (xi.z != rc.z()) throw Error(ErrorCode::InvalidInput, "initial vector and center disagree on Z");
    if (xi.alpha == 0) throw Error(ErrorCode::NotInNZ, "alpha is zero");
    Split s;
    s.x0 = rc.kernel_part(xi.x);
    if (is_zero(s.x0)) throw Error(ErrorCode::NotInNZ, "X has no component in ker j(Z)");
    for (std::size_t b = 0; b < rc.spectrum().blocks.size(); ++b) s.parts.push_back(rc.block_part(b, xi.x));
    return s;
}

std::size_t zero_block_dim(const MetricNilLie& n) {
    const auto* zero = n.zero_block();
    return zero ? zero->indices.size() : 0;
}

std::size_t nonzero_block_count(const MetricNilLie& n) { return n.u.blocks.size() - (n.zero_block() ? 1 : 0); }

}  // namespace

std::optional<ExactSpectrum> exact_spectrum(const MetricNilLie& n, const QVec& z) {
    require_center(n, z);
    if (in_cartan(n, z)) return cartan_spectrum(n, z);
    const QMatrix form = n.u.gram_matrix();
    const auto spaces = detail::exact_eigenspaces(neg_square(n.j(z)), form);
    if (!spaces) return std::nullopt;
    ExactSpectrum s;
    s.z = z;
    s.kernel_projector = QMatrix(n.u_dim(), n.u_dim());
    for (const auto& e : *spaces) {
        if (e.value == 0) {
            s.kernel = e.basis;
            s.kernel_projector = detail::orthogonal_projector(e.basis, form);
            continue;
        }
        s.blocks.push_back({e.value, e.basis, detail::orthogonal_projector(e.basis, form)});
    }
    return s;
}

JSpectrum j_spectrum(const MetricNilLie& n, const QVec& z) {
    if (auto s = exact_spectrum(n, z)) {
        JSpectrum out;
        out.exact = true;
        out.kernel_dim = s->kernel.size();
        for (const auto& b : s->blocks) out.pairs.push_back({std::sqrt(b.a_sq.get_d()), b.a_sq, b.basis.size() / 2});
        return out;
    }
    DVec zd;
    for (const auto& v : z) zd.push_back(v.get_d());
    return j_spectrum(NumericModel(n), zd);
}

JSpectrum j_spectrum(const NumericModel& n, std::span<const double> z) {
    const std::size_t q = n.u_dim();
    const Eigen::MatrixXd j = detail::row_major_to_eigen(n.j_matrix(z), q, q);
    Eigen::MatrixXd form = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(q), static_cast<Eigen::Index>(q));
    for (std::size_t i = 0; i < q; ++i) form(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = n.gram()[i];
    JSpectrum out;
    for (const auto& e : detail::numeric_eigenspaces(-(j * j), form)) {
        if (e.value == 0) out.kernel_dim = e.dim;
        else out.pairs.push_back({std::sqrt(e.value), std::nullopt, e.dim / 2});
    }
    return out;
}

std::optional<double> resonant_period(std::span<const double> a_values) {
    double base = 0;
    for (double a : a_values) {
        if (a > 0 && (base == 0 || a < base)) base = a;
    }
    if (base == 0) throw Error(ErrorCode::ZeroMap, "all eigenvalues vanish");
    mpz_class num = 0, den = 1;
    for (double a : a_values) {
        if (a <= 0) continue;
        const auto ratio = continued_fraction_rational(a / base);
        if (!ratio) return std::nullopt;
        mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), ratio->get_num_mpz_t());
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), ratio->get_den_mpz_t());
    }
    const double g = base * Rational(num, den).get_d();
    return 1 / g;
}

std::optional<double> is_resonant(const MetricNilLie& n, const QVec& z) {
    require_center(n, z);
    if (n.j(z).is_zero()) throw Error(ErrorCode::ZeroMap, "j(Z) vanishes");
    if (auto s = exact_spectrum(n, z)) {
        const auto g_sq = common_divisor_sq(s->blocks);
        if (!g_sq) return std::nullopt;
        return 2 * std::numbers::pi / std::sqrt(g_sq->get_d());
    }
    DVec a;
    for (const auto& p : j_spectrum(n, z).pairs) a.push_back(p.a);
    const auto period = resonant_period(a);
    if (!period) return std::nullopt;
    return 2 * std::numbers::pi * *period;
}

bool is_super_regular(const MetricNilLie& n, const QVec& z) {
    require_center(n, z);
    if (is_zero(z)) return false;
    const std::size_t zero_dim = zero_block_dim(n);
    const std::size_t blocks = nonzero_block_count(n);
    if (in_cartan(n, z)) {
        const auto s = cartan_spectrum(n, z);
        return s.kernel.size() == zero_dim && s.blocks.size() == blocks;
    }
    // Conjugation-free test: the spectrum of j(Z) is that of its Cartan conjugate, so count
    // the kernel and the distinct eigenvalues of j(Z)^2 (degree of its minimal polynomial).
    const QMatrix m = neg_square(n.j(z));
    const std::size_t q = n.u_dim();
    if (q - rank(m) != zero_dim) return false;
    const std::size_t expected = (zero_dim > 0 ? 1 : 0) + blocks;
    // Every eigenvalue comes from one block, so the degree never exceeds `expected`; the Krylov
    // sequence of one vector bounds it from below and usually settles the question cheaply.
    {
        EchelonBasis krylov(q);
        QVec v(q);
        for (std::size_t i = 0; i < q; ++i) v[i] = Rational(static_cast<long>(i * i % 7 + i + 1));
        std::size_t reached = 0;
        while (krylov.insert(v)) {
            ++reached;
            v = m * v;
        }
        if (reached == expected) return true;
    }
    EchelonBasis powers(q * q);
    QMatrix p = QMatrix::identity(q);
    std::size_t degree = 0;
    while (true) {
        QVec flat;
        flat.reserve(q * q);
        for (std::size_t r = 0; r < q; ++r) {
            for (std::size_t c = 0; c < q; ++c) flat.push_back(p(r, c));
        }
        if (!powers.insert(flat)) break;
        ++degree;
        p = p * m;
    }
    return degree == expected;
}

ResonantCenter::ResonantCenter(const MetricNilLie& n, QVec z) : n_(&n) {
    require_center(n, z);
    jz_ = n.j(z);
    if (jz_.is_zero()) throw Error(ErrorCode::ZeroMap, "j(Z) vanishes");
    auto s = exact_spectrum(n, z);
    if (!s) {
        if (!is_resonant(n, z)) throw Error(ErrorCode::NotResonant, "eigenvalue ratios of j(Z) are irrational");
        throw Error(ErrorCode::PreconditionViolated, "j(Z)^2 has irrational eigenvalues; use the numeric first hit");
    }
    spectrum_ = std::move(*s);
    const auto g_sq = common_divisor_sq(spectrum_.blocks);
    if (!g_sq) throw Error(ErrorCode::NotResonant, "eigenvalue ratios of j(Z) are irrational");
    gcd_sq_ = *g_sq;
}

Period ResonantCenter::period(const Rational& alpha) const {
    if (alpha == 0) throw Error(ErrorCode::NotInNZ, "alpha is zero");
    Period p;
    p.sq = 1 / (alpha * alpha * gcd_sq_);
    return p;
}

QVec ResonantCenter::j_inverse(const QVec& x) const {
    QVec out(x.size());
    for (const auto& b : spectrum_.blocks) out = out + (Rational(-1) / b.a_sq) * (jz_ * (b.projector * x));
    return out;
}

DVec FirstHitResult::value() const {
    const double w = omega.value();
    DVec out;
    out.reserve(coeff.size());
    for (const auto& c : coeff) out.push_back(w * c.get_d());
    return out;
}

bool same_value(const FirstHitResult& a, const FirstHitResult& b) {
    if (a.coeff.size() != b.coeff.size()) return false;
    if (is_zero(a.coeff) || is_zero(b.coeff)) return is_zero(a.coeff) && is_zero(b.coeff);
    std::size_t lead = 0;
    while (a.coeff[lead] == 0) ++lead;
    const Rational ratio = b.coeff[lead] / a.coeff[lead];
    // omega_a coeff_a = omega_b coeff_b  <=>  coeff_b = r coeff_a with r > 0 and r^2 = sq_a / sq_b
    return ratio > 0 && b.coeff == ratio * a.coeff && ratio * ratio == a.omega.sq / b.omega.sq;
}

FirstHitResult first_hit(const ResonantCenter& rc, const GeodesicInit& xi) {
    const MetricNilLie& n = rc.model();
    const Split s = split(rc, xi);
    const QVec x1 = xi.x - s.x0;
    QVec zc = xi.alpha * xi.z + (1 / xi.alpha) * n.bracket_of(s.x0, rc.j_inverse(x1));
    for (const auto& part : s.parts) zc = zc + (1 / (2 * xi.alpha)) * n.bracket_of(rc.j_inverse(part), part);
    return {rc.period(xi.alpha), concat(s.x0, zc)};
}

FirstHitResult first_hit(const MetricNilLie& n, const GeodesicInit& xi) { return first_hit(ResonantCenter(n, xi.z), xi); }

FirstHitResult mth_hit(const MetricNilLie& n, const GeodesicInit& xi, unsigned m) {
    if (m == 0) throw Error(ErrorCode::InvalidInput, "m must be positive");
    FirstHitResult r = first_hit(n, xi);
    r.omega.sq *= Rational(m) * Rational(m);
    return r;
}

FirstHitResult dFz(const ResonantCenter& rc, const GeodesicInit& xi, const QVec& direction) {
    const MetricNilLie& n = rc.model();
    if (direction.size() != n.u_dim()) throw Error(ErrorCode::InvalidInput, "direction has the wrong length");
    const Split s = split(rc, xi);
    const Period omega = rc.period(xi.alpha);
    const Rational inv_alpha = 1 / xi.alpha;
    if (is_zero(n.j(rc.z()) * direction)) {
        const QVec x1 = xi.x - s.x0;
        return {omega, concat(direction, inv_alpha * n.bracket_of(direction, rc.j_inverse(x1)))};
    }
    const auto& blocks = rc.spectrum().blocks;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        if (blocks[b].projector * direction != direction) continue;
        const QVec ju = rc.j_inverse(direction);
        const QVec& xb = s.parts[b];
        const QVec zc = n.bracket_of(s.x0, ju) + frac(1, 2) * (n.bracket_of(ju, xb) + n.bracket_of(rc.j_inverse(xb), direction));
        return {omega, concat(QVec(n.u_dim()), inv_alpha * zc)};
    }
    throw Error(ErrorCode::BadDirection, "direction is neither in ker j(Z) nor in a single eigenspace of j(Z)^2");
}

FirstHitResult dFz(const MetricNilLie& n, const GeodesicInit& xi, const QVec& direction) {
    return dFz(ResonantCenter(n, xi.z), xi, direction);
}

bool in_NZ_star(const ResonantCenter& rc, const GeodesicInit& xi) {
    const MetricNilLie& n = rc.model();
    if (xi.alpha == 0) return false;
    const QVec x0 = rc.kernel_part(xi.x);
    if (is_zero(x0)) return false;

    QMatrix ad_z(n.z_dim(), n.z_dim());
    for (std::size_t c = 0; c < n.z_dim(); ++c) {
        if (xi.z[c] != 0) ad_z = ad_z + xi.z[c] * n.g0.ad[c];
    }
    const auto spaces = detail::exact_eigenspaces(neg_square(ad_z), n.g0_inner);
    if (!spaces) throw Error(ErrorCode::PreconditionViolated, "ad(Z)^2 has irrational eigenvalues");
    const auto& blocks = rc.spectrum().blocks;
    for (const auto& e : *spaces) {
        if (e.value == 0) continue;
        // g0(beta) for the root beta with beta(Z)^2 = e.value
        if (e.basis.size() != 2) throw Error(ErrorCode::PreconditionViolated, "Z is not super regular");
        std::size_t b = 0;
        while (b < blocks.size() && blocks[b].a_sq != e.value) ++b;
        if (b == blocks.size()) throw Error(ErrorCode::PreconditionViolated, "a root is not a weight of U");
        const QVec img_a = n.j(e.basis[0]) * x0;
        const QVec img_b = n.j(e.basis[1]) * x0;
        if (is_zero(img_a) || is_zero(img_b)) return false;
        const QVec xb = blocks[b].projector * xi.x;
        const std::size_t base = rank(QMatrix::from_rows({img_a, img_b}, n.u_dim()));
        if (rank(QMatrix::from_rows({img_a, img_b, xb}, n.u_dim())) == base) return false;
    }
    return true;
}

bool in_NZ_star(const MetricNilLie& n, const GeodesicInit& xi) { return in_NZ_star(ResonantCenter(n, xi.z), xi); }

RankResult rank_at(const ResonantCenter& rc, const GeodesicInit& xi) {
    const MetricNilLie& n = rc.model();
    std::vector<QVec> images;
    for (const auto& v : rc.spectrum().kernel) images.push_back(dFz(rc, xi, v).coeff);
    for (const auto& b : rc.spectrum().blocks) {
        for (const auto& v : b.basis) images.push_back(dFz(rc, xi, v).coeff);
    }
    RankResult r;
    r.rank = rank(QMatrix::from_rows(images, n.dim()));
    r.target_dim = n.z_dim() + rc.spectrum().kernel.size();
    r.maximal = r.rank == r.target_dim;
    return r;
}

RankResult rank_at(const MetricNilLie& n, const GeodesicInit& xi) { return rank_at(ResonantCenter(n, xi.z), xi); }

QVec tilde_z2_at_period(const ResonantCenter& rc, const GeodesicInit& xi, unsigned m) {
    const MetricNilLie& n = rc.model();
    const Split s = split(rc, xi);
    const Period omega = rc.period(xi.alpha);
    const auto& blocks = rc.spectrum().blocks;
    // e^{m omega J} rotates block b by m a_b / g full turns
    for (const auto& b : blocks) {
        const auto turns = rational_sqrt(Rational(m) * Rational(m) * omega.sq * xi.alpha * xi.alpha * b.a_sq);
        if (!turns || !is_integer(*turns)) throw std::logic_error("period does not close every block");
    }
    const QMatrix jm = xi.alpha * n.j(rc.z());
    auto jinv = [&](std::size_t b, const QVec& v) { return (Rational(-1) / (xi.alpha * xi.alpha * blocks[b].a_sq)) * (jm * v); };
    auto br = [&](const QVec& a, const QVec& b) { return n.bracket_of(a, b); };
    const std::size_t q = n.u_dim();
    // with e^{tJ} = Id the factors (Id - e^{tJ}) vanish and e^{tJ} drops out of every bracket
    QVec jinv_x1(q), minus(q);
    for (std::size_t b = 0; b < blocks.size(); ++b) jinv_x1 = jinv_x1 + jinv(b, s.parts[b]);
    QVec z2 = br(s.x0, minus) + frac(1, 2) * br(jinv_x1, jinv_x1);
    for (std::size_t l = 0; l < blocks.size(); ++l) {
        for (std::size_t k = 0; k < blocks.size(); ++k) {
            if (l == k) continue;
            const Rational c = 1 / (xi.alpha * xi.alpha * (blocks[k].a_sq - blocks[l].a_sq));
            const QVec jl = jm * s.parts[l];
            const QVec jik = jinv(k, s.parts[k]);
            const QVec term = br(jl, jik) - br(s.parts[l], s.parts[k]);
            z2 = z2 - frac(1, 2) * c * term + frac(1, 2) * c * term;
        }
    }
    return z2;
}

}  // namespace nilgeo
