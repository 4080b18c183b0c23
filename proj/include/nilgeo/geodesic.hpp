#pragma once

#include "nilgeo/nilpotent.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace nilgeo {

using DVec = std::vector<double>;

// Double-precision copy of the structure tensors, evaluated through the SIMD kernels.
class NumericModel {
public:
    explicit NumericModel(const MetricNilLie& n);

    std::size_t u_dim() const noexcept { return q_; }
    std::size_t z_dim() const noexcept { return k_; }
    const DVec& gram() const noexcept { return gram_; }
    const DVec& action(std::size_t c) const { return action_[c]; }  // row-major q x q
    const DVec& ad(std::size_t c) const { return ad_[c]; }          // row-major k x k
    const DVec& g0_inner() const noexcept { return g0_inner_; }     // row-major k x k

    DVec bracket(std::span<const double> x, std::span<const double> y) const;
    DVec j_matrix(std::span<const double> z) const;  // row-major q x q
    DVec j_apply(std::span<const double> z, std::span<const double> x) const;

private:
    std::size_t q_ = 0;
    std::size_t k_ = 0;
    DVec gram_;
    DVec g0_inner_;
    std::vector<DVec> action_;
    std::vector<DVec> ad_;
    std::vector<DVec> bracket_;  // row-major q x q per center coordinate
};

// Rational recognition by continued fractions: stops when the next partial quotient
// exceeds `bound`; gives up past `max_depth` terms or once a convergent's denominator exceeds `bound`.
std::optional<Rational> continued_fraction_rational(double x, int max_depth = 30, double bound = 1e9);

// Period omega = 2 pi sqrt(sq), kept exact.
struct Period {
    Rational sq;  // (omega / 2 pi)^2

    std::optional<Rational> over_2pi() const;  // when sq is a rational square
    double value() const;
};

// xi = X + alpha Z with X in U and Z in g0.
struct GeodesicInit {
    QVec x;
    Rational alpha;
    QVec z;
};

struct NumericInit {
    DVec x;
    double alpha = 1;
    DVec z;
};

NumericInit to_numeric(const GeodesicInit& xi);

// Eigenspace of j(Z)^2 for the eigenvalue -a^2, a > 0.
struct SpectralBlock {
    Rational a_sq;
    std::vector<QVec> basis;
    QMatrix projector;  // orthogonal projector onto the block
};

// U = ker j(Z) + sum of the blocks, blocks sorted by increasing a.
struct ExactSpectrum {
    QVec z;
    std::vector<QVec> kernel;
    QMatrix kernel_projector;
    std::vector<SpectralBlock> blocks;
};

// Empty when some eigenvalue of j(Z)^2 is irrational.
std::optional<ExactSpectrum> exact_spectrum(const MetricNilLie& n, const QVec& z);

// Eigenvalue pair +-i a of j(Z) with complex multiplicity.
struct EigenPair {
    double a = 0;
    std::optional<Rational> a_sq;
    std::size_t multiplicity = 0;
};

struct JSpectrum {
    std::size_t kernel_dim = 0;
    std::vector<EigenPair> pairs;  // increasing a
    bool exact = false;
};

JSpectrum j_spectrum(const MetricNilLie& n, const QVec& z);
JSpectrum j_spectrum(const NumericModel& n, std::span<const double> z);

// omega / 2 pi making every a * omega a multiple of 2 pi, or empty when some ratio is irrational.
std::optional<double> resonant_period(std::span<const double> a_values);
// Smallest omega > 0 with e^{omega j(Z)} = Id, or empty; throws ZeroMap when j(Z) = 0.
std::optional<double> is_resonant(const MetricNilLie& n, const QVec& z);
bool is_super_regular(const MetricNilLie& n, const QVec& z);

// Spectral data of a resonant Z with rational eigenvalues, reused by the first-hit computations.
class ResonantCenter {
public:
    // Throws ZeroMap, NotResonant, or PreconditionViolated when a^2 is irrational.
    ResonantCenter(const MetricNilLie& n, QVec z);

    const MetricNilLie& model() const noexcept { return *n_; }
    const QVec& z() const noexcept { return spectrum_.z; }
    const ExactSpectrum& spectrum() const noexcept { return spectrum_; }
    // Period of e^{t j(alpha Z)}.
    Period period(const Rational& alpha) const;
    // Inverse of j(Z) on the orthogonal complement of the kernel, zero on the kernel.
    QVec j_inverse(const QVec& x) const;
    QVec kernel_part(const QVec& x) const { return spectrum_.kernel_projector * x; }
    QVec block_part(std::size_t b, const QVec& x) const { return spectrum_.blocks[b].projector * x; }

private:
    const MetricNilLie* n_;
    ExactSpectrum spectrum_;
    QMatrix jz_;
    Rational gcd_sq_;  // g^2, g the largest number dividing every a in Q
};

// F_Z(xi) = omega * coeff with coeff = (U part, g0 part).
struct FirstHitResult {
    Period omega;
    QVec coeff;

    DVec value() const;
};

// Exact comparison of omega * coeff.
bool same_value(const FirstHitResult& a, const FirstHitResult& b);

// Throws NotInNZ when X has no kernel component or alpha = 0, NotResonant as for ResonantCenter.
FirstHitResult first_hit(const MetricNilLie& n, const GeodesicInit& xi);
FirstHitResult first_hit(const ResonantCenter& rc, const GeodesicInit& xi);
FirstHitResult mth_hit(const MetricNilLie& n, const GeodesicInit& xi, unsigned m);
// Derivative along a direction lying in ker j(Z) or in a single block; throws BadDirection otherwise.
FirstHitResult dFz(const MetricNilLie& n, const GeodesicInit& xi, const QVec& direction);
FirstHitResult dFz(const ResonantCenter& rc, const GeodesicInit& xi, const QVec& direction);

// Genericity conditions on X0 and the root components of X, stated intrinsically through
// the eigenspaces of ad(Z)^2 so that no conjugation into the Cartan subalgebra is needed.
bool in_NZ_star(const MetricNilLie& n, const GeodesicInit& xi);
bool in_NZ_star(const ResonantCenter& rc, const GeodesicInit& xi);

struct RankResult {
    std::size_t rank = 0;
    std::size_t target_dim = 0;  // dim g0 + dim ker j(Z)
    bool maximal = false;
};

RankResult rank_at(const MetricNilLie& n, const GeodesicInit& xi);
RankResult rank_at(const ResonantCenter& rc, const GeodesicInit& xi);

// Closed-form geodesic exp(X(t) + Z(t)) through the identity with initial velocity xi;
// Z(t) = t z1 + z2.
struct GeodesicPoint {
    DVec x;
    DVec z;
    DVec z1;
    DVec z2;
};

GeodesicPoint geodesic_eval(const NumericModel& n, const NumericInit& xi, double t);
// z2 of the closed form at t = m omega in exact arithmetic, where e^{t j(alpha Z)} is the identity.
QVec tilde_z2_at_period(const ResonantCenter& rc, const GeodesicInit& xi, unsigned m);

// Independent integration of X'' = j(alpha Z) X', Z' = alpha Z - [X', X] / 2 by classical RK4.
struct OdePoint {
    DVec x;
    DVec z;
};

OdePoint geodesic_rk4(const NumericModel& n, const NumericInit& xi, double t, double step = 1e-4);

// Numeric first hit with the spectrum of Z found numerically; throws NotResonant or NotInNZ.
struct NumericHit {
    double omega = 0;
    DVec u;
    DVec z;
};

NumericHit numeric_first_hit(const NumericModel& n, const NumericInit& xi);

struct CertifyOptions {
    std::size_t budget = 10000;  // first-hit evaluations
    unsigned max_m = 64;
    std::uint64_t seed = 0;
};

// Closed geodesic through the identity: gamma(t + m omega) = phi gamma(t) with phi in Gamma.
struct Certificate {
    DVec x;  // X of the certified initial vector xi* = X + alpha Z
    Rational alpha;
    QVec z;
    unsigned m = 0;
    Period omega;
    GroupElem phi;                     // log coordinates of the lattice element m F_Z(xi*)
    double hit_residual = 0;           // |m F_Z(xi*) - log phi|
    double translation_residual = 0;   // max over samples of |log(phi gamma(t)) - log gamma(t + m omega)|
    bool rotation_exact = false;       // e^{m omega j(alpha Z)} = Id checked in rational arithmetic
    std::size_t evaluations = 0;
};

// Requires Z rational, resonant and super regular. Throws BudgetExhausted when no certificate is found.
Certificate certify_closed(const MetricNilLie& n, const Lattice& gamma, const GeodesicInit& xi, const CertifyOptions& opts = {});

}  // namespace nilgeo
