#pragma once

#include "nilgeo/repbuild.hpp"

#include <span>
#include <vector>

namespace nilgeo {

// 2-step nilpotent metric Lie algebra N = U + g0 with g0 central and
// <[X, Y], Z> = <j(Z) X, Y>, the inner product on g0 being minus the Killing form.
struct MetricNilLie {
    RealModule u;
    CompactAlgebra g0;
    QMatrix g0_inner;              // -Killing in the C0 basis
    std::vector<QMatrix> bracket;  // [X, Y]_c = X^T bracket[c] Y, skew

    std::size_t u_dim() const noexcept { return u.dim(); }
    std::size_t z_dim() const noexcept { return g0.dim(); }
    std::size_t dim() const noexcept { return u_dim() + z_dim(); }

    // [X, Y] in g0 coordinates.
    QVec bracket_of(const QVec& x, const QVec& y) const;
    // j(Z) = rho(Z) on U.
    QMatrix j(const QVec& z) const;
    const WeightBlock* zero_block() const;
};

// Solves the bracket from the metric identity. Throws KernelNotTrivial if g0 has a common kernel on U.
MetricNilLie build_nilalg(RealModule u, CompactAlgebra g0);
// Irrep -> real form -> N in one step.
MetricNilLie build_model(const RootSystem& rs, const WeightVec& lam);

// Exponential coordinates on N.
struct GroupElem {
    QVec u;
    QVec z;
    friend bool operator==(const GroupElem&, const GroupElem&) = default;
};

GroupElem identity_elem(const MetricNilLie& n);
GroupElem inverse(const GroupElem& a);
// log(exp a exp b) = a + b + [a, b] / 2
GroupElem bch_product(const MetricNilLie& n, const GroupElem& a, const GroupElem& b);

enum class Singularity { Nonsingular, AlmostNonsingular, Singular };
const char* singularity_name(Singularity s);
// Singular is certified by a nonzero zero-weight block; otherwise decided from the samples.
Singularity classify_singularity(const MetricNilLie& n, const std::vector<QVec>& samples);

std::vector<QVec> rational_kernel_basis(const MetricNilLie& n, const QVec& z);
// Recognizes a numeric center vector as rational (denominators up to 10^6, to a few ulps); throws NotRationalVector.
std::vector<QVec> rational_kernel_basis(const MetricNilLie& n, std::span<const double> z);

// Subgroup generated by exp(scale * basis vectors of U and g0).
class Lattice {
public:
    Lattice(const MetricNilLie& n, Rational scale = 1);

    const Rational& scale() const noexcept { return scale_; }
    // Row basis (Hermite normal form, scaled by 1/denominator) of log(Gamma) in the center.
    const std::vector<QVec>& center_basis() const noexcept { return center_basis_; }
    // Central correction of the ordered product exp(s n_1 e_1) ... exp(s n_q e_q).
    QVec ordered_correction(const std::vector<mpz_class>& n) const;
    bool contains_central(const QVec& z) const;

private:
    const MetricNilLie* n_;
    Rational scale_;
    mpz_class denominator_;
    std::vector<std::vector<mpz_class>> hnf_;  // integer rows of denominator * center lattice
    std::vector<std::size_t> pivots_;
    std::vector<QVec> center_basis_;
};

bool lattice_membership(const Lattice& gamma, const GroupElem& g);

// Integer row-style Hermite normal form; returns nonzero rows and their pivot columns.
std::vector<std::vector<mpz_class>> hermite_rows(std::vector<std::vector<mpz_class>> rows, std::vector<std::size_t>& pivots);

}  // namespace nilgeo
