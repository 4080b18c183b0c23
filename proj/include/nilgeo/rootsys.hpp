#pragma once

#include "nilgeo/rational.hpp"
#include "nilgeo/qmatrix.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace nilgeo {

enum class Family { A, B, C, D, E, F, G };

struct SimpleType {
    Family family;
    int rank;

    // "A2", "g2", "E8" ...
    static SimpleType parse(std::string_view name);
    std::string name() const;
    friend bool operator==(const SimpleType&, const SimpleType&) = default;
};

char family_letter(Family f);
Family parse_family(char c);

// Rational coordinates in the simple-root basis.
struct WeightVec {
    QVec coords;

    WeightVec() = default;
    explicit WeightVec(QVec c) : coords(std::move(c)) {}
    static WeightVec zero(int rank) { return WeightVec(QVec(static_cast<std::size_t>(rank))); }
    static WeightVec from_ints(const IVec& v) { return WeightVec(to_qvec(v)); }

    std::size_t size() const noexcept { return coords.size(); }
    const Rational& operator[](std::size_t i) const { return coords[i]; }
    bool is_integral() const;
    IVec to_ints() const { return to_ivec(coords); }

    friend WeightVec operator+(const WeightVec& a, const WeightVec& b) { return WeightVec(a.coords + b.coords); }
    friend WeightVec operator-(const WeightVec& a, const WeightVec& b) { return WeightVec(a.coords - b.coords); }
    friend WeightVec operator*(const Rational& s, const WeightVec& a) { return WeightVec(s * a.coords); }
    friend bool operator==(const WeightVec& a, const WeightVec& b) { return a.coords == b.coords; }
};

struct WeightVecHash {
    std::size_t operator()(const WeightVec& w) const noexcept { return QVecHash{}(w.coords); }
};

// Orbit size guard; NILGEO_ORBIT_CAP overrides the default of 10^6.
std::size_t default_orbit_cap();

// Integer matrix, row-major, used for Cartan data.
using IMatrix = std::vector<IVec>;

IMatrix cartan_matrix(SimpleType t);

class RootSystem {
public:
    static RootSystem build(SimpleType t);

    SimpleType type() const noexcept { return type_; }
    int rank() const noexcept { return type_.rank; }
    // cartan()[i][j] = <alpha_i, alpha_j> = 2(alpha_i, alpha_j) / (alpha_j, alpha_j)
    const IMatrix& cartan() const noexcept { return cartan_; }
    const QMatrix& inv_cartan() const noexcept { return inv_cartan_; }
    // Half squared lengths of simple roots, shortest normalized to 1.
    const IVec& symmetrizer() const noexcept { return symmetrizer_; }

    // Positive roots in simple-root coordinates, graded lexicographic order.
    std::span<const IVec> positive_roots() const noexcept { return positive_; }
    std::vector<IVec> roots() const;
    std::size_t root_count() const noexcept { return 2 * positive_.size(); }
    bool is_root(const IVec& v) const;
    // Index into positive_roots() of v or -v; throws NotARoot.
    std::size_t positive_index(const IVec& v) const;
    IVec simple_root(int i) const;
    std::int64_t height(const IVec& v) const;

    const IVec& mu1() const noexcept { return mu1_; }  // highest short root
    const IVec& mu2() const noexcept { return mu2_; }  // highest long root
    bool simply_laced() const noexcept { return mu1_ == mu2_; }

    // Symmetric invariant form with short simple roots of squared length 2.
    Rational inner(const QVec& a, const QVec& b) const;
    std::int64_t inner(const IVec& a, const IVec& b) const;
    bool is_long(const IVec& root) const;

    Rational pairing(const WeightVec& lam, const IVec& alpha) const;
    WeightVec reflect(const WeightVec& lam, const IVec& alpha) const;
    std::vector<WeightVec> weyl_orbit(const WeightVec& lam, std::size_t cap = default_orbit_cap()) const;
    bool dominance_leq(const WeightVec& mu, const WeightVec& lam) const;
    bool is_dominant(const WeightVec& lam) const;
    std::pair<IVec, IVec> highest_roots() const { return {mu1_, mu2_}; }

    // Fundamental-weight (Dynkin label) coordinates and back.
    QVec to_fundamental(const WeightVec& lam) const;
    WeightVec from_fundamental(const QVec& labels) const;
    // Dynkin labels of an integral root-lattice vector.
    IVec dynkin_labels(const IVec& root_coords) const;

private:
    void require_root(const IVec& alpha) const;

    SimpleType type_{Family::A, 1};
    IMatrix cartan_;
    QMatrix inv_cartan_;
    IVec symmetrizer_;
    std::vector<IVec> positive_;
    std::unordered_map<IVec, std::size_t, IVecHash> positive_lookup_;
    IVec mu1_;
    IVec mu2_;
};

// Positive roots by the root-string closure, independent of any RootSystem cache.
std::vector<IVec> close_positive_roots(const IMatrix& cartan);

// Sort key: height, then lexicographic coordinates.
bool graded_less(const IVec& a, const IVec& b);
bool graded_less(const QVec& a, const QVec& b);

}  // namespace nilgeo
