#pragma once

#include "nilgeo/qmatrix.hpp"
#include "nilgeo/rootsys.hpp"

#include <cstddef>
#include <map>
#include <vector>

namespace nilgeo {

std::size_t default_dimension_cap();  // NILGEO_DIM_CAP, default 512

// Irreducible highest-weight module over Q with the action of the Chevalley generators.
// Basis vectors are grouped by weight; each weight space carries a basis that is
// orthogonal for the contravariant form (e_i adjoint to f_i, highest vector of norm 1).
struct IrrepModule {
    SimpleType type;
    WeightVec lam;                       // root coordinates
    std::vector<IVec> weight_labels;     // Dynkin labels of each basis vector
    std::vector<WeightVec> weights;      // root coordinates of each basis vector
    std::vector<QMatrix> e, f, h;        // one per simple index
    QVec norms;                          // contravariant form on the basis (diagonal)

    std::size_t dim() const noexcept { return weights.size(); }
    // Basis indices of the weight space of mu.
    std::vector<std::size_t> weight_space(const WeightVec& mu) const;
};

IrrepModule build_irrep(const RootSystem& rs, const WeightVec& lam, std::size_t cap = default_dimension_cap());

// Chevalley basis: X_beta for every root and the simple coroots tau_i.
// Abstract basis order: positive roots, negative roots (same order), then tau_1..tau_r.
class ChevalleyBasis {
public:
    static ChevalleyBasis build(const RootSystem& rs);

    const RootSystem& roots() const noexcept { return rs_; }
    std::size_t dim() const noexcept { return 2 * rs_.positive_roots().size() + static_cast<std::size_t>(rs_.rank()); }
    // Abstract index of X_beta (beta a root) and of tau_i.
    std::size_t root_index(const IVec& beta) const;
    std::size_t coroot_index(int i) const { return 2 * rs_.positive_roots().size() + static_cast<std::size_t>(i); }
    const IVec& root_of(std::size_t index) const { return all_roots_[index]; }

    // [X_a, X_b] = c X_{a+b} when a + b is a root; 0 otherwise (a != -b).
    std::int64_t structure_constant(const IVec& a, const IVec& b) const;
    // Coroot tau_beta = [X_beta, X_-beta] in terms of the simple coroots.
    IVec coroot(const IVec& beta) const;
    // ad(x_k) for every abstract basis element, exact integer entries.
    const std::vector<QMatrix>& adjoint() const noexcept { return ad_; }

    // Matrices of X_beta on a module, built from its simple generators by nested commutators.
    std::vector<QMatrix> root_operators(const IrrepModule& v) const;

private:
    RootSystem rs_ = RootSystem::build({Family::A, 1});
    std::vector<IVec> all_roots_;
    // Each non-simple positive root is (1/(r+1))[e_i, X_parent].
    struct Step {
        int simple;
        std::size_t parent;  // index into positive roots
        std::int64_t divisor;
    };
    std::vector<Step> steps_;
    std::map<std::pair<std::size_t, std::size_t>, std::int64_t> constants_;
    std::vector<QMatrix> ad_;
};

// Compact real form with basis C0 = {i tau_k, A_beta, B_beta : beta > 0}.
// Order: i tau_1..i tau_r, then A_beta, B_beta interleaved per positive root.
struct CompactAlgebra {
    SimpleType type;
    std::size_t rank = 0;
    std::vector<IVec> positive_roots;
    std::vector<QMatrix> ad;   // ad(c_k) on g0 in the C0 basis
    QMatrix killing;           // Killing form of g0 in the C0 basis (negative definite)

    std::size_t dim() const noexcept { return rank + 2 * positive_roots.size(); }
    std::size_t tau_index(std::size_t k) const { return k; }
    std::size_t a_index(std::size_t beta) const { return rank + 2 * beta; }
    std::size_t b_index(std::size_t beta) const { return rank + 2 * beta + 1; }
    // Structure constants: [c_a, c_b] = sum_c bracket(a, b)[c] c_c.
    QVec bracket(std::size_t a, std::size_t b) const;
};

CompactAlgebra compact_algebra(const ChevalleyBasis& cb);

// Matrices of C0 on the realification of V (coordinates: real parts, then imaginary parts).
std::vector<QMatrix> compactify(const ChevalleyBasis& cb, const IrrepModule& v);

// Real weight block U_lam (lam in Lambda+, or the zero block).
struct WeightBlock {
    WeightVec weight;                   // root coordinates; zero for U_0
    IVec labels;                        // Dynkin labels
    std::vector<std::size_t> indices;   // basis indices in U
};

enum class RealCase { Real, Realified };

// Real g0-module U with a rational basis adapted to the weight decomposition.
struct RealModule {
    SimpleType type;
    WeightVec lam;
    RealCase real_case = RealCase::Realified;
    std::size_t complex_dim = 0;
    std::vector<QVec> embedding;        // U basis in realified coordinates of V (2 * complex_dim)
    std::vector<WeightBlock> blocks;    // U_0 first (if present), then Lambda+ in graded order
    QVec gram;                          // diagonal inner product on the U basis
    std::vector<QMatrix> action;        // C0 action on U, skew for gram

    std::size_t dim() const noexcept { return gram.size(); }
    QMatrix gram_matrix() const;
};

RealModule realify(const IrrepModule& v, const ChevalleyBasis& cb);

// Joint eigenspaces of H0^2 over the Cartan part of the action; blocks labelled by
// Lambda+ weights recovered from the products (i tau_k)(i tau_l).
// Throws DegenerateEigenvalue if the probe does not separate weights.
std::vector<WeightBlock> weight_decompose_real(const RealModule& u, const RootSystem& rs, const IVec& probe);
std::vector<WeightBlock> weight_decompose_real(const RealModule& u, const RootSystem& rs);

// Choice of Lambda+: first nonzero root coordinate positive.
bool in_positive_half(const WeightVec& w);

}  // namespace nilgeo
