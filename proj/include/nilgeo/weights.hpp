#pragma once

#include "nilgeo/rootsys.hpp"

#include <gmpxx.h>

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace nilgeo {

// Multiplicities of V(lam) on its dominant weights, computed by Freudenthal's recursion.
// Weights are held as integer Dynkin labels.
class WeightDiagram {
public:
    WeightDiagram(const RootSystem& rs, const WeightVec& lam);

    const WeightVec& highest() const noexcept { return lam_; }
    // Multiplicity of an arbitrary weight (0 outside the support).
    std::int64_t multiplicity(const WeightVec& mu) const;
    std::int64_t multiplicity_labels(const IVec& labels) const;

    struct Entry {
        IVec labels;
        WeightVec weight;
        std::int64_t mult;
    };
    // Dominant weights of the support, graded order from the top.
    const std::vector<Entry>& dominant() const noexcept { return dominant_; }
    // Full saturated support.
    std::vector<WeightVec> support(std::size_t cap = default_orbit_cap()) const;
    // Sum of multiplicities over the support.
    std::int64_t total_multiplicity(std::size_t cap = default_orbit_cap()) const;

private:
    IVec dominant_conjugate(IVec labels) const;

    const RootSystem* rs_;
    WeightVec lam_;
    std::vector<Entry> dominant_;
    std::unordered_map<IVec, std::int64_t, IVecHash> mult_;
};

std::vector<WeightVec> saturated_weights(const RootSystem& rs, const WeightVec& lam);
std::int64_t freudenthal_multiplicity(const RootSystem& rs, const WeightVec& lam, const WeightVec& mu);
mpz_class weyl_dimension(const RootSystem& rs, const WeightVec& lam);
// Size of the Weyl orbit of an integral weight given by Dynkin labels.
std::size_t orbit_size(const RootSystem& rs, const IVec& labels, std::size_t cap = default_orbit_cap());

struct RootWeightCheck {
    bool all_roots_are_weights;
    std::optional<IVec> witness;  // a root that is not a weight (mu2)
    std::string rule;             // which inequality argument decided the fast path
};

// Per-type inequality argument, cross-checked against the dominance test.
RootWeightCheck roots_are_weights(const RootSystem& rs, const WeightVec& lam);
RootWeightCheck roots_are_weights_fast(const RootSystem& rs, const WeightVec& lam);
bool roots_are_weights_by_dominance(const RootSystem& rs, const WeightVec& lam);

bool is_primitive_pair(const RootSystem& rs, const WeightVec& lam, const WeightVec& mu);
// Closed-form criterion for K(lam, mu) = 1 on primitive pairs (Berenstein-Zelevinsky).
bool bz_primitive_K1(const RootSystem& rs, const WeightVec& lam, const WeightVec& mu);

enum class LPrimeReason { RootNotWeight, RootMultOne, Admissible };
const char* reason_name(LPrimeReason r);

struct LPrimeVerdict {
    WeightVec lam;
    bool in_Lprime;
    LPrimeReason reason;
    std::optional<IVec> witness;
};

LPrimeVerdict in_L_prime(const RootSystem& rs, const WeightVec& lam);

struct IdealReport {
    SimpleType type;
    std::vector<LPrimeVerdict> verdicts;
    bool has_weight_outside_Lprime;
};

struct AdmissibilityReport {
    bool admissible;
    std::vector<IdealReport> ideals;
};

struct IdealWeights {
    SimpleType type;
    std::vector<WeightVec> highest_weights;
};

AdmissibilityReport is_admissible(const std::vector<IdealWeights>& decomposition);

// Dominant root-lattice weights with 1 <= p_i <= bound, graded order.
std::vector<WeightVec> enumerate_dominant_zero_weight(const RootSystem& rs, int bound);

// Rows of the published list of weights failing the root multiplicity condition,
// read parametrically (k >= 1, N >= 1) and closed under Dynkin diagram automorphisms.
// Returns the matching row label, if any.
std::optional<std::string> tabulated_Lprime_row(SimpleType t, const IVec& lam);

}  // namespace nilgeo
