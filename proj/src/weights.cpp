#include "nilgeo/weights.hpp"

#include "nilgeo/error.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

namespace nilgeo {

namespace {

IVec integral_labels(const RootSystem& rs, const WeightVec& lam) {
    QVec labels = rs.to_fundamental(lam);
    for (const auto& d : labels) {
        if (!is_integer(d)) throw Error(ErrorCode::PreconditionViolated, "weight is not integral");
    }
    return to_ivec(labels);
}

bool all_nonnegative(const IVec& v) {
    return std::all_of(v.begin(), v.end(), [](std::int64_t x) { return x >= 0; });
}

// Integer Gram matrix of the fundamental weights, scaled by a common denominator.
struct ScaledForm {
    std::vector<IVec> gram;
    std::int64_t scale = 1;  // gram = scale * (true Gram matrix)

    explicit ScaledForm(const RootSystem& rs) {
        const auto n = static_cast<std::size_t>(rs.rank());
        mpz_class lcm = 1;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), rs.inv_cartan()(j, i).get_den_mpz_t());
        }
        gram.assign(n, IVec(n, 0));
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                Rational g = rs.inv_cartan()(j, i) * static_cast<long>(rs.symmetrizer()[i]) * Rational(lcm);
                gram[i][j] = to_int64(g);
            }
        }
        scale = lcm.get_si();
    }

    std::int64_t operator()(const IVec& a, const IVec& b) const {
        __int128 acc = 0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] == 0) continue;
            for (std::size_t j = 0; j < b.size(); ++j) acc += static_cast<__int128>(a[i]) * gram[i][j] * b[j];
        }
        return static_cast<std::int64_t>(acc);
    }
};

}  // namespace

WeightDiagram::WeightDiagram(const RootSystem& rs, const WeightVec& lam) : rs_(&rs), lam_(lam) {
    const auto n = static_cast<std::size_t>(rs.rank());
    IVec top = integral_labels(rs, lam);
    if (!all_nonnegative(top)) throw Error(ErrorCode::PreconditionViolated, "highest weight is not dominant");

    std::vector<IVec> root_labels;
    for (const auto& a : rs.positive_roots()) root_labels.push_back(rs.dynkin_labels(a));

    // Dominant weights below lam are connected to lam by subtracting positive roots.
    struct Node {
        IVec labels;
        IVec depth;  // lam - mu in simple-root coordinates
    };
    std::vector<Node> nodes{{top, IVec(n, 0)}};
    std::unordered_set<IVec, IVecHash> seen{top};
    for (std::size_t head = 0; head < nodes.size(); ++head) {
        for (std::size_t k = 0; k < root_labels.size(); ++k) {
            IVec next = nodes[head].labels - root_labels[k];
            if (!all_nonnegative(next) || seen.count(next)) continue;
            seen.insert(next);
            nodes.push_back({next, nodes[head].depth + IVec(rs.positive_roots()[k])});
        }
    }
    std::sort(nodes.begin(), nodes.end(), [](const Node& a, const Node& b) { return graded_less(a.depth, b.depth); });

    ScaledForm form(rs);
    IVec rho(n, 1);
    IVec top_rho = top + rho;
    const std::int64_t top_norm = form(top_rho, top_rho);
    const auto& sym = rs.symmetrizer();

    for (const auto& node : nodes) {
        std::int64_t mult = 1;
        if (node.labels != top) {
            IVec shifted = node.labels + rho;
            const std::int64_t denom = top_norm - form(shifted, shifted);
            __int128 numer = 0;
            for (std::size_t k = 0; k < root_labels.size(); ++k) {
                const IVec& alpha = rs.positive_roots()[k];
                IVec nu = node.labels;
                while (true) {
                    nu = nu + root_labels[k];
                    auto it = mult_.find(dominant_conjugate(nu));
                    if (it == mult_.end()) break;
                    // (nu, alpha) = sum_j d_j c_j s_j
                    std::int64_t pair = 0;
                    for (std::size_t j = 0; j < n; ++j) pair += nu[j] * alpha[j] * sym[j];
                    numer += static_cast<__int128>(it->second) * pair;
                }
            }
            numer *= 2 * form.scale;
            if (denom <= 0 || numer % denom != 0) {
                throw std::logic_error("Freudenthal recursion produced a non-integral multiplicity");
            }
            mult = static_cast<std::int64_t>(numer / denom);
        }
        if (mult > 0) {
            mult_.emplace(node.labels, mult);
            dominant_.push_back({node.labels, lam - WeightVec::from_ints(node.depth), mult});
        }
    }
}

IVec WeightDiagram::dominant_conjugate(IVec labels) const {
    const auto& c = rs_->cartan();
    const auto n = labels.size();
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < n; ++i) {
            if (labels[i] >= 0) continue;
            const std::int64_t d = labels[i];
            for (std::size_t j = 0; j < n; ++j) labels[j] -= d * c[i][j];
            changed = true;
        }
    }
    return labels;
}

std::int64_t WeightDiagram::multiplicity_labels(const IVec& labels) const {
    auto it = mult_.find(dominant_conjugate(labels));
    return it == mult_.end() ? 0 : it->second;
}

std::int64_t WeightDiagram::multiplicity(const WeightVec& mu) const {
    QVec labels = rs_->to_fundamental(mu);
    for (const auto& d : labels) {
        if (!is_integer(d)) return 0;
    }
    if (!rs_->dominance_leq(rs_->from_fundamental(to_qvec(dominant_conjugate(to_ivec(labels)))), lam_)) return 0;
    return multiplicity_labels(to_ivec(labels));
}

std::vector<WeightVec> WeightDiagram::support(std::size_t cap) const {
    std::vector<WeightVec> out;
    for (const auto& e : dominant_) {
        auto orbit = rs_->weyl_orbit(e.weight, cap);
        out.insert(out.end(), orbit.begin(), orbit.end());
        if (out.size() > cap) throw Error(ErrorCode::OrbitBudgetExceeded, "weight support exceeds orbit cap");
    }
    std::sort(out.begin(), out.end(), [](const WeightVec& a, const WeightVec& b) { return graded_less(a.coords, b.coords); });
    return out;
}

std::int64_t WeightDiagram::total_multiplicity(std::size_t cap) const {
    std::int64_t total = 0;
    for (const auto& e : dominant_) total += e.mult * static_cast<std::int64_t>(orbit_size(*rs_, e.labels, cap));
    return total;
}

std::size_t orbit_size(const RootSystem& rs, const IVec& labels, std::size_t cap) {
    const auto& c = rs.cartan();
    const auto n = labels.size();
    std::unordered_set<IVec, IVecHash> seen{labels};
    std::vector<IVec> queue{labels};
    for (std::size_t head = 0; head < queue.size(); ++head) {
        for (std::size_t i = 0; i < n; ++i) {
            const std::int64_t d = queue[head][i];
            if (d == 0) continue;
            IVec next = queue[head];
            for (std::size_t j = 0; j < n; ++j) next[j] -= d * c[i][j];
            if (seen.insert(next).second) {
                if (seen.size() > cap) throw Error(ErrorCode::OrbitBudgetExceeded, "orbit exceeds cap");
                queue.push_back(std::move(next));
            }
        }
    }
    return seen.size();
}

std::vector<WeightVec> saturated_weights(const RootSystem& rs, const WeightVec& lam) {
    return WeightDiagram(rs, lam).support();
}

std::int64_t freudenthal_multiplicity(const RootSystem& rs, const WeightVec& lam, const WeightVec& mu) {
    return WeightDiagram(rs, lam).multiplicity(mu);
}

mpz_class weyl_dimension(const RootSystem& rs, const WeightVec& lam) {
    IVec labels = integral_labels(rs, lam);
    if (!all_nonnegative(labels)) throw Error(ErrorCode::PreconditionViolated, "highest weight is not dominant");
    const auto& sym = rs.symmetrizer();
    mpz_class numer = 1, denom = 1;
    for (const auto& alpha : rs.positive_roots()) {
        std::int64_t top = 0, base = 0;
        for (std::size_t j = 0; j < labels.size(); ++j) {
            top += (labels[j] + 1) * alpha[j] * sym[j];
            base += alpha[j] * sym[j];
        }
        numer *= static_cast<long>(top);
        denom *= static_cast<long>(base);
    }
    if (numer % denom != 0) throw std::logic_error("Weyl dimension is not integral");
    return numer / denom;
}

namespace {

void require_positive_root_lattice(const RootSystem& rs, const WeightVec& lam) {
    if (!lam.is_integral()) throw Error(ErrorCode::PreconditionViolated, "weight is not in the root lattice");
    for (const auto& x : lam.coords) {
        if (x < 1) throw Error(ErrorCode::PreconditionViolated, "weight needs all-positive simple-root coordinates");
    }
    if (!rs.is_dominant(lam)) throw Error(ErrorCode::PreconditionViolated, "weight is not dominant");
}

// Which of the two shapes of dominant C_n weights with m_1 = 1 lam has, or 0.
int symplectic_shape(const IVec& m) {
    const auto n = static_cast<std::int64_t>(m.size());
    bool first = true;
    for (std::int64_t i = 1; i <= n - 1; ++i) first = first && m[i - 1] == i;
    if (first && m[n - 1] == n / 2) return 1;
    for (std::int64_t big_n = 1; 2 * big_n <= n - 1; ++big_n) {
        bool ok = m[n - 1] == big_n;
        for (std::int64_t i = 1; i <= n - 1 && ok; ++i) ok = m[i - 1] == (i <= 2 * big_n ? i : 2 * big_n);
        if (ok) return 2;
    }
    return 0;
}

}  // namespace

RootWeightCheck roots_are_weights_fast(const RootSystem& rs, const WeightVec& lam) {
    require_positive_root_lattice(rs, lam);
    const IVec m = lam.to_ints();
    switch (rs.type().family) {
        case Family::A:
        case Family::D:
        case Family::E:
            return {true, std::nullopt, "single root length: every nonzero dominant root-lattice weight dominates the highest root"};
        case Family::B:
        case Family::F:
        case Family::G:
            if (m == rs.mu1()) return {false, rs.mu2(), "lam equals the highest short root"};
            return {true, std::nullopt, "dominance inequalities force lam above the highest long root unless lam = mu1"};
        case Family::C: {
            if (m[0] >= 2) return {true, std::nullopt, "m1 >= 2 forces lam above the highest long root"};
            int shape = symplectic_shape(m);
            if (shape == 0) throw std::logic_error("dominant C_n weight with m1 = 1 matches neither shape");
            return {false, rs.mu2(), shape == 1 ? "m1 = 1, staircase shape (m_i = i)" : "m1 = 1, plateau shape (m_j = 2N)"};
        }
    }
    throw std::logic_error("unreachable family");
}

bool roots_are_weights_by_dominance(const RootSystem& rs, const WeightVec& lam) {
    return rs.dominance_leq(WeightVec::from_ints(rs.mu1()), lam) && rs.dominance_leq(WeightVec::from_ints(rs.mu2()), lam);
}

RootWeightCheck roots_are_weights(const RootSystem& rs, const WeightVec& lam) {
    auto fast = roots_are_weights_fast(rs, lam);
    if (fast.all_roots_are_weights != roots_are_weights_by_dominance(rs, lam)) {
        throw std::logic_error("inequality argument disagrees with the dominance test for " + rs.type().name());
    }
    return fast;
}

bool is_primitive_pair(const RootSystem&, const WeightVec& lam, const WeightVec& mu) {
    for (std::size_t i = 0; i < lam.size(); ++i) {
        Rational d = lam[i] - mu[i];
        if (!is_integer(d) || d <= 0) return false;
    }
    return true;
}

namespace {

bool bz_type_a(const IVec& l, const IVec& a) {
    const auto n = static_cast<std::int64_t>(l.size());
    for (std::int64_t i = 1; i < n; ++i) {
        if (l[i] != 0) return false;
    }
    std::int64_t weighted = 0;
    for (std::int64_t i = 1; i <= n; ++i) weighted += i * a[i - 1];
    const std::int64_t rest = l[0] - weighted;
    return rest >= 0 && rest % (n + 1) == 0;
}

}  // namespace

bool bz_primitive_K1(const RootSystem& rs, const WeightVec& lam, const WeightVec& mu) {
    if (!is_primitive_pair(rs, lam, mu)) throw Error(ErrorCode::PreconditionViolated, "(lam; mu) is not a primitive pair");
    if (!rs.is_dominant(mu)) throw Error(ErrorCode::PreconditionViolated, "mu is not dominant");
    const IVec l = integral_labels(rs, lam);
    const IVec a = integral_labels(rs, mu);
    const auto n = static_cast<std::int64_t>(l.size());
    switch (rs.type().family) {
        case Family::A: {
            // lam = l w_1, or its image under the diagram flip
            IVec lr(l.rbegin(), l.rend()), ar(a.rbegin(), a.rend());
            return bz_type_a(l, a) || bz_type_a(lr, ar);
        }
        case Family::B: {
            for (std::int64_t i = 1; i < n; ++i) {
                if (l[i] != 0) return false;
            }
            // only the short-root label has to be even
            if (a[n - 1] % 2 != 0) return false;
            std::int64_t weighted = n * a[n - 1] / 2;
            for (std::int64_t i = 1; i < n; ++i) weighted += i * a[i - 1];
            return l[0] - 1 == weighted;
        }
        case Family::G:
            if (l[0] == 0 && 3 * l[1] - 1 == 2 * a[0] + 3 * a[1]) return true;
            return l == IVec{1, 0} && a == IVec{0, 0};
        default:
            return false;
    }
}

const char* reason_name(LPrimeReason r) {
    switch (r) {
        case LPrimeReason::RootNotWeight: return "RootNotWeight";
        case LPrimeReason::RootMultOne: return "RootMultOne";
        case LPrimeReason::Admissible: return "Admissible";
    }
    return "Unknown";
}

LPrimeVerdict in_L_prime(const RootSystem& rs, const WeightVec& lam) {
    auto check = roots_are_weights(rs, lam);
    if (!check.all_roots_are_weights) return {lam, true, LPrimeReason::RootNotWeight, check.witness};
    // every root is Weyl-conjugate to mu1 or mu2
    WeightDiagram diagram(rs, lam);
    for (const IVec& root : {rs.mu1(), rs.mu2()}) {
        if (diagram.multiplicity(WeightVec::from_ints(root)) == 1) return {lam, true, LPrimeReason::RootMultOne, root};
    }
    return {lam, false, LPrimeReason::Admissible, std::nullopt};
}

AdmissibilityReport is_admissible(const std::vector<IdealWeights>& decomposition) {
    AdmissibilityReport report{true, {}};
    for (const auto& ideal : decomposition) {
        auto rs = RootSystem::build(ideal.type);
        IdealReport entry{ideal.type, {}, false};
        for (const auto& lam : ideal.highest_weights) {
            entry.verdicts.push_back(in_L_prime(rs, lam));
            entry.has_weight_outside_Lprime = entry.has_weight_outside_Lprime || !entry.verdicts.back().in_Lprime;
        }
        report.admissible = report.admissible && entry.has_weight_outside_Lprime;
        report.ideals.push_back(std::move(entry));
    }
    return report;
}

std::vector<WeightVec> enumerate_dominant_zero_weight(const RootSystem& rs, int bound) {
    if (bound < 1) throw Error(ErrorCode::InvalidInput, "enumeration bound must be at least 1");
    const auto n = static_cast<std::size_t>(rs.rank());
    std::vector<IVec> found;
    IVec p(n, 1);
    while (true) {
        if (all_nonnegative(rs.dynkin_labels(p))) found.push_back(p);
        std::size_t i = 0;
        while (i < n && p[i] == bound) p[i++] = 1;
        if (i == n) break;
        ++p[i];
    }
    std::sort(found.begin(), found.end(), [](const IVec& a, const IVec& b) { return graded_less(a, b); });
    std::vector<WeightVec> out;
    out.reserve(found.size());
    for (const auto& v : found) out.push_back(WeightVec::from_ints(v));
    return out;
}

namespace {

IVec repeat(std::size_t n, std::int64_t x) { return IVec(n, x); }

std::optional<std::string> literal_row(SimpleType t, const IVec& m) {
    const auto n = static_cast<std::int64_t>(t.rank);
    const auto un = static_cast<std::size_t>(n);
    switch (t.family) {
        case Family::A: {
            if (m == repeat(un, 1)) return "a1+...+an";
            if (n == 2 && (m == IVec{1, 2} || m == IVec{2, 1})) return "a1+2a2, 2a1+a2 (n=2)";
            if (n == 3 && m == IVec{1, 2, 1}) return "a1+2a2+a3 (n=3)";
            // k (n a1 + (n-1) a2 + ... + an), k >= 1
            const std::int64_t k = m[0] / n;
            if (k >= 1 && m[0] == k * n) {
                bool ok = true;
                for (std::int64_t i = 1; i <= n; ++i) ok = ok && m[i - 1] == k * (n + 1 - i);
                if (ok) return "k(n a1+(n-1)a2+...+an), k=" + std::to_string(k);
            }
            return std::nullopt;
        }
        case Family::B: {
            IVec mu2 = repeat(un, 2);
            mu2[0] = 1;
            if (m == repeat(un, 1)) return "a1+...+an";
            if (m == mu2) return "a1+2a2+...+2an";
            if (n == 3 && m[0] == 1 && m[1] == 2 && m[2] >= 3) return "a1+2a2+m3 a3, m3>=3 (n=3)";
            if (m == repeat(un, 2)) return "2a1+...+2an";
            if (n >= 3) {
                IVec row = repeat(un, 3);
                row[0] = 1;
                row[1] = 2;
                if (m == row) return "a1+2a2+3a3+...+3an (n>=3)";
            }
            return std::nullopt;
        }
        case Family::C: {
            IVec mu1 = repeat(un, 2), mu2 = repeat(un, 2);
            mu1[0] = 1;
            mu1[un - 1] = 1;
            mu2[un - 1] = 1;
            if (m == mu1) return "a1+2a2+...+2a(n-1)+an";
            if (m == mu2) return "2a1+...+2a(n-1)+an";
            IVec stair(un);
            for (std::int64_t i = 1; i < n; ++i) stair[i - 1] = i;
            stair[un - 1] = n / 2;
            if (m == stair) return "a1+2a2+...+(n-1)a(n-1)+[n/2]an";
            for (std::int64_t big_n = 1; 2 * big_n <= n - 1; ++big_n) {
                IVec plateau(un);
                for (std::int64_t i = 1; i < n; ++i) plateau[i - 1] = std::min(i, 2 * big_n);
                plateau[un - 1] = big_n;
                if (m == plateau) return "a1+2a2+...+2N a2N+...+2N a(n-1)+N an, N=" + std::to_string(big_n);
            }
            return std::nullopt;
        }
        case Family::D: {
            IVec mu = repeat(un, 2);
            mu[0] = 1;
            mu[un - 2] = 1;
            mu[un - 1] = 1;
            IVec twice = repeat(un, 2);
            twice[un - 2] = 1;
            twice[un - 1] = 1;
            if (m == mu) return "a1+2a2+...+2a(n-2)+a(n-1)+an";
            if (m == twice) return "2a1+...+2a(n-2)+a(n-1)+an";
            if (n == 4 && (m == IVec{1, 2, 2, 1} || m == IVec{1, 2, 1, 2})) return "a1+2a2+2a3+a4, a1+2a2+a3+2a4 (n=4)";
            return std::nullopt;
        }
        case Family::E: {
            static const IVec e6{1, 2, 2, 3, 2, 1}, e7{2, 2, 3, 4, 3, 2, 1}, e8{2, 3, 4, 6, 5, 4, 3, 2};
            const IVec& mu = n == 6 ? e6 : n == 7 ? e7 : e8;
            if (m == mu) return "highest root";
            return std::nullopt;
        }
        case Family::F:
            if (m == IVec{2, 3, 4, 2}) return "2a1+3a2+4a3+2a4";
            if (m == IVec{1, 2, 3, 2}) return "a1+2a2+3a3+2a4";
            return std::nullopt;
        case Family::G:
            if (m == IVec{2, 1}) return "2a1+a2";
            if (m == IVec{3, 2}) return "3a1+2a2";
            if (m == IVec{4, 2}) return "4a1+2a2";
            return std::nullopt;
    }
    return std::nullopt;
}

// Permutations of simple-root indices induced by Dynkin diagram automorphisms.
std::vector<std::vector<std::size_t>> diagram_automorphisms(SimpleType t) {
    const auto n = static_cast<std::size_t>(t.rank);
    std::vector<std::size_t> id(n);
    std::iota(id.begin(), id.end(), 0);
    std::vector<std::vector<std::size_t>> out{id};
    if (t.family == Family::A && n > 1) {
        out.emplace_back(id.rbegin(), id.rend());
    } else if (t.family == Family::D) {
        if (n == 4) {
            for (auto p : {std::vector<std::size_t>{2, 1, 0, 3}, {3, 1, 2, 0}, {0, 1, 3, 2}, {2, 1, 3, 0}, {3, 1, 0, 2}}) {
                out.push_back(p);
            }
        } else {
            auto flip = id;
            std::swap(flip[n - 2], flip[n - 1]);
            out.push_back(flip);
        }
    } else if (t.family == Family::E && n == 6) {
        out.push_back({5, 1, 4, 3, 2, 0});
    }
    return out;
}

}  // namespace

std::optional<std::string> tabulated_Lprime_row(SimpleType t, const IVec& lam) {
    for (const auto& perm : diagram_automorphisms(t)) {
        IVec image(lam.size());
        for (std::size_t i = 0; i < lam.size(); ++i) image[perm[i]] = lam[i];
        if (auto row = literal_row(t, image)) return row;
    }
    return std::nullopt;
}

}  // namespace nilgeo
