#include "nilgeo/rootsys.hpp"

#include "nilgeo/error.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <deque>
#include <numeric>
#include <unordered_set>

namespace nilgeo {

char family_letter(Family f) { return "ABCDEFG"[static_cast<int>(f)]; }

Family parse_family(char c) {
    c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    if (c < 'A' || c > 'G') throw Error(ErrorCode::InvalidInput, std::string("unknown family '") + c + "'");
    return static_cast<Family>(c - 'A');
}

SimpleType SimpleType::parse(std::string_view name) {
    if (name.size() < 2) throw Error(ErrorCode::InvalidInput, "type must look like A2, G2, E8");
    int rank = 0;
    for (char c : name.substr(1)) {
        if (!std::isdigit(static_cast<unsigned char>(c))) {
            throw Error(ErrorCode::InvalidInput, "type must look like A2, G2, E8");
        }
        rank = rank * 10 + (c - '0');
        if (rank > 1000) throw Error(ErrorCode::InvalidRank, "rank too large");
    }
    return SimpleType{parse_family(name.front()), rank};
}

std::string SimpleType::name() const { return std::string(1, family_letter(family)) + std::to_string(rank); }

bool WeightVec::is_integral() const {
    return std::all_of(coords.begin(), coords.end(), [](const Rational& q) { return is_integer(q); });
}

std::size_t default_orbit_cap() {
    if (const char* env = std::getenv("NILGEO_ORBIT_CAP")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
    }
    return 1'000'000;
}

namespace {

void require_rank(SimpleType t) {
    const int n = t.rank;
    bool ok = false;
    switch (t.family) {
        case Family::A: ok = n >= 1; break;
        case Family::B: ok = n >= 2; break;
        case Family::C: ok = n >= 3; break;
        case Family::D: ok = n >= 4; break;
        case Family::E: ok = n >= 6 && n <= 8; break;
        case Family::F: ok = n == 4; break;
        case Family::G: ok = n == 2; break;
    }
    if (!ok) throw Error(ErrorCode::InvalidRank, t.name() + " is outside the supported rank range");
}

void link(IMatrix& c, int i, int j, int cij = -1, int cji = -1) {
    c[i][j] = cij;
    c[j][i] = cji;
}

}  // namespace

IMatrix cartan_matrix(SimpleType t) {
    require_rank(t);
    const int n = t.rank;
    IMatrix c(n, IVec(n, 0));
    for (int i = 0; i < n; ++i) c[i][i] = 2;
    switch (t.family) {
        case Family::A:
            for (int i = 0; i + 1 < n; ++i) link(c, i, i + 1);
            break;
        case Family::B:
            for (int i = 0; i + 1 < n; ++i) link(c, i, i + 1);
            link(c, n - 2, n - 1, -2, -1);  // alpha_n short
            break;
        case Family::C:
            for (int i = 0; i + 1 < n; ++i) link(c, i, i + 1);
            link(c, n - 2, n - 1, -1, -2);  // alpha_n long
            break;
        case Family::D:
            for (int i = 0; i + 2 < n; ++i) link(c, i, i + 1);
            link(c, n - 3, n - 1);
            break;
        case Family::E:
            link(c, 0, 2);
            link(c, 1, 3);
            for (int i = 2; i + 1 < n; ++i) link(c, i, i + 1);
            break;
        case Family::F:
            link(c, 0, 1);
            link(c, 1, 2, -2, -1);  // alpha_3, alpha_4 short
            link(c, 2, 3);
            break;
        case Family::G:
            link(c, 0, 1, -1, -3);  // alpha_1 short
            break;
    }
    return c;
}

namespace {

// s_j with C_ij s_j = C_ji s_i, smallest entry 1.
IVec symmetrize(const IMatrix& c) {
    const std::size_t n = c.size();
    QVec s(n);
    s[0] = 1;
    std::vector<bool> seen(n, false);
    seen[0] = true;
    std::deque<std::size_t> queue{0};
    while (!queue.empty()) {
        auto i = queue.front();
        queue.pop_front();
        for (std::size_t j = 0; j < n; ++j) {
            if (seen[j] || c[i][j] == 0) continue;
            s[j] = s[i] * frac(c[j][i], c[i][j]);
            seen[j] = true;
            queue.push_back(j);
        }
    }
    Rational smallest = *std::min_element(s.begin(), s.end());
    IVec out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = to_int64(s[i] / smallest);
    return out;
}

std::int64_t pairing_with_simple(const IMatrix& c, const IVec& v, std::size_t i) {
    std::int64_t acc = 0;
    for (std::size_t k = 0; k < v.size(); ++k) acc += v[k] * c[k][i];
    return acc;
}

}  // namespace

bool graded_less(const IVec& a, const IVec& b) {
    auto ha = std::accumulate(a.begin(), a.end(), std::int64_t{0});
    auto hb = std::accumulate(b.begin(), b.end(), std::int64_t{0});
    if (ha != hb) return ha < hb;
    return a < b;
}

bool graded_less(const QVec& a, const QVec& b) {
    Rational ha = 0, hb = 0;
    for (const auto& x : a) ha += x;
    for (const auto& x : b) hb += x;
    if (ha != hb) return ha < hb;
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

std::vector<IVec> close_positive_roots(const IMatrix& cartan) {
    const std::size_t n = cartan.size();
    std::unordered_set<IVec, IVecHash> known;
    std::vector<IVec> level;
    for (std::size_t i = 0; i < n; ++i) {
        IVec e(n, 0);
        e[i] = 1;
        level.push_back(e);
        known.insert(e);
    }
    std::vector<IVec> all = level;
    while (!level.empty()) {
        std::vector<IVec> next;
        for (const auto& beta : level) {
            for (std::size_t i = 0; i < n; ++i) {
                IVec down = beta;
                down[i] -= 1;
                // alpha_i-string through beta: beta - r alpha_i ... beta + q alpha_i, r - q = <beta, alpha_i>
                std::int64_t r = 0;
                while (known.count(down)) {
                    ++r;
                    down[i] -= 1;
                }
                std::int64_t q = r - pairing_with_simple(cartan, beta, i);
                if (q <= 0) continue;
                IVec up = beta;
                up[i] += 1;
                if (known.insert(up).second) next.push_back(up);
            }
        }
        all.insert(all.end(), next.begin(), next.end());
        level = std::move(next);
    }
    std::sort(all.begin(), all.end(), [](const IVec& a, const IVec& b) { return graded_less(a, b); });
    return all;
}

RootSystem RootSystem::build(SimpleType t) {
    RootSystem rs;
    rs.type_ = t;
    rs.cartan_ = cartan_matrix(t);
    const auto n = static_cast<std::size_t>(t.rank);
    QMatrix c(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) c(i, j) = static_cast<long>(rs.cartan_[i][j]);
    }
    rs.inv_cartan_ = inverse(c);
    rs.symmetrizer_ = symmetrize(rs.cartan_);
    rs.positive_ = close_positive_roots(rs.cartan_);
    for (std::size_t k = 0; k < rs.positive_.size(); ++k) rs.positive_lookup_.emplace(rs.positive_[k], k);

    rs.mu2_ = rs.positive_.back();
    rs.mu1_ = rs.mu2_;
    for (auto it = rs.positive_.rbegin(); it != rs.positive_.rend(); ++it) {
        if (!rs.is_long(*it)) {
            rs.mu1_ = *it;
            break;
        }
    }
    return rs;
}

std::vector<IVec> RootSystem::roots() const {
    std::vector<IVec> all;
    all.reserve(root_count());
    for (auto it = positive_.rbegin(); it != positive_.rend(); ++it) all.push_back(-1 * *it);
    all.insert(all.end(), positive_.begin(), positive_.end());
    return all;
}

bool RootSystem::is_root(const IVec& v) const {
    if (v.size() != static_cast<std::size_t>(rank())) return false;
    if (positive_lookup_.count(v)) return true;
    return positive_lookup_.count(-1 * v) > 0;
}

std::size_t RootSystem::positive_index(const IVec& v) const {
    auto it = positive_lookup_.find(v);
    if (it == positive_lookup_.end() && v.size() == static_cast<std::size_t>(rank())) {
        it = positive_lookup_.find(-1 * v);
    }
    if (it == positive_lookup_.end()) throw Error(ErrorCode::NotARoot, "vector is not a root");
    return it->second;
}

IVec RootSystem::simple_root(int i) const {
    IVec e(static_cast<std::size_t>(rank()), 0);
    e[static_cast<std::size_t>(i)] = 1;
    return e;
}

std::int64_t RootSystem::height(const IVec& v) const { return std::accumulate(v.begin(), v.end(), std::int64_t{0}); }

Rational RootSystem::inner(const QVec& a, const QVec& b) const {
    Rational acc = 0;
    const auto n = static_cast<std::size_t>(rank());
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (cartan_[i][j] != 0 && b[j] != 0) acc += a[i] * b[j] * static_cast<long>(cartan_[i][j] * symmetrizer_[j]);
        }
    }
    return acc;
}

std::int64_t RootSystem::inner(const IVec& a, const IVec& b) const {
    std::int64_t acc = 0;
    const auto n = static_cast<std::size_t>(rank());
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) acc += a[i] * b[j] * cartan_[i][j] * symmetrizer_[j];
    }
    return acc;
}

bool RootSystem::is_long(const IVec& root) const {
    auto longest = *std::max_element(symmetrizer_.begin(), symmetrizer_.end());
    return inner(root, root) == 2 * longest;
}

void RootSystem::require_root(const IVec& alpha) const {
    if (!is_root(alpha)) throw Error(ErrorCode::NotARoot, "vector is not a root");
}

Rational RootSystem::pairing(const WeightVec& lam, const IVec& alpha) const {
    require_root(alpha);
    auto a = to_qvec(alpha);
    return 2 * inner(lam.coords, a) / inner(a, a);
}

WeightVec RootSystem::reflect(const WeightVec& lam, const IVec& alpha) const {
    Rational p = pairing(lam, alpha);
    return lam - p * WeightVec::from_ints(alpha);
}

std::vector<WeightVec> RootSystem::weyl_orbit(const WeightVec& lam, std::size_t cap) const {
    // Reflections act on Dynkin labels by d -> d - d_i * (row i of the Cartan matrix).
    const auto n = static_cast<std::size_t>(rank());
    std::unordered_set<QVec, QVecHash> seen;
    std::vector<QVec> order;
    QVec start = to_fundamental(lam);
    seen.insert(start);
    order.push_back(start);
    for (std::size_t head = 0; head < order.size(); ++head) {
        for (std::size_t i = 0; i < n; ++i) {
            const Rational di = order[head][i];
            if (di == 0) continue;
            QVec next = order[head];
            for (std::size_t j = 0; j < n; ++j) {
                if (cartan_[i][j] != 0) next[j] -= di * static_cast<long>(cartan_[i][j]);
            }
            if (seen.insert(next).second) {
                if (seen.size() > cap) {
                    throw Error(ErrorCode::OrbitBudgetExceeded,
                                "Weyl orbit exceeds cap of " + std::to_string(cap) + " elements");
                }
                order.push_back(std::move(next));
            }
        }
    }
    std::vector<WeightVec> out;
    out.reserve(order.size());
    for (const auto& d : order) out.push_back(from_fundamental(d));
    std::sort(out.begin(), out.end(), [](const WeightVec& a, const WeightVec& b) { return graded_less(a.coords, b.coords); });
    return out;
}

bool RootSystem::dominance_leq(const WeightVec& mu, const WeightVec& lam) const {
    for (std::size_t i = 0; i < lam.size(); ++i) {
        Rational d = lam[i] - mu[i];
        if (!is_integer(d) || d < 0) return false;
    }
    return true;
}

bool RootSystem::is_dominant(const WeightVec& lam) const {
    for (const auto& d : to_fundamental(lam)) {
        if (d < 0) return false;
    }
    return true;
}

QVec RootSystem::to_fundamental(const WeightVec& lam) const {
    const auto n = static_cast<std::size_t>(rank());
    QVec out(n);
    for (std::size_t j = 0; j < n; ++j) {
        Rational acc = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (cartan_[i][j] != 0) acc += lam[i] * static_cast<long>(cartan_[i][j]);
        }
        out[j] = acc;
    }
    return out;
}

WeightVec RootSystem::from_fundamental(const QVec& labels) const {
    const auto n = static_cast<std::size_t>(rank());
    QVec out(n);
    for (std::size_t i = 0; i < n; ++i) {
        Rational acc = 0;
        for (std::size_t j = 0; j < n; ++j) acc += labels[j] * inv_cartan_(j, i);
        out[i] = acc;
    }
    return WeightVec(std::move(out));
}

IVec RootSystem::dynkin_labels(const IVec& root_coords) const {
    const auto n = static_cast<std::size_t>(rank());
    IVec out(n, 0);
    for (std::size_t j = 0; j < n; ++j) out[j] = pairing_with_simple(cartan_, root_coords, j);
    return out;
}

}  // namespace nilgeo
