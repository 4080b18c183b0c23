#include "nilgeo/error.hpp"
#include "nilgeo/rootsys.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <set>
#include <unordered_set>

using namespace nilgeo;

namespace {

WeightVec W(IVec v) { return WeightVec::from_ints(v); }

}  // namespace

TEST_CASE("highest roots match the tabulated rows for every listed type") {
    for (auto t : oracle::table2_types()) {
        auto rs = RootSystem::build(t);
        auto [mu1, mu2] = oracle::table2_row(t);
        INFO(t.name());
        CHECK(rs.mu1() == mu1);
        CHECK(rs.mu2() == mu2);
        CHECK(rs.root_count() == oracle::root_count(t));
        CHECK(rs.dominance_leq(W(rs.mu1()), W(rs.mu2())));
    }
}

TEST_CASE("rank bounds are enforced") {
    CHECK_THROWS_AS(RootSystem::build({Family::C, 2}), Error);
    CHECK_THROWS_AS(RootSystem::build({Family::D, 3}), Error);
    CHECK_THROWS_AS(RootSystem::build({Family::E, 9}), Error);
    CHECK_THROWS_AS(RootSystem::build({Family::G, 3}), Error);
    CHECK_THROWS_AS(RootSystem::build({Family::A, 0}), Error);
    CHECK(SimpleType::parse("g2") == SimpleType{Family::G, 2});
}

TEST_CASE("A2 and G2 positive roots") {
    auto a2 = RootSystem::build({Family::A, 2});
    std::vector<IVec> expected{{0, 1}, {1, 0}, {1, 1}};
    CHECK(std::vector<IVec>(a2.positive_roots().begin(), a2.positive_roots().end()) == expected);
    CHECK(a2.root_count() == 6);
    auto g2 = RootSystem::build({Family::G, 2});
    CHECK(g2.root_count() == 12);
    CHECK(g2.mu1() == IVec{2, 1});
    CHECK(g2.mu2() == IVec{3, 2});
    CHECK(RootSystem::build({Family::E, 8}).root_count() == 240);
}

TEST_CASE("inverse Cartan matrix is exact and matches the closed form for A_n") {
    for (auto t : oracle::table2_types()) {
        auto rs = RootSystem::build(t);
        const auto n = static_cast<std::size_t>(t.rank);
        QMatrix c(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) c(i, j) = static_cast<long>(rs.cartan()[i][j]);
        }
        CHECK(rs.inv_cartan() * c == QMatrix::identity(n));
        if (t.family == Family::A) {
            for (std::size_t i = 1; i <= n; ++i) {
                for (std::size_t j = 1; j <= n; ++j) {
                    Rational expected = Rational(static_cast<long>(std::min(i, j))) -
                                        frac(static_cast<std::int64_t>(i * j), static_cast<std::int64_t>(n + 1));
                    CHECK(rs.inv_cartan()(i - 1, j - 1) == expected);
                }
            }
        }
    }
}

TEST_CASE("pairing, reflection and dominance examples") {
    auto a2 = RootSystem::build({Family::A, 2});
    CHECK(a2.pairing(W({1, 0}), {1, 0}) == 2);
    CHECK(a2.pairing(W({1, 0}), {0, 1}) == -1);
    CHECK(a2.reflect(W({1, 0}), {1, 0}) == W({-1, 0}));
    CHECK(a2.reflect(W({1, 1}), {1, 0}) == W({0, 1}));
    CHECK_THROWS_AS(a2.pairing(W({1, 0}), {2, 0}), Error);
    CHECK_THROWS_AS(a2.reflect(W({1, 0}), {1, -1}), Error);
    CHECK_FALSE(a2.dominance_leq(W({1, 0}), W({0, 1})));
    CHECK(a2.dominance_leq(W({1, 1}), W({1, 1})));
    CHECK(a2.is_dominant(W({0, 0})));
    CHECK_FALSE(a2.is_dominant(W({1, 0})));

    auto g2 = RootSystem::build({Family::G, 2});
    CHECK(g2.pairing(W(g2.mu2()), {1, 0}) == 0);
    CHECK(g2.is_dominant(W({2, 1})));
    auto b3 = RootSystem::build({Family::B, 3});
    CHECK(b3.dominance_leq(W(b3.mu1()), W(b3.mu2())));

    WeightVec lam(QVec{frac(1, 3), frac(-5, 2)});
    for (const auto& alpha : a2.roots()) CHECK(a2.reflect(a2.reflect(lam, alpha), alpha) == lam);
}

TEST_CASE("Weyl orbits") {
    auto a2 = RootSystem::build({Family::A, 2});
    CHECK(a2.weyl_orbit(W({0, 0})).size() == 1);
    auto orbit = a2.weyl_orbit(W({1, 1}));
    CHECK(orbit.size() == 6);
    for (const auto& w : orbit) CHECK(a2.is_root(w.to_ints()));

    auto g2 = RootSystem::build({Family::G, 2});
    auto shorts = g2.weyl_orbit(W(g2.mu1()));
    CHECK(shorts.size() == 6);
    for (const auto& w : shorts) CHECK_FALSE(g2.is_long(w.to_ints()));

    auto e8 = RootSystem::build({Family::E, 8});
    CHECK_THROWS_AS(e8.weyl_orbit(e8.from_fundamental(QVec(8, Rational(1))), 1000), Error);
}

TEST_CASE("orbit union of mu1 and mu2 recovers every root; reflections preserve Phi") {
    for (auto t : oracle::table2_types()) {
        auto rs = RootSystem::build(t);
        INFO(t.name());
        std::set<IVec> from_orbits;
        for (const auto& w : rs.weyl_orbit(W(rs.mu1()))) from_orbits.insert(w.to_ints());
        for (const auto& w : rs.weyl_orbit(W(rs.mu2()))) from_orbits.insert(w.to_ints());
        auto all = rs.roots();
        CHECK(from_orbits == std::set<IVec>(all.begin(), all.end()));

        std::set<std::int64_t> lengths;
        for (const auto& r : all) lengths.insert(rs.inner(r, r));
        CHECK(lengths.size() <= 2);

        // a second closure run reproduces the cached roots
        CHECK(close_positive_roots(rs.cartan()).size() == rs.positive_roots().size());

        if (rs.root_count() > 200) continue;
        for (int i = 0; i < rs.rank(); ++i) {
            for (const auto& r : all) CHECK(rs.is_root(rs.reflect(W(r), rs.simple_root(i)).to_ints()));
        }
        for (const auto& r : all) {
            for (std::size_t k = 0; k < r.size(); ++k) CHECK(r[k] * r[0] >= 0);
        }
    }
}

TEST_CASE("simple-root and fundamental coordinates round trip") {
    for (auto t : oracle::table2_types()) {
        auto rs = RootSystem::build(t);
        QVec v(static_cast<std::size_t>(t.rank));
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = frac(static_cast<std::int64_t>(3 * i + 1), static_cast<std::int64_t>(i + 2));
        WeightVec lam(v);
        CHECK(rs.from_fundamental(rs.to_fundamental(lam)) == lam);
        CHECK(rs.to_fundamental(rs.from_fundamental(v)) == v);
    }
}
