#include "nilgeo/error.hpp"
#include "nilgeo/repbuild.hpp"
#include "nilgeo/weights.hpp"

#include <doctest.h>

#include <set>

using namespace nilgeo;

namespace {

WeightVec W(IVec v) { return WeightVec::from_ints(v); }

WeightVec from_labels(const RootSystem& rs, IVec labels) { return rs.from_fundamental(to_qvec(labels)); }

// Largest r with beta - r alpha a root.
std::int64_t string_below(const RootSystem& rs, const IVec& alpha, const IVec& beta) {
    std::int64_t r = 0;
    while (rs.is_root(beta - (r + 1) * alpha)) ++r;
    return r;
}

// Exact positive-definiteness by symmetric elimination.
bool positive_definite(QMatrix m) {
    const std::size_t n = m.rows();
    for (std::size_t k = 0; k < n; ++k) {
        if (m(k, k) <= 0) return false;
        for (std::size_t i = k + 1; i < n; ++i) {
            const Rational f = m(i, k) / m(k, k);
            for (std::size_t j = k; j < n; ++j) m(i, j) -= f * m(k, j);
        }
    }
    return true;
}

QMatrix submatrix(const QMatrix& m, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) {
    QMatrix out(rows.size(), cols.size());
    for (std::size_t a = 0; a < rows.size(); ++a) {
        for (std::size_t b = 0; b < cols.size(); ++b) out(a, b) = m(rows[a], cols[b]);
    }
    return out;
}

void check_irrep(const RootSystem& rs, const IrrepModule& v) {
    const auto n = static_cast<std::size_t>(rs.rank());
    CHECK(mpz_class(static_cast<unsigned long>(v.dim())) == weyl_dimension(rs, v.lam));
    WeightDiagram diagram(rs, v.lam);
    std::set<QVec> seen;
    for (const auto& mu : v.weights) {
        if (seen.insert(mu.coords).second) {
            CHECK(static_cast<std::int64_t>(v.weight_space(mu).size()) == diagram.multiplicity(mu));
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        CHECK(v.h[i].is_diagonal());
        for (std::size_t k = 0; k < v.dim(); ++k) CHECK(v.h[i](k, k) == rs.pairing(v.weights[k], rs.simple_root(static_cast<int>(i))));
        for (std::size_t j = 0; j < n; ++j) {
            const QMatrix ef = commutator(v.e[i], v.f[j]);
            CHECK(ef == (i == j ? v.h[i] : QMatrix(v.dim(), v.dim())));
            CHECK(commutator(v.h[i], v.e[j]) == Rational(rs.cartan()[j][i]) * v.e[j]);
            CHECK(commutator(v.h[i], v.f[j]) == Rational(-rs.cartan()[j][i]) * v.f[j]);
        }
    }
    // contravariance: e_i and f_i are adjoint for the diagonal form
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t a = 0; a < v.dim(); ++a) {
            for (std::size_t b = 0; b < v.dim(); ++b) CHECK(v.norms[a] * v.e[i](a, b) == v.f[i](b, a) * v.norms[b]);
        }
    }
}

}  // namespace

TEST_CASE("irreducible modules: dimensions, spectra and relations") {
    auto a1 = RootSystem::build({Family::A, 1});
    auto five = build_irrep(a1, W({2}));
    CHECK(five.dim() == 5);
    std::multiset<Rational> spectrum;
    for (std::size_t k = 0; k < 5; ++k) spectrum.insert(five.h[0](k, k));
    CHECK(spectrum == std::multiset<Rational>{-4, -2, 0, 2, 4});
    check_irrep(a1, five);

    auto a2 = RootSystem::build({Family::A, 2});
    auto adj = build_irrep(a2, W({1, 1}));
    CHECK(adj.dim() == 8);
    CHECK(adj.weight_space(W({0, 0})).size() == 2);
    check_irrep(a2, adj);
    auto big = build_irrep(a2, W({2, 2}));
    CHECK(big.dim() == 27);
    check_irrep(a2, big);

    for (auto [t, labels] : std::vector<std::pair<SimpleType, IVec>>{{{Family::B, 2}, {1, 1}},
                                                                      {{Family::C, 3}, {1, 0, 1}},
                                                                      {{Family::G, 2}, {1, 0}},
                                                                      {{Family::A, 3}, {1, 0, 1}},
                                                                      {{Family::B, 3}, {0, 0, 1}}}) {
        auto rs = RootSystem::build(t);
        check_irrep(rs, build_irrep(rs, from_labels(rs, labels)));
    }
    CHECK_THROWS_AS(build_irrep(a2, W({4, 4}), 30), Error);
    CHECK_THROWS_AS(build_irrep(a2, WeightVec(QVec{frac(1, 3), 0})), Error);
}

TEST_CASE("weight spaces the tabulated list omits have dimension one") {
    // built explicitly, independent of the multiplicity recursion
    auto b2 = RootSystem::build({Family::B, 2});
    CHECK(build_irrep(b2, W({3, 3})).weight_space(W(b2.mu2())).size() == 1);
    auto b3 = RootSystem::build({Family::B, 3});
    CHECK(build_irrep(b3, W({3, 3, 3})).weight_space(W(b3.mu2())).size() == 1);
    auto c3 = RootSystem::build({Family::C, 3});
    CHECK(build_irrep(c3, W({2, 3, 2})).weight_space(W(c3.mu2())).size() == 1);
}

TEST_CASE("Chevalley bases") {
    for (auto t : std::vector<SimpleType>{{Family::A, 1}, {Family::A, 2}, {Family::A, 3}, {Family::B, 2}, {Family::G, 2}, {Family::C, 3}}) {
        auto rs = RootSystem::build(t);
        auto cb = ChevalleyBasis::build(rs);
        INFO(t.name());
        std::set<std::int64_t> magnitudes;
        for (const auto& a : rs.roots()) {
            for (const auto& b : rs.roots()) {
                if (!rs.is_root(a + b)) continue;
                const auto c = cb.structure_constant(a, b);
                CHECK(c == -cb.structure_constant(-1 * a, -1 * b));
                CHECK(std::abs(c) == string_below(rs, a, b) + 1);
                magnitudes.insert(std::abs(c));
            }
        }
        if (t.family == Family::G) CHECK(magnitudes == std::set<std::int64_t>{1, 2, 3});
        // Jacobi: ad is a Lie algebra homomorphism
        const auto& ad = cb.adjoint();
        for (std::size_t x = 0; x < cb.dim(); ++x) {
            for (std::size_t y = 0; y < cb.dim(); ++y) {
                QMatrix expected(cb.dim(), cb.dim());
                const QVec col = ad[x].column(y);
                for (std::size_t k = 0; k < cb.dim(); ++k) {
                    if (col[k] != 0) expected = expected + col[k] * ad[k];
                }
                CHECK(commutator(ad[x], ad[y]) == expected);
                for (std::size_t k = 0; k < cb.dim(); ++k) CHECK(is_integer(ad[x](k, y)));
            }
        }
        // [X_a, X_-a] = tau_a on a concrete module
        auto v = build_irrep(rs, W(rs.mu1()));
        auto ops = cb.root_operators(v);
        for (const auto& a : rs.roots()) {
            QMatrix tau(v.dim(), v.dim());
            const IVec co = cb.coroot(a);
            for (int i = 0; i < rs.rank(); ++i) tau = tau + Rational(co[static_cast<std::size_t>(i)]) * v.h[static_cast<std::size_t>(i)];
            CHECK(commutator(ops[cb.root_index(a)], ops[cb.root_index(-1 * a)]) == tau);
        }
    }
    auto a1 = ChevalleyBasis::build(RootSystem::build({Family::A, 1}));
    CHECK(a1.coroot({1}) == IVec{1});
}

TEST_CASE("compact real form") {
    for (auto t : std::vector<SimpleType>{{Family::A, 1}, {Family::A, 2}, {Family::A, 3}, {Family::B, 2}, {Family::G, 2}}) {
        auto rs = RootSystem::build(t);
        auto g = compact_algebra(ChevalleyBasis::build(rs));
        INFO(t.name());
        for (std::size_t a = 0; a < g.dim(); ++a) {
            for (std::size_t b = 0; b < g.dim(); ++b) {
                for (const auto& x : g.bracket(a, b)) CHECK(is_integer(x));
                CHECK(g.bracket(a, b) == -g.bracket(b, a));
            }
        }
        CHECK(positive_definite(Rational(-1) * g.killing));
        // [A_b, B_b] lies in span{i tau} with integer coefficients
        for (std::size_t p = 0; p < g.positive_roots.size(); ++p) {
            const QVec br = g.bracket(g.a_index(p), g.b_index(p));
            for (std::size_t k = g.rank; k < g.dim(); ++k) CHECK(br[k] == 0);
            // g0(beta) is two-dimensional: eigenspace of ad(H)^2 for a generic Cartan H
        }
        QMatrix h(g.dim(), g.dim());
        for (std::size_t k = 0; k < g.rank; ++k) h = h + Rational(static_cast<long>(k == 0 ? 1 : (k == 1 ? 10 : 100))) * g.ad[k];
        const QMatrix h2 = h * h;
        for (std::size_t p = 0; p < g.positive_roots.size(); ++p) {
            const IVec lab = rs.dynkin_labels(g.positive_roots[p]);
            Rational val = 0;
            for (std::size_t k = 0; k < g.rank; ++k) val += Rational(static_cast<long>((k == 0 ? 1 : (k == 1 ? 10 : 100)) * lab[k]));
            CHECK(nullspace(h2 + val * val * QMatrix::identity(g.dim())).size() == 2);
        }
    }
    auto a1 = RootSystem::build({Family::A, 1});
    auto cb = ChevalleyBasis::build(a1);
    auto comp = compactify(cb, build_irrep(a1, W({2})));
    // (i tau)^2 on the realification has eigenvalues -16, -4, 0 (each doubled)
    const QMatrix sq = comp[0] * comp[0];
    CHECK(nullspace(sq).size() == 2);
    CHECK(nullspace(sq + Rational(4) * QMatrix::identity(10)).size() == 4);
    CHECK(nullspace(sq + Rational(16) * QMatrix::identity(10)).size() == 4);
}

namespace {

void check_real_module(const RootSystem& rs, const RealModule& u, const IrrepModule& v) {
    const QMatrix g = u.gram_matrix();
    for (const auto& x : u.gram) CHECK(x > 0);
    for (const auto& a : u.action) {
        CHECK(a.transpose() * g + g * a == QMatrix(u.dim(), u.dim()));
    }
    // block dimensions
    for (const auto& block : u.blocks) {
        const std::size_t vdim = v.weight_space(block.weight).size();
        if (block.weight == WeightVec::zero(rs.rank())) {
            CHECK(block.indices.size() == (u.real_case == RealCase::Real ? vdim : 2 * vdim));
        } else {
            const std::size_t both = vdim + v.weight_space(Rational(-1) * block.weight).size();
            CHECK(block.indices.size() == (u.real_case == RealCase::Real ? 2 * vdim : 2 * both));
        }
        // H0^2 acts as -lam(H0)^2
        for (std::size_t k = 0; k < static_cast<std::size_t>(rs.rank()); ++k) {
            const QMatrix sq = u.action[k] * u.action[k];
            const Rational val = Rational(block.labels[k] * block.labels[k]);
            for (auto i : block.indices) {
                QVec e(u.dim());
                e[i] = 1;
                CHECK(sq * e == -val * e);
            }
        }
    }
    // no common kernel
    QMatrix stacked(u.dim() * u.action.size(), u.dim());
    for (std::size_t m = 0; m < u.action.size(); ++m) {
        for (std::size_t r = 0; r < u.dim(); ++r) {
            for (std::size_t c = 0; c < u.dim(); ++c) stacked(m * u.dim() + r, c) = u.action[m](r, c);
        }
    }
    CHECK(nullspace(stacked).empty());
    // recomputed decomposition matches the constructed one
    auto blocks = weight_decompose_real(u, rs);
    REQUIRE(blocks.size() == u.blocks.size());
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        CHECK(blocks[b].weight == u.blocks[b].weight);
        CHECK(blocks[b].indices == u.blocks[b].indices);
    }
}

}  // namespace

TEST_CASE("real forms of irreducible modules") {
    auto a1 = RootSystem::build({Family::A, 1});
    auto cb1 = ChevalleyBasis::build(a1);
    auto v5 = build_irrep(a1, W({2}));
    auto u5 = realify(v5, cb1);
    CHECK(u5.real_case == RealCase::Real);
    CHECK(u5.dim() == 5);
    check_real_module(a1, u5, v5);
    REQUIRE(u5.blocks.size() == 3);
    CHECK(u5.blocks[0].indices.size() == 1);
    CHECK(u5.blocks[1].indices.size() == 2);
    CHECK(u5.blocks[2].indices.size() == 2);
    // odd highest label: quaternionic, realified
    auto v4 = build_irrep(a1, from_labels(a1, {3}));
    auto u4 = realify(v4, cb1);
    CHECK(u4.real_case == RealCase::Realified);
    CHECK(u4.dim() == 8);
    check_real_module(a1, u4, v4);

    auto a2 = RootSystem::build({Family::A, 2});
    auto cb2 = ChevalleyBasis::build(a2);
    auto adj = build_irrep(a2, W({1, 1}));
    auto uadj = realify(adj, cb2);
    CHECK(uadj.real_case == RealCase::Real);
    CHECK(uadj.dim() == 8);
    check_real_module(a2, uadj, adj);
    CHECK(uadj.blocks[0].indices.size() == 2);
    CHECK(uadj.blocks.size() == 4);

    auto v10 = build_irrep(a2, W({2, 1}));
    CHECK(v10.dim() == 10);
    auto u10 = realify(v10, cb2);
    CHECK(u10.real_case == RealCase::Realified);
    CHECK(u10.dim() == 20);
    check_real_module(a2, u10, v10);

    auto v27 = build_irrep(a2, W({2, 2}));
    auto u27 = realify(v27, cb2);
    CHECK(u27.real_case == RealCase::Real);
    CHECK(u27.dim() == 27);
    check_real_module(a2, u27, v27);
    CHECK(u27.blocks[0].indices.size() == 3);

    auto b2 = RootSystem::build({Family::B, 2});
    auto cbb = ChevalleyBasis::build(b2);
    auto spin = build_irrep(b2, from_labels(b2, {0, 1}));
    auto uspin = realify(spin, cbb);
    CHECK(uspin.real_case == RealCase::Realified);
    check_real_module(b2, uspin, spin);
    auto g2 = RootSystem::build({Family::G, 2});
    auto v7 = build_irrep(g2, W(g2.mu1()));
    auto u7 = realify(v7, ChevalleyBasis::build(g2));
    CHECK(u7.real_case == RealCase::Real);
    CHECK(u7.dim() == 7);
    check_real_module(g2, u7, v7);
}

TEST_CASE("kernels of A_beta and B_beta agree on the zero block") {
    auto a2 = RootSystem::build({Family::A, 2});
    auto cb = ChevalleyBasis::build(a2);
    auto u = realify(build_irrep(a2, W({2, 2})), cb);
    const auto& zero = u.blocks[0].indices;
    const std::size_t r = 2;
    for (std::size_t p = 0; p < a2.positive_roots().size(); ++p) {
        std::vector<std::size_t> all(u.dim());
        for (std::size_t k = 0; k < u.dim(); ++k) all[k] = k;
        const auto ka = nullspace(submatrix(u.action[r + 2 * p], all, zero));
        const auto kb = nullspace(submatrix(u.action[r + 2 * p + 1], all, zero));
        CHECK(ka.size() == kb.size());
        for (const auto& x : ka) CHECK(is_zero(submatrix(u.action[r + 2 * p + 1], all, zero) * x));
    }
}
