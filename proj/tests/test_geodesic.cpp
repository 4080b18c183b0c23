#include "nilgeo/error.hpp"
#include "nilgeo/geodesic.hpp"
#include "nilgeo/weights.hpp"

#include <doctest.h>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

using namespace nilgeo;

namespace {

const MetricNilLie& a1_five() {
    static const MetricNilLie n = build_model(RootSystem::build({Family::A, 1}), WeightVec::from_ints({2}));
    return n;
}

const MetricNilLie& a2_27() {
    static const MetricNilLie n = build_model(RootSystem::build({Family::A, 2}), WeightVec::from_ints({2, 2}));
    return n;
}

QVec center(const MetricNilLie& n, std::initializer_list<int> tau) {
    QVec z(n.z_dim());
    std::size_t k = 0;
    for (int t : tau) z[k++] = t;
    return z;
}

QVec pattern_x(std::size_t q) {
    QVec x(q);
    for (std::size_t i = 0; i < q; ++i) x[i] = frac(static_cast<int>(i * 7 % 5) + 1, 3);
    return x;
}

QVec random_qvec(std::mt19937& rng, std::size_t n, int range = 5, int den = 3) {
    std::uniform_int_distribution<int> num(-range, range), d(1, den);
    QVec v(n);
    for (auto& x : v) {
        x = Rational(num(rng), d(rng));
        x.canonicalize();
    }
    return v;
}

Eigen::VectorXd vec(const DVec& v) { return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size())); }

Eigen::VectorXd vec(const QVec& v) {
    Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) out(static_cast<Eigen::Index>(i)) = v[i].get_d();
    return out;
}

DVec dvec(const Eigen::VectorXd& v) { return DVec(v.data(), v.data() + v.size()); }

Eigen::MatrixXd mat(const DVec& rows, std::size_t n) {
    Eigen::MatrixXd m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r * n + c];
    }
    return m;
}

double rel_err(const Eigen::VectorXd& a, const Eigen::VectorXd& b) { return (a - b).norm() / std::max(1.0, b.norm()); }

Eigen::VectorXd hit_vector(const NumericHit& h) {
    Eigen::VectorXd out(static_cast<Eigen::Index>(h.u.size() + h.z.size()));
    out << vec(h.u), vec(h.z);
    return out;
}

}  // namespace

TEST_CASE("j spectrum of the A1 five-dimensional model") {
    const auto& n = a1_five();
    const auto s = j_spectrum(n, center(n, {1}));
    CHECK(s.exact);
    CHECK(s.kernel_dim == 1);
    REQUIRE(s.pairs.size() == 2);
    CHECK(*s.pairs[0].a_sq == 4);
    CHECK(*s.pairs[1].a_sq == 16);
    CHECK(s.pairs[0].multiplicity == 1);
    CHECK(s.pairs[1].multiplicity == 1);

    const auto zero = j_spectrum(n, QVec(n.z_dim()));
    CHECK(zero.kernel_dim == n.u_dim());
    CHECK(zero.pairs.empty());
}

TEST_CASE("j spectrum off the Cartan subalgebra is found exactly") {
    const auto& n = a1_five();
    QVec z(n.z_dim());
    z[n.g0.a_index(0)] = 1;  // conjugate to a multiple of i tau
    const auto s = j_spectrum(n, z);
    CHECK(s.exact);
    CHECK(s.kernel_dim == 1);
    REQUIRE(s.pairs.size() == 2);
    CHECK(*s.pairs[1].a_sq == 4 * *s.pairs[0].a_sq);
}

TEST_CASE("Ad(g) Z has the spectrum of Z") {
    const auto& n = a2_27();
    const NumericModel nm(n);
    const auto ref = j_spectrum(n, center(n, {1, 3}));
    const Eigen::VectorXd z = vec(center(n, {1, 3}));
    for (std::size_t c = 0; c < n.z_dim(); ++c) {
        const Eigen::MatrixXd ad = mat(nm.ad(c), n.z_dim());
        const Eigen::VectorXd moved = (0.7 * ad).exp() * z;
        const auto s = j_spectrum(nm, dvec(moved));
        CHECK(s.kernel_dim == ref.kernel_dim);
        REQUIRE(s.pairs.size() == ref.pairs.size());
        for (std::size_t i = 0; i < s.pairs.size(); ++i) {
            CHECK(s.pairs[i].a == doctest::Approx(ref.pairs[i].a).epsilon(1e-9));
            CHECK(s.pairs[i].multiplicity == ref.pairs[i].multiplicity);
        }
    }
}

TEST_CASE("resonance") {
    const auto& n = a1_five();
    const auto omega = is_resonant(n, center(n, {1}));
    REQUIRE(omega);
    CHECK(*omega == doctest::Approx(std::numbers::pi));
    CHECK_THROWS_AS(is_resonant(n, QVec(n.z_dim())), Error);

    const std::vector<double> irrational{1.0, std::sqrt(2.0)};
    CHECK_FALSE(resonant_period(irrational));
    const std::vector<double> commensurate{2.0, 4.0, 0.0};
    CHECK(*resonant_period(commensurate) == doctest::Approx(0.5));

    std::mt19937 rng(7);
    const auto& m = a2_27();
    for (int trial = 0; trial < 10; ++trial) {
        QVec z(m.z_dim());
        const auto tau = random_qvec(rng, 2);
        z[0] = tau[0];
        z[1] = tau[1];
        if (is_zero(z)) continue;
        CHECK(is_resonant(m, z));
    }
}

TEST_CASE("continued fraction recognition") {
    CHECK(*continued_fraction_rational(0.75) == frac(3, 4));
    CHECK(*continued_fraction_rational(-7.0 / 3) == frac(-7, 3));
    CHECK_FALSE(continued_fraction_rational(std::sqrt(2.0)));
    CHECK_FALSE(continued_fraction_rational(std::numbers::pi));
}

TEST_CASE("super regularity") {
    const auto& a1 = a1_five();
    CHECK(is_super_regular(a1, center(a1, {1})));
    CHECK_FALSE(is_super_regular(a1, QVec(a1.z_dim())));

    const auto& n = a2_27();
    CHECK(is_super_regular(n, center(n, {1, 3})));
    // at tau = (1, 2) two distinct weight blocks share a^2
    const QVec collide = center(n, {1, 2});
    CHECK_FALSE(is_super_regular(n, collide));
    const auto exact = exact_spectrum(n, collide);
    REQUIRE(exact);
    bool shared = false;
    for (const auto& b : exact->blocks) shared = shared || b.basis.size() > 2;
    CHECK(shared);

    // A_beta is conjugate to a multiple of the coroot direction of beta
    QVec a_beta(n.z_dim());
    a_beta[n.g0.a_index(0)] = 1;
    CHECK(is_super_regular(n, a_beta) == is_super_regular(n, center(n, {1, 0})));
}

TEST_CASE("super regular directions fill almost all of a sampled sphere") {
    const auto& n = a2_27();
    const std::size_t a = n.g0.a_index(0);
    std::size_t total = 0, regular = 0;
    // grid step 1e-2 in both angles, rational coordinates to 1e-2, every 149th point checked
    std::size_t index = 0;
    for (int ti = 1; ti < 314; ++ti) {
        for (int pi = 0; pi < 628; ++pi, ++index) {
            if (index % 149 != 0) continue;
            const double theta = ti * 1e-2, phi = pi * 1e-2;
            const double c[3] = {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
            QVec z(n.z_dim());
            for (int k = 0; k < 3; ++k) {
                Rational r(static_cast<long>(std::lround(c[k] * 100)), 100);
                r.canonicalize();
                z[k < 2 ? static_cast<std::size_t>(k) : a] = r;
            }
            if (is_zero(z)) continue;
            ++total;
            if (is_super_regular(n, z)) ++regular;
        }
    }
    MESSAGE("super regular " << regular << " of " << total);
    CHECK(static_cast<double>(total - regular) <= 0.05 * static_cast<double>(total));
}

TEST_CASE("closed form with X1 = 0 is a one-parameter subgroup") {
    const auto& n = a1_five();
    const NumericModel nm(n);
    NumericInit xi;
    xi.alpha = 1.5;
    xi.z = {1, 0, 0};
    xi.x.assign(n.u_dim(), 0.0);
    const auto rc = ResonantCenter(n, center(n, {1}));
    REQUIRE(rc.spectrum().kernel.size() == 1);
    const QVec x0 = rc.spectrum().kernel[0];
    for (std::size_t i = 0; i < n.u_dim(); ++i) xi.x[i] = x0[i].get_d();
    for (double t : {0.3, 1.0, 4.2}) {
        const auto p = geodesic_eval(nm, xi, t);
        CHECK(rel_err(vec(p.x), t * vec(xi.x)) < 1e-14);
        CHECK(rel_err(vec(p.z), t * xi.alpha * vec(xi.z)) < 1e-14);
    }
}

TEST_CASE("closed form agrees with RK4") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> time(0.0, 5.0);
    for (const MetricNilLie* n : {&a1_five(), &a2_27()}) {
        const NumericModel nm(*n);
        GeodesicInit xi{pattern_x(n->u_dim()), frac(2, 3), center(*n, {1, 3})};
        if (n->z_dim() == 3) xi.z = {Rational(1), frac(1, 2), frac(-1, 3)};  // off the Cartan subalgebra
        const auto num = to_numeric(xi);
        const int samples = n == &a1_five() ? 20 : 3;
        double worst = 0;
        for (int k = 0; k < samples; ++k) {
            const double t = time(rng);
            const auto closed = geodesic_eval(nm, num, t);
            const auto ode = geodesic_rk4(nm, num, t);
            Eigen::VectorXd a(static_cast<Eigen::Index>(n->dim())), b(a.size());
            a << vec(closed.x), vec(closed.z);
            b << vec(ode.x), vec(ode.z);
            worst = std::max(worst, rel_err(a, b));
        }
        CHECK(worst <= 1e-8);
    }
}

TEST_CASE("geodesic at the period returns to the kernel line") {
    const auto& n = a2_27();
    const NumericModel nm(n);
    GeodesicInit xi{pattern_x(n.u_dim()), frac(3, 2), center(n, {1, 3})};
    const ResonantCenter rc(n, xi.z);
    const double omega = rc.period(xi.alpha).value();
    const auto p = geodesic_eval(nm, to_numeric(xi), omega);
    CHECK(rel_err(vec(p.x), omega * vec(rc.kernel_part(xi.x))) < 1e-12);
    CHECK(vec(p.z2).norm() < 1e-11);
    for (unsigned m : {1u, 2u, 5u}) CHECK(is_zero(tilde_z2_at_period(rc, xi, m)));
}

TEST_CASE("first hit with X1 = 0") {
    const auto& n = a1_five();
    const ResonantCenter rc(n, center(n, {1}));
    const QVec x0 = frac(2, 7) * rc.spectrum().kernel[0];
    const GeodesicInit xi{x0, frac(5, 3), center(n, {1})};
    const auto f = first_hit(n, xi);
    QVec expected = x0;
    for (const auto& v : frac(5, 3) * xi.z) expected.push_back(v);
    CHECK(f.coeff == expected);
    CHECK(*f.omega.over_2pi() == frac(3, 10));  // pi / alpha

    const auto f3 = mth_hit(n, xi, 3);
    CHECK(*f3.omega.over_2pi() == frac(9, 10));
    CHECK(f3.coeff == expected);
}

TEST_CASE("first hit matches the closed form at the period") {
    const auto& n = a2_27();
    const NumericModel nm(n);
    std::mt19937 rng(5);
    for (int trial = 0; trial < 3; ++trial) {
        GeodesicInit xi{random_qvec(rng, n.u_dim()), frac(trial + 1, 2), center(n, {2, 5})};
        const auto f = first_hit(n, xi);
        const auto p = geodesic_eval(nm, to_numeric(xi), f.omega.value());
        Eigen::VectorXd g(static_cast<Eigen::Index>(n.dim()));
        g << vec(p.x), vec(p.z);
        CHECK(rel_err(vec(f.value()), g) < 1e-10);
        const auto h = numeric_first_hit(nm, to_numeric(xi));
        CHECK(rel_err(hit_vector(h), g) < 1e-10);
        // the U-component is omega X0
        const QVec x0 = ResonantCenter(n, xi.z).kernel_part(xi.x);
        CHECK(QVec(f.coeff.begin(), f.coeff.begin() + static_cast<long>(n.u_dim())) == x0);
    }
}

TEST_CASE("first hit scaling invariances") {
    const auto& n = a2_27();
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> num(1, 9), den(1, 4);
    for (int trial = 0; trial < 8; ++trial) {
        const GeodesicInit xi{random_qvec(rng, n.u_dim()), frac(num(rng), den(rng)), center(n, {1, 3})};
        const auto base = first_hit(n, xi);
        Rational c(num(rng), den(rng));
        c.canonicalize();
        // xi -> c xi
        const GeodesicInit scaled{c * xi.x, c * xi.alpha, xi.z};
        CHECK(same_value(first_hit(n, scaled), base));
        // Z -> c Z with the same vector xi
        for (const Rational& s : std::vector<Rational>{c, Rational(-1) * c}) {
            const GeodesicInit moved{xi.x, xi.alpha / s, s * xi.z};
            CHECK(same_value(first_hit(n, moved), base));
        }
        // negative rescaling reverses time: gamma_{-xi}(t) = gamma_xi(-t)
        const GeodesicInit reversed{Rational(-1) * xi.x, Rational(-1) * xi.alpha, xi.z};
        const auto back = first_hit(n, reversed);
        const auto fwd = base.value();
        const auto bwd = back.value();
        for (std::size_t i = 0; i < fwd.size(); ++i) CHECK(bwd[i] == doctest::Approx(-fwd[i]));
    }
}

TEST_CASE("mth hit matches the closed form at m omega") {
    const auto& n = a1_five();
    const NumericModel nm(n);
    const GeodesicInit xi{pattern_x(n.u_dim()), frac(4, 5), center(n, {1})};
    const auto f1 = first_hit(n, xi);
    CHECK(same_value(mth_hit(n, xi, 1), f1));
    const auto f2 = mth_hit(n, xi, 2);
    const auto p = geodesic_eval(nm, to_numeric(xi), 2 * f1.omega.value());
    Eigen::VectorXd g(static_cast<Eigen::Index>(n.dim()));
    g << vec(p.x), vec(p.z);
    CHECK(rel_err(vec(f2.value()), g) <= 1e-8);
    CHECK(rel_err(vec(f2.value()), 2 * vec(f1.value())) < 1e-14);
}

TEST_CASE("derivative of the first hit map") {
    const auto& n = a2_27();
    const NumericModel nm(n);
    const ResonantCenter rc(n, center(n, {1, 3}));
    std::mt19937 rng(19);
    const GeodesicInit xi{random_qvec(rng, n.u_dim()), frac(3, 2), rc.z()};

    SUBCASE("kernel direction with X1 = 0") {
        const GeodesicInit flat{rc.kernel_part(xi.x), xi.alpha, xi.z};
        const QVec u0 = rc.spectrum().kernel[0];
        const auto d = dFz(rc, flat, u0);
        QVec expected = u0;
        expected.resize(n.dim());
        CHECK(d.coeff == expected);
    }

    SUBCASE("symmetric bracket identity on every block") {
        for (std::size_t b = 0; b < rc.spectrum().blocks.size(); ++b) {
            for (int trial = 0; trial < 3; ++trial) {
                const QVec u = rc.block_part(b, random_qvec(rng, n.u_dim()));
                const QVec x = rc.block_part(b, random_qvec(rng, n.u_dim()));
                CHECK(n.bracket_of(rc.j_inverse(u), x) == n.bracket_of(rc.j_inverse(x), u));
            }
        }
    }

    SUBCASE("central finite differences") {
        std::vector<QVec> directions = rc.spectrum().kernel;
        for (const auto& b : rc.spectrum().blocks) directions.push_back(b.basis.front());
        const double h = 1e-6;
        for (const auto& dir : directions) {
            const auto exact = vec(dFz(rc, xi, dir).value());
            auto shifted = [&](double s) {
                NumericInit p = to_numeric(xi);
                for (std::size_t i = 0; i < p.x.size(); ++i) p.x[i] += s * dir[i].get_d();
                return hit_vector(numeric_first_hit(nm, p));
            };
            const Eigen::VectorXd fd = (shifted(h) - shifted(-h)) / (2 * h);
            CHECK((fd - exact).norm() <= 1e-6 * std::max(1.0, exact.norm()));
        }
    }

    SUBCASE("image subspaces") {
        const std::size_t q = n.u_dim(), r = n.g0.rank;
        for (const auto& u0 : rc.spectrum().kernel) {
            const auto d = dFz(rc, xi, u0).coeff;
            for (std::size_t k = 0; k < r; ++k) CHECK(d[q + k] == 0);
        }
        // with Z in the Cartan subalgebra each root block pairs with one root of g0
        for (const auto& b : rc.spectrum().blocks) {
            const auto d = dFz(rc, xi, b.basis.front()).coeff;
            for (std::size_t i = 0; i < q; ++i) CHECK(d[i] == 0);
        }
    }

    SUBCASE("mixed direction is rejected") {
        QVec mixed = rc.spectrum().kernel[0];
        const auto& blk = rc.spectrum().blocks.front().basis.front();
        for (std::size_t i = 0; i < mixed.size(); ++i) mixed[i] += blk[i];
        CHECK_THROWS_AS(dFz(rc, xi, mixed), Error);
        try {
            dFz(rc, xi, mixed);
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::BadDirection);
        }
    }
}

TEST_CASE("generic set N_Z*") {
    const auto& n = a2_27();
    const ResonantCenter rc(n, center(n, {1, 3}));
    std::mt19937 rng(23);
    int hits = 0;
    for (int trial = 0; trial < 20; ++trial) {
        const GeodesicInit xi{random_qvec(rng, n.u_dim()), 1, rc.z()};
        if (in_NZ_star(rc, xi)) ++hits;
    }
    CHECK(hits >= 19);

    const GeodesicInit xi{random_qvec(rng, n.u_dim()), 1, rc.z()};
    REQUIRE(in_NZ_star(rc, xi));
    // drop the component of X in a block that pairs with a root
    bool dropped = false;
    for (const auto& b : rc.spectrum().blocks) {
        GeodesicInit cut = xi;
        cut.x = xi.x - rc.block_part(&b - rc.spectrum().blocks.data(), xi.x);
        if (!in_NZ_star(rc, cut)) dropped = true;
    }
    CHECK(dropped);

    const GeodesicInit no_kernel{xi.x - rc.kernel_part(xi.x), 1, rc.z()};
    CHECK_FALSE(in_NZ_star(rc, no_kernel));
}

TEST_CASE("rank of the first hit map") {
    const auto& n = a2_27();
    const ResonantCenter rc(n, center(n, {1, 3}));
    const std::size_t u0_dim = rc.spectrum().kernel.size();
    CHECK(u0_dim == 3);
    const GeodesicInit xi{pattern_x(n.u_dim()), 1, rc.z()};
    REQUIRE(in_NZ_star(rc, xi));
    const auto r = rank_at(rc, xi);
    CHECK(r.target_dim == 8 + u0_dim);
    CHECK(r.rank == 8 + u0_dim);
    CHECK(r.maximal);

    const GeodesicInit flat{rc.kernel_part(xi.x), 1, rc.z()};
    CHECK(rank_at(rc, flat).rank >= u0_dim);
}

TEST_CASE("equivariance of the first hit map under the compact group") {
    const auto& n = a2_27();
    const NumericModel nm(n);
    const GeodesicInit xi{pattern_x(n.u_dim()), frac(1, 2), center(n, {1, 3})};
    const auto base = numeric_first_hit(nm, to_numeric(xi));
    const std::size_t q = n.u_dim(), k = n.z_dim();

    // numeric Jacobian rank of the first hit map, central differences
    auto numeric_rank = [&](const NumericInit& p) {
        Eigen::MatrixXd jac(static_cast<Eigen::Index>(n.dim()), static_cast<Eigen::Index>(q));
        const double h = 1e-6;
        for (std::size_t i = 0; i < q; ++i) {
            NumericInit plus = p, minus = p;
            plus.x[i] += h;
            minus.x[i] -= h;
            jac.col(static_cast<Eigen::Index>(i)) = (hit_vector(numeric_first_hit(nm, plus)) - hit_vector(numeric_first_hit(nm, minus))) / (2 * h);
        }
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(jac);
        svd.setThreshold(1e-6);
        return static_cast<std::size_t>(svd.rank());
    };
    const std::size_t base_rank = numeric_rank(to_numeric(xi));
    CHECK(base_rank == rank_at(n, xi).rank);

    for (std::size_t c : {std::size_t{0}, n.g0.a_index(0), n.g0.b_index(2)}) {
        const Eigen::MatrixXd rho = (0.37 * mat(nm.action(c), q)).exp();
        const Eigen::MatrixXd ad = (0.37 * mat(nm.ad(c), k)).exp();
        NumericInit moved = to_numeric(xi);
        moved.x = dvec(rho * vec(xi.x));
        moved.z = dvec(ad * vec(xi.z));
        const auto hit = numeric_first_hit(nm, moved);
        CHECK(hit.omega == doctest::Approx(base.omega).epsilon(1e-12));
        CHECK(rel_err(vec(hit.u), rho * vec(base.u)) <= 1e-9);
        CHECK(rel_err(vec(hit.z), ad * vec(base.z)) <= 1e-9);
        CHECK(numeric_rank(moved) == base_rank);
    }
}

TEST_CASE("closed geodesic certificates") {
    for (const MetricNilLie* n : {&a1_five(), &a2_27()}) {
        const Lattice gamma(*n);
        const GeodesicInit xi{pattern_x(n->u_dim()), 1, n == &a1_five() ? center(*n, {1}) : center(*n, {1, 3})};
        const auto cert = certify_closed(*n, gamma, xi);
        CHECK(cert.m >= 1);
        CHECK(cert.m <= 64);
        CHECK(cert.rotation_exact);
        CHECK(cert.hit_residual <= 1e-10);
        CHECK(cert.translation_residual <= 1e-8);
        CHECK(lattice_membership(gamma, cert.phi));
    }
}

TEST_CASE("certificate from a one-parameter subgroup start") {
    const auto& n = a1_five();
    const Lattice gamma(n);
    const ResonantCenter rc(n, center(n, {1}));
    const GeodesicInit xi{rc.spectrum().kernel[0], 1, rc.z()};
    const auto cert = certify_closed(n, gamma, xi);
    CHECK(cert.rotation_exact);
    CHECK(cert.translation_residual <= 1e-8);
    CHECK(lattice_membership(gamma, cert.phi));
}

TEST_CASE("certification honours the evaluation budget") {
    const auto& n = a2_27();
    const Lattice gamma(n);
    const GeodesicInit xi{pattern_x(n.u_dim()), 1, center(n, {1, 3})};
    CertifyOptions opts;
    opts.budget = 1;
    CHECK_THROWS_AS(certify_closed(n, gamma, xi, opts), Error);
}

TEST_CASE("certification rejects a non super regular center") {
    const auto& n = a2_27();
    const Lattice gamma(n);
    const GeodesicInit xi{pattern_x(n.u_dim()), 1, center(n, {1, 1})};
    CHECK_THROWS_AS(certify_closed(n, gamma, xi), Error);
}
