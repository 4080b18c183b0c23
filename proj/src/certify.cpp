#include "nilgeo/error.hpp"
#include "nilgeo/geodesic.hpp"

#include "spectral.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace nilgeo {

namespace {

Rational nearest_integer(const Rational& x) {
    mpz_class out;
    const Rational shifted = x + frac(1, 2);
    mpz_fdiv_q(out.get_mpz_t(), shifted.get_num_mpz_t(), shifted.get_den_mpz_t());
    return Rational(out);
}

// Exact LLL reduction (delta = 3/4) of linearly independent rows.
std::vector<QVec> lll_reduce(std::vector<QVec> b) {
    const std::size_t n = b.size();
    if (n < 2) return b;
    std::vector<QVec> star(n);
    std::vector<Rational> norm(n);
    std::vector<std::vector<Rational>> mu(n, std::vector<Rational>(n));
    auto gram_schmidt = [&] {
        for (std::size_t i = 0; i < n; ++i) {
            star[i] = b[i];
            for (std::size_t j = 0; j < i; ++j) {
                mu[i][j] = dot(b[i], star[j]) / norm[j];
                star[i] = star[i] - mu[i][j] * star[j];
            }
            norm[i] = dot(star[i], star[i]);
        }
    };
    gram_schmidt();
    std::size_t k = 1;
    const Rational delta = frac(3, 4);
    while (k < n) {
        for (std::size_t j = k; j-- > 0;) {
            const Rational r = nearest_integer(mu[k][j]);
            if (r == 0) continue;
            b[k] = b[k] - r * b[j];
            gram_schmidt();
        }
        if (norm[k] >= (delta - mu[k][k - 1] * mu[k][k - 1]) * norm[k - 1]) {
            ++k;
        } else {
            std::swap(b[k], b[k - 1]);
            gram_schmidt();
            k = std::max<std::size_t>(k - 1, 1);
        }
    }
    return b;
}

// Integer points of ker m as a lattice basis, from unimodular row reduction of [m^T | I].
std::vector<QVec> integer_kernel(const QMatrix& m) {
    const std::size_t rows = m.rows(), cols = m.cols();
    std::vector<mpz_class> scale(rows, 1);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) mpz_lcm(scale[r].get_mpz_t(), scale[r].get_mpz_t(), m(r, c).get_den_mpz_t());
    }
    std::vector<std::vector<mpz_class>> aug(cols, std::vector<mpz_class>(rows + cols));
    for (std::size_t c = 0; c < cols; ++c) {
        for (std::size_t r = 0; r < rows; ++r) aug[c][r] = Rational(m(r, c) * Rational(scale[r])).get_num();
        aug[c][rows + c] = 1;
    }
    std::vector<std::size_t> pivots;
    const auto h = hermite_rows(std::move(aug), pivots);
    std::vector<QVec> out;
    for (std::size_t i = 0; i < h.size(); ++i) {
        if (pivots[i] < rows) continue;
        QVec v(cols);
        for (std::size_t c = 0; c < cols; ++c) v[c] = Rational(h[i][rows + c]);
        out.push_back(std::move(v));
    }
    return out;
}

// Babai rounding: integer coefficients of a lattice vector near y.
std::vector<mpz_class> round_coordinates(const std::vector<QVec>& basis, const Eigen::VectorXd& y) {
    if (basis.empty()) return {};
    Eigen::MatrixXd b(y.size(), static_cast<Eigen::Index>(basis.size()));
    for (std::size_t i = 0; i < basis.size(); ++i) {
        for (Eigen::Index r = 0; r < y.size(); ++r) b(r, static_cast<Eigen::Index>(i)) = basis[i][static_cast<std::size_t>(r)].get_d();
    }
    const Eigen::VectorXd c = b.completeOrthogonalDecomposition().solve(y);
    std::vector<mpz_class> out;
    for (Eigen::Index i = 0; i < c.size(); ++i) out.emplace_back(static_cast<long>(std::llround(c(i))));
    return out;
}

Eigen::VectorXd to_eigen_vec(const DVec& v) { return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size())); }

Eigen::VectorXd to_eigen_vec(const QVec& v) {
    Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) out(static_cast<Eigen::Index>(i)) = v[i].get_d();
    return out;
}

// First hit map for fixed Z and alpha as a function of X, with its Jacobian.
class HitMap {
public:
    HitMap(const NumericModel& n, const detail::NumericCenter& center, double alpha, double omega)
        : n_(n), c_(center), alpha_(alpha), omega_(omega), z0_(alpha * to_eigen_vec(center.z)) {}

    std::size_t dim() const { return n_.u_dim() + n_.z_dim(); }

    Eigen::VectorXd value(const Eigen::VectorXd& x) const {
        const Eigen::VectorXd x0 = c_.kernel_projector * x;
        Eigen::VectorXd zc = z0_ + detail::bracket(n_, x0, c_.j_inverse(x)) / alpha_;
        for (const auto& p : c_.projectors) {
            const Eigen::VectorXd part = p * x;
            zc += detail::bracket(n_, c_.j_inverse(part), part) / (2 * alpha_);
        }
        Eigen::VectorXd out(static_cast<Eigen::Index>(dim()));
        out << x0, zc;
        return omega_ * out;
    }

    Eigen::MatrixXd jacobian(const Eigen::VectorXd& x) const {
        const auto q = static_cast<Eigen::Index>(n_.u_dim());
        const Eigen::VectorXd x0 = c_.kernel_projector * x;
        const Eigen::VectorXd jx = c_.j_inverse(x);
        std::vector<Eigen::VectorXd> parts, jparts;
        for (const auto& p : c_.projectors) {
            parts.push_back(p * x);
            jparts.push_back(c_.j_inverse(parts.back()));
        }
        Eigen::MatrixXd jac(static_cast<Eigen::Index>(dim()), q);
        for (Eigen::Index i = 0; i < q; ++i) {
            const Eigen::VectorXd u0 = c_.kernel_projector.col(i);
            Eigen::VectorXd e = Eigen::VectorXd::Zero(q);
            e(i) = 1;
            Eigen::VectorXd zc = (detail::bracket(n_, u0, jx) + detail::bracket(n_, x0, c_.j_inverse(e))) / alpha_;
            for (std::size_t b = 0; b < parts.size(); ++b) {
                const Eigen::VectorXd ub = c_.projectors[b].col(i);
                zc += (detail::bracket(n_, c_.j_inverse(ub), parts[b]) + detail::bracket(n_, jparts[b], ub)) / (2 * alpha_);
            }
            jac.col(i) << u0, zc;
        }
        return omega_ * jac;
    }

private:
    const NumericModel& n_;
    const detail::NumericCenter& c_;
    double alpha_;
    double omega_;
    Eigen::VectorXd z0_;
};

// Gauss-Newton with minimum-norm steps and backtracking; counts map evaluations.
bool solve_hit(const HitMap& f, const Eigen::VectorXd& target, Eigen::VectorXd& x, std::size_t& evaluations, std::size_t budget) {
    const double tol = 1e-12 * std::max(1.0, target.norm());
    Eigen::VectorXd r = f.value(x) - target;
    ++evaluations;
    for (int it = 0; it < 60; ++it) {
        if (r.norm() <= tol) return true;
        if (evaluations >= budget) return false;
        const Eigen::VectorXd delta = f.jacobian(x).completeOrthogonalDecomposition().solve(-r);
        ++evaluations;
        double step = 1;
        bool accepted = false;
        for (int halving = 0; halving < 30 && evaluations < budget; ++halving, step /= 2) {
            const Eigen::VectorXd trial = x + step * delta;
            const Eigen::VectorXd rt = f.value(trial) - target;
            ++evaluations;
            if (rt.norm() < r.norm()) {
                x = trial;
                r = rt;
                accepted = true;
                break;
            }
        }
        if (!accepted) return r.norm() <= tol;
    }
    return r.norm() <= tol;
}

QVec random_perturbation(std::mt19937_64& rng, std::size_t n, int scale) {
    std::uniform_int_distribution<int> d(-scale, scale);
    QVec v(n);
    for (auto& x : v) x = frac(d(rng), 100 * scale);
    return v;
}

}  // namespace

Certificate certify_closed(const MetricNilLie& n, const Lattice& gamma, const GeodesicInit& xi, const CertifyOptions& opts) {
    if (opts.max_m == 0) throw Error(ErrorCode::InvalidInput, "max_m must be positive");
    const ResonantCenter rc(n, xi.z);
    if (!is_super_regular(n, xi.z)) throw Error(ErrorCode::PreconditionViolated, "Z is not super regular");
    first_hit(rc, xi);  // throws NotInNZ

    const NumericModel nm(n);
    const DVec z_numeric = to_numeric(xi).z;
    const auto exact_center = detail::NumericCenter::from_exact(rc);
    const Period omega = rc.period(xi.alpha);
    const double alpha = xi.alpha.get_d();
    const HitMap f(nm, exact_center, alpha, omega.value());
    const std::size_t q = n.u_dim(), k = n.z_dim();

    const auto kernel_lattice = lll_reduce(integer_kernel(n.j(xi.z)));
    const auto center_lattice = lll_reduce(gamma.center_basis());
    const Rational& s = gamma.scale();

    // e^{m omega j(alpha Z)} = Id: m |alpha| a_b omega / 2 pi is an integer for every block
    auto rotation_exact = [&](unsigned m) {
        for (const auto& b : rc.spectrum().blocks) {
            const auto turns = rational_sqrt(Rational(m) * Rational(m) * omega.sq * xi.alpha * xi.alpha * b.a_sq);
            if (!turns || !is_integer(*turns)) return false;
        }
        return true;
    };

    // nearest lattice point in log coordinates, U part in ker j(Z)
    auto round_to_lattice = [&](const Eigen::VectorXd& y) {
        const Eigen::VectorXd yu = y.head(static_cast<Eigen::Index>(q)) / s.get_d();
        const auto coeffs = round_coordinates(kernel_lattice, yu);
        std::vector<mpz_class> steps(q, 0);
        QVec u(q);
        for (std::size_t i = 0; i < coeffs.size(); ++i) u = u + Rational(coeffs[i]) * kernel_lattice[i];
        for (std::size_t a = 0; a < q; ++a) steps[a] = u[a].get_num();
        GroupElem g{s * u, gamma.ordered_correction(steps)};
        const Eigen::VectorXd rest = y.tail(static_cast<Eigen::Index>(k)) - to_eigen_vec(g.z);
        const auto cz = round_coordinates(center_lattice, rest);
        for (std::size_t i = 0; i < cz.size(); ++i) g.z = g.z + Rational(cz[i]) * center_lattice[i];
        return g;
    };

    std::mt19937_64 rng(opts.seed);
    std::uniform_real_distribution<double> sample(0, 1);
    std::size_t evaluations = 0;
    GeodesicInit start = xi;
    for (int tries = 0; tries < 16 && !in_NZ_star(rc, start); ++tries) start.x = xi.x + random_perturbation(rng, q, 10);

    while (evaluations < opts.budget) {
        const Eigen::VectorXd x_start = to_eigen_vec(start.x);
        const Eigen::VectorXd hit = f.value(x_start);
        ++evaluations;
        for (unsigned m = 1; m <= opts.max_m && evaluations < opts.budget; ++m) {
            const GroupElem phi = round_to_lattice(static_cast<double>(m) * hit);
            if (!lattice_membership(gamma, phi)) continue;
            Eigen::VectorXd target(static_cast<Eigen::Index>(q + k));
            target << to_eigen_vec(phi.u), to_eigen_vec(phi.z);
            Eigen::VectorXd x = x_start;
            if (!solve_hit(f, target / static_cast<double>(m), x, evaluations, opts.budget)) continue;

            Certificate cert;
            cert.x = DVec(x.data(), x.data() + x.size());
            cert.alpha = xi.alpha;
            cert.z = xi.z;
            cert.m = m;
            cert.omega = omega;
            cert.phi = phi;
            cert.hit_residual = (static_cast<double>(m) * f.value(x) - target).norm();
            cert.rotation_exact = rotation_exact(m);

            const NumericInit ni{cert.x, alpha, z_numeric};
            const double period = static_cast<double>(m) * omega.value();
            const Eigen::VectorXd pu = to_eigen_vec(phi.u), pz = to_eigen_vec(phi.z);
            double worst = 0;
            for (int sample_index = 0; sample_index < 10; ++sample_index) {
                const double t = omega.value() * sample(rng);
                const GeodesicPoint g = geodesic_eval(nm, ni, t);
                const GeodesicPoint later = geodesic_eval(nm, ni, t + period);
                const Eigen::VectorXd gx = to_eigen_vec(g.x);
                const Eigen::VectorXd lu = pu + gx;
                const Eigen::VectorXd lz = pz + to_eigen_vec(g.z) + 0.5 * detail::bracket(nm, pu, gx);
                const double diff = std::sqrt((lu - to_eigen_vec(later.x)).squaredNorm() + (lz - to_eigen_vec(later.z)).squaredNorm());
                worst = std::max(worst, diff);
            }
            cert.translation_residual = worst;
            cert.evaluations = evaluations;
            if (cert.rotation_exact && worst <= 1e-8 && cert.hit_residual <= 1e-8) return cert;
        }
        start.x = xi.x + random_perturbation(rng, q, 10);
    }
    throw Error(ErrorCode::BudgetExhausted, "no closed geodesic certified within the evaluation budget");
}

}  // namespace nilgeo
