#include "nilgeo/error.hpp"
#include "nilgeo/geodesic.hpp"
#include "nilgeo/kernels.hpp"

#include "spectral.hpp"

#include <cmath>
#include <numbers>

namespace nilgeo {

namespace {

DVec flatten(const QMatrix& m) {
    DVec out;
    out.reserve(m.rows() * m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) out.push_back(m(r, c).get_d());
    }
    return out;
}

Eigen::VectorXd to_eigen_vec(std::span<const double> v) {
    return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

DVec to_dvec(const Eigen::VectorXd& v) { return DVec(v.data(), v.data() + v.size()); }

}  // namespace

NumericModel::NumericModel(const MetricNilLie& n) : q_(n.u_dim()), k_(n.z_dim()) {
    for (const auto& g : n.u.gram) gram_.push_back(g.get_d());
    g0_inner_ = flatten(n.g0_inner);
    for (const auto& a : n.u.action) action_.push_back(flatten(a));
    for (const auto& a : n.g0.ad) ad_.push_back(flatten(a));
    for (const auto& b : n.bracket) bracket_.push_back(flatten(b));
}

DVec NumericModel::bracket(std::span<const double> x, std::span<const double> y) const {
    DVec out(k_);
    for (std::size_t c = 0; c < k_; ++c) out[c] = kernels::bilinear(x, bracket_[c], q_, q_, y);
    return out;
}

DVec NumericModel::j_matrix(std::span<const double> z) const {
    DVec m(q_ * q_);
    for (std::size_t c = 0; c < k_; ++c) {
        if (z[c] != 0) kernels::axpy(z[c], action_[c], m);
    }
    return m;
}

DVec NumericModel::j_apply(std::span<const double> z, std::span<const double> x) const {
    DVec out(q_);
    kernels::gemv(j_matrix(z), q_, q_, x, out);
    return out;
}

namespace detail {

Eigen::VectorXd bracket(const NumericModel& n, const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
    return to_eigen_vec(n.bracket(std::span<const double>(x.data(), static_cast<std::size_t>(x.size())),
                                  std::span<const double>(y.data(), static_cast<std::size_t>(y.size()))));
}

NumericCenter NumericCenter::from_numeric(const NumericModel& n, std::span<const double> z) {
    const std::size_t q = n.u_dim();
    NumericCenter c;
    c.z.assign(z.begin(), z.end());
    c.jz = row_major_to_eigen(n.j_matrix(z), q, q);
    Eigen::MatrixXd form = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(q), static_cast<Eigen::Index>(q));
    for (std::size_t i = 0; i < q; ++i) form(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = n.gram()[i];
    c.kernel_projector = Eigen::MatrixXd::Zero(form.rows(), form.cols());
    for (auto& e : numeric_eigenspaces(-(c.jz * c.jz), form)) {
        if (e.value == 0) {
            c.kernel_projector = std::move(e.projector);
            continue;
        }
        c.a.push_back(std::sqrt(e.value));
        c.projectors.push_back(std::move(e.projector));
    }
    return c;
}

NumericCenter NumericCenter::from_exact(const ResonantCenter& rc) {
    NumericCenter c;
    for (const auto& v : rc.z()) c.z.push_back(v.get_d());
    c.jz = to_eigen(rc.model().j(rc.z()));
    c.kernel_projector = to_eigen(rc.spectrum().kernel_projector);
    for (const auto& b : rc.spectrum().blocks) {
        c.a.push_back(std::sqrt(b.a_sq.get_d()));
        c.projectors.push_back(to_eigen(b.projector));
    }
    return c;
}

Eigen::VectorXd NumericCenter::j_inverse(const Eigen::VectorXd& x) const {
    Eigen::VectorXd out = Eigen::VectorXd::Zero(x.size());
    for (std::size_t b = 0; b < a.size(); ++b) out -= jz * (projectors[b] * x) / (a[b] * a[b]);
    return out;
}

}  // namespace detail

GeodesicPoint geodesic_eval(const NumericModel& n, const NumericInit& xi, double t) {
    const auto center = detail::NumericCenter::from_numeric(n, xi.z);
    const std::size_t nb = center.a.size();
    const double alpha = xi.alpha;
    const Eigen::MatrixXd jm = alpha * center.jz;  // j(alpha Z)
    const Eigen::VectorXd x = to_eigen_vec(xi.x);
    const Eigen::VectorXd x0 = center.kernel_projector * x;

    // per block: X_b, rate A_b = |alpha| a_b, e^{tJ}, J^{-1}
    std::vector<Eigen::VectorXd> parts(nb);
    std::vector<double> rate(nb);
    for (std::size_t b = 0; b < nb; ++b) {
        parts[b] = center.projectors[b] * x;
        rate[b] = std::abs(alpha) * center.a[b];
    }
    auto expo = [&](std::size_t b, const Eigen::VectorXd& v) -> Eigen::VectorXd {
        return std::cos(rate[b] * t) * v + (std::sin(rate[b] * t) / rate[b]) * (jm * v);
    };
    auto jinv = [&](std::size_t b, const Eigen::VectorXd& v) -> Eigen::VectorXd { return -(jm * v) / (rate[b] * rate[b]); };
    auto br = [&](const Eigen::VectorXd& u, const Eigen::VectorXd& v) { return detail::bracket(n, u, v); };

    const auto q = static_cast<Eigen::Index>(n.u_dim());
    const auto k = static_cast<Eigen::Index>(n.z_dim());
    Eigen::VectorXd xt = t * x0;
    Eigen::VectorXd jinv_x1 = Eigen::VectorXd::Zero(q), e_jinv_x1 = Eigen::VectorXd::Zero(q);
    Eigen::VectorXd sum_plus = Eigen::VectorXd::Zero(q), sum_minus2 = Eigen::VectorXd::Zero(q);
    Eigen::VectorXd self = Eigen::VectorXd::Zero(k);
    for (std::size_t b = 0; b < nb; ++b) {
        const Eigen::VectorXd ji = jinv(b, parts[b]);
        const Eigen::VectorXd eji = expo(b, ji);
        xt += eji - ji;
        jinv_x1 += ji;
        e_jinv_x1 += eji;
        sum_plus += eji + ji;
        // (Id - e^{tJ}) J^{-2} X_b with J^{-2} = -1 / rate^2
        sum_minus2 += -(parts[b] - expo(b, parts[b])) / (rate[b] * rate[b]);
        self += br(ji, parts[b]);
    }
    const Eigen::VectorXd z0 = alpha * to_eigen_vec(xi.z);
    const Eigen::VectorXd z1 = z0 + 0.5 * br(x0, sum_plus) + 0.5 * self;
    Eigen::VectorXd z2 = br(x0, sum_minus2) + 0.5 * br(e_jinv_x1, jinv_x1);
    for (std::size_t l = 0; l < nb; ++l) {
        for (std::size_t m = 0; m < nb; ++m) {
            if (l == m) continue;
            const double c = 1 / (rate[m] * rate[m] - rate[l] * rate[l]);
            const Eigen::VectorXd jl = jm * parts[l];
            const Eigen::VectorXd jim = jinv(m, parts[m]);
            const Eigen::VectorXd moving = br(expo(l, jl), expo(m, jim)) - br(expo(l, parts[l]), expo(m, parts[m]));
            const Eigen::VectorXd still = br(jl, jim) - br(parts[l], parts[m]);
            z2 += 0.5 * c * (still - moving);
        }
    }
    GeodesicPoint out;
    out.x = to_dvec(xt);
    out.z1 = to_dvec(z1);
    out.z2 = to_dvec(z2);
    out.z = to_dvec(t * z1 + z2);
    return out;
}

OdePoint geodesic_rk4(const NumericModel& n, const NumericInit& xi, double t, double step) {
    const std::size_t q = n.u_dim();
    const std::size_t k = n.z_dim();
    DVec z0(k);
    for (std::size_t c = 0; c < k; ++c) z0[c] = xi.alpha * xi.z[c];
    const DVec jm = n.j_matrix(z0);

    // state = (X, V, Zc), X' = V, V' = J V, Zc' = alpha Z - [V, X] / 2
    const std::size_t dim = 2 * q + k;
    auto deriv = [&](const DVec& s, DVec& d) {
        const std::span<const double> xs(s.data(), q), vs(s.data() + q, q);
        std::copy(vs.begin(), vs.end(), d.begin());
        kernels::gemv(jm, q, q, vs, std::span<double>(d.data() + q, q));
        const DVec br = n.bracket(vs, xs);
        for (std::size_t c = 0; c < k; ++c) d[2 * q + c] = z0[c] - 0.5 * br[c];
    };
    DVec s(dim, 0.0);
    std::copy(xi.x.begin(), xi.x.end(), s.begin() + static_cast<std::ptrdiff_t>(q));
    const auto steps = static_cast<std::size_t>(std::ceil(std::abs(t) / step));
    const double h = steps == 0 ? 0 : t / static_cast<double>(steps);
    DVec k1(dim), k2(dim), k3(dim), k4(dim), tmp(dim);
    for (std::size_t i = 0; i < steps; ++i) {
        deriv(s, k1);
        tmp = s;
        kernels::axpy(h / 2, k1, tmp);
        deriv(tmp, k2);
        tmp = s;
        kernels::axpy(h / 2, k2, tmp);
        deriv(tmp, k3);
        tmp = s;
        kernels::axpy(h, k3, tmp);
        deriv(tmp, k4);
        kernels::axpy(h / 6, k1, s);
        kernels::axpy(h / 3, k2, s);
        kernels::axpy(h / 3, k3, s);
        kernels::axpy(h / 6, k4, s);
    }
    OdePoint out;
    out.x.assign(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(q));
    out.z.assign(s.begin() + static_cast<std::ptrdiff_t>(2 * q), s.end());
    return out;
}

NumericHit numeric_first_hit(const NumericModel& n, const NumericInit& xi) {
    const auto center = detail::NumericCenter::from_numeric(n, xi.z);
    if (center.a.empty()) throw Error(ErrorCode::ZeroMap, "j(Z) vanishes");
    const Eigen::VectorXd x = to_eigen_vec(xi.x);
    const Eigen::VectorXd x0 = center.kernel_projector * x;
    if (xi.alpha == 0 || x0.norm() <= 1e-12 * std::max(1.0, x.norm())) throw Error(ErrorCode::NotInNZ, "X has no kernel component or alpha is zero");
    const auto period = resonant_period(center.a);
    if (!period) throw Error(ErrorCode::NotResonant, "eigenvalue ratios of j(Z) are irrational");
    const double omega = 2 * std::numbers::pi * *period / std::abs(xi.alpha);

    Eigen::VectorXd zc = xi.alpha * to_eigen_vec(xi.z) + detail::bracket(n, x0, center.j_inverse(x)) / xi.alpha;
    for (const auto& p : center.projectors) {
        const Eigen::VectorXd part = p * x;
        zc += detail::bracket(n, center.j_inverse(part), part) / (2 * xi.alpha);
    }
    NumericHit hit;
    hit.omega = omega;
    hit.u = to_dvec(omega * x0);
    hit.z = to_dvec(omega * zc);
    return hit;
}

}  // namespace nilgeo
