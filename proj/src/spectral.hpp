#pragma once
// Eigenspace helpers shared by the exact and numeric geodesic code.

#include "nilgeo/geodesic.hpp"

#include <Eigen/Dense>

#include <optional>
#include <vector>

namespace nilgeo::detail {

struct NumericEigenspace {
    double value = 0;
    Eigen::MatrixXd projector;  // orthogonal for the form
    std::size_t dim = 0;
};

// Eigenspaces of m, symmetric for the positive definite form, clustered at relative tolerance 1e-7.
std::vector<NumericEigenspace> numeric_eigenspaces(const Eigen::MatrixXd& m, const Eigen::MatrixXd& form);

struct ExactEigenspace {
    Rational value;
    std::vector<QVec> basis;
};

// Same decomposition in exact arithmetic; empty when an eigenvalue is irrational.
std::optional<std::vector<ExactEigenspace>> exact_eigenspaces(const QMatrix& m, const QMatrix& form);

// Orthogonal projector onto span(basis) for the form.
QMatrix orthogonal_projector(const std::vector<QVec>& basis, const QMatrix& form);

// Spectral data of j(Z) in double precision.
struct NumericCenter {
    DVec z;
    Eigen::MatrixXd jz;
    Eigen::MatrixXd kernel_projector;
    std::vector<double> a;                  // increasing
    std::vector<Eigen::MatrixXd> projectors;

    static NumericCenter from_numeric(const NumericModel& n, std::span<const double> z);
    static NumericCenter from_exact(const ResonantCenter& rc);
    // j(Z)^{-1} on the complement of the kernel
    Eigen::VectorXd j_inverse(const Eigen::VectorXd& x) const;
};

Eigen::VectorXd bracket(const NumericModel& n, const Eigen::VectorXd& x, const Eigen::VectorXd& y);

Eigen::MatrixXd to_eigen(const QMatrix& m);
Eigen::MatrixXd row_major_to_eigen(const DVec& m, std::size_t rows, std::size_t cols);

}  // namespace nilgeo::detail
