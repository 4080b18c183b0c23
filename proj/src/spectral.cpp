#include "spectral.hpp"

#include <cmath>

namespace nilgeo::detail {

Eigen::MatrixXd to_eigen(const QMatrix& m) {
    Eigen::MatrixXd out(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = m(r, c).get_d();
    }
    return out;
}

Eigen::MatrixXd row_major_to_eigen(const DVec& m, std::size_t rows, std::size_t cols) {
    Eigen::MatrixXd out(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = m[r * cols + c];
    }
    return out;
}

std::vector<NumericEigenspace> numeric_eigenspaces(const Eigen::MatrixXd& m, const Eigen::MatrixXd& form) {
    Eigen::MatrixXd sym = form * m;
    sym = (sym + sym.transpose()).eval() / 2;
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym, form);
    const Eigen::VectorXd& values = solver.eigenvalues();
    const Eigen::MatrixXd& vecs = solver.eigenvectors();  // form-orthonormal columns
    const Eigen::Index n = values.size();
    double scale = 1;
    for (Eigen::Index i = 0; i < n; ++i) scale = std::max(scale, std::abs(values(i)));
    const double tol = 1e-7 * scale;

    std::vector<NumericEigenspace> out;
    Eigen::Index start = 0;
    while (start < n) {
        Eigen::Index end = start + 1;
        while (end < n && values(end) - values(end - 1) <= tol) ++end;
        NumericEigenspace e;
        e.dim = static_cast<std::size_t>(end - start);
        e.value = values.segment(start, end - start).mean();
        if (std::abs(e.value) <= tol) e.value = 0;
        const Eigen::MatrixXd v = vecs.middleCols(start, end - start);
        e.projector = v * v.transpose() * form;
        out.push_back(std::move(e));
        start = end;
    }
    return out;
}

std::optional<std::vector<ExactEigenspace>> exact_eigenspaces(const QMatrix& m, const QMatrix& form) {
    const auto numeric = numeric_eigenspaces(to_eigen(m), to_eigen(form));
    std::vector<ExactEigenspace> out;
    std::size_t total = 0;
    for (const auto& e : numeric) {
        Rational value = 0;
        if (e.value != 0) {
            const auto rec = continued_fraction_rational(e.value);
            if (!rec) return std::nullopt;
            value = *rec;
        }
        QMatrix shifted = m;
        for (std::size_t i = 0; i < m.rows(); ++i) shifted(i, i) -= value;
        auto basis = nullspace(shifted);
        if (basis.size() != e.dim) return std::nullopt;
        total += basis.size();
        out.push_back({value, std::move(basis)});
    }
    if (total != m.rows()) return std::nullopt;
    return out;
}

QMatrix orthogonal_projector(const std::vector<QVec>& basis, const QMatrix& form) {
    const std::size_t n = form.rows();
    if (basis.empty()) return QMatrix(n, n);
    const QMatrix b = QMatrix::from_columns(basis, n);
    const QMatrix bt_form = b.transpose() * form;
    return b * inverse(bt_form * b) * bt_form;
}

}  // namespace nilgeo::detail
