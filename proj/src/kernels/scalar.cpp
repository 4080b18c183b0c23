#include "nilgeo/kernels.hpp"

namespace nilgeo::kernels::detail {

namespace {

double dot_scalar(const double* a, const double* b, std::size_t n) {
    double s = 0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
}

void axpy_scalar(double a, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void gemv_scalar(const double* m, std::size_t rows, std::size_t cols, const double* x, double* y) {
    for (std::size_t r = 0; r < rows; ++r) y[r] = dot_scalar(m + r * cols, x, cols);
}

double bilinear_scalar(const double* x, const double* m, std::size_t rows, std::size_t cols, const double* y) {
    double s = 0;
    for (std::size_t r = 0; r < rows; ++r) {
        if (x[r] != 0) s += x[r] * dot_scalar(m + r * cols, y, cols);
    }
    return s;
}

}  // namespace

const Table& scalar_table() {
    static const Table t{dot_scalar, axpy_scalar, gemv_scalar, bilinear_scalar};
    return t;
}

}  // namespace nilgeo::kernels::detail
