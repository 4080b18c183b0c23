#include "nilgeo/kernels.hpp"

#include <arm_neon.h>

namespace nilgeo::kernels::detail {

namespace {

double dot_neon(const double* a, const double* b, std::size_t n) {
    float64x2_t acc0 = vdupq_n_f64(0);
    float64x2_t acc1 = vdupq_n_f64(0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc0 = vfmaq_f64(acc0, vld1q_f64(a + i), vld1q_f64(b + i));
        acc1 = vfmaq_f64(acc1, vld1q_f64(a + i + 2), vld1q_f64(b + i + 2));
    }
    double s = vaddvq_f64(vaddq_f64(acc0, acc1));
    for (; i < n; ++i) s += a[i] * b[i];
    return s;
}

void axpy_neon(double a, const double* x, double* y, std::size_t n) {
    const float64x2_t av = vdupq_n_f64(a);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) vst1q_f64(y + i, vfmaq_f64(vld1q_f64(y + i), av, vld1q_f64(x + i)));
    for (; i < n; ++i) y[i] += a * x[i];
}

void gemv_neon(const double* m, std::size_t rows, std::size_t cols, const double* x, double* y) {
    for (std::size_t r = 0; r < rows; ++r) y[r] = dot_neon(m + r * cols, x, cols);
}

double bilinear_neon(const double* x, const double* m, std::size_t rows, std::size_t cols, const double* y) {
    double s = 0;
    for (std::size_t r = 0; r < rows; ++r) {
        if (x[r] != 0) s += x[r] * dot_neon(m + r * cols, y, cols);
    }
    return s;
}

}  // namespace

const Table* neon_table() {
    static const Table t{dot_neon, axpy_neon, gemv_neon, bilinear_neon};
    return &t;
}

}  // namespace nilgeo::kernels::detail
