#pragma once
// Double-precision inner loops of the numeric layer, with scalar, AVX2 and NEON
// variants selected at runtime. NILGEO_SIMD=scalar forces the portable path.

#include <cstddef>
#include <span>

namespace nilgeo::kernels {

enum class Isa { Scalar, Avx2, Neon };

const char* isa_name(Isa isa);

struct Table {
    double (*dot)(const double* a, const double* b, std::size_t n);
    // y += a x
    void (*axpy)(double a, const double* x, double* y, std::size_t n);
    // y = M x, M row-major rows x cols
    void (*gemv)(const double* m, std::size_t rows, std::size_t cols, const double* x, double* y);
    // x^T M y, M row-major rows x cols
    double (*bilinear)(const double* x, const double* m, std::size_t rows, std::size_t cols, const double* y);
};

bool supported(Isa isa);
// Throws PreconditionViolated for an ISA this build or CPU lacks.
const Table& table(Isa isa);
Isa active_isa();
const Table& active();

double dot(std::span<const double> a, std::span<const double> b);
void axpy(double a, std::span<const double> x, std::span<double> y);
void gemv(std::span<const double> m, std::size_t rows, std::size_t cols, std::span<const double> x, std::span<double> y);
double bilinear(std::span<const double> x, std::span<const double> m, std::size_t rows, std::size_t cols, std::span<const double> y);

namespace detail {
const Table& scalar_table();
const Table* avx2_table();  // nullptr when not compiled in
const Table* neon_table();
}  // namespace detail

}  // namespace nilgeo::kernels
