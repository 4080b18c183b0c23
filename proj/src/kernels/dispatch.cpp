#include "nilgeo/error.hpp"
#include "nilgeo/kernels.hpp"

#include <cstdlib>
#include <string>
#include <string_view>

namespace nilgeo::kernels {

namespace detail {
#if !defined(NILGEO_HAVE_AVX2)
const Table* avx2_table() { return nullptr; }
#endif
#if !defined(NILGEO_HAVE_NEON)
const Table* neon_table() { return nullptr; }
#endif
}  // namespace detail

const char* isa_name(Isa isa) {
    switch (isa) {
        case Isa::Scalar: return "scalar";
        case Isa::Avx2: return "avx2";
        case Isa::Neon: return "neon";
    }
    return "unknown";
}

bool supported(Isa isa) {
    switch (isa) {
        case Isa::Scalar: return true;
        case Isa::Avx2:
#if defined(NILGEO_HAVE_AVX2)
            return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
            return false;
#endif
        case Isa::Neon: return detail::neon_table() != nullptr;
    }
    return false;
}

const Table& table(Isa isa) {
    if (!supported(isa)) throw Error(ErrorCode::PreconditionViolated, std::string("kernel set not available: ") + isa_name(isa));
    switch (isa) {
        case Isa::Avx2: return *detail::avx2_table();
        case Isa::Neon: return *detail::neon_table();
        case Isa::Scalar: break;
    }
    return detail::scalar_table();
}

Isa active_isa() {
    static const Isa chosen = [] {
        if (const char* env = std::getenv("NILGEO_SIMD"); env && std::string_view(env) == "scalar") return Isa::Scalar;
        if (supported(Isa::Avx2)) return Isa::Avx2;
        if (supported(Isa::Neon)) return Isa::Neon;
        return Isa::Scalar;
    }();
    return chosen;
}

const Table& active() {
    static const Table& t = table(active_isa());
    return t;
}

namespace {
void require(bool ok) {
    if (!ok) throw Error(ErrorCode::PreconditionViolated, "kernel operand sizes disagree");
}
}  // namespace

double dot(std::span<const double> a, std::span<const double> b) {
    require(a.size() == b.size());
    return active().dot(a.data(), b.data(), a.size());
}

void axpy(double a, std::span<const double> x, std::span<double> y) {
    require(x.size() == y.size());
    active().axpy(a, x.data(), y.data(), x.size());
}

void gemv(std::span<const double> m, std::size_t rows, std::size_t cols, std::span<const double> x, std::span<double> y) {
    require(m.size() == rows * cols && x.size() == cols && y.size() == rows);
    active().gemv(m.data(), rows, cols, x.data(), y.data());
}

double bilinear(std::span<const double> x, std::span<const double> m, std::size_t rows, std::size_t cols, std::span<const double> y) {
    require(m.size() == rows * cols && x.size() == rows && y.size() == cols);
    return active().bilinear(x.data(), m.data(), rows, cols, y.data());
}

}  // namespace nilgeo::kernels
