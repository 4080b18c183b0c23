#include "nilgeo/kernels.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

using namespace nilgeo::kernels;

namespace {

std::vector<double> random_vec(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> d(-1, 1);
    std::vector<double> v(n);
    for (auto& x : v) x = d(rng);
    return v;
}

bool close(double a, double b, double scale) { return std::abs(a - b) <= 1e-13 * std::max(1.0, scale); }

void compare_tables(const Table& ref, const Table& fast) {
    std::mt19937_64 rng(42);
    for (std::size_t n = 0; n <= 67; ++n) {
        const auto a = random_vec(rng, n);
        const auto b = random_vec(rng, n);
        CHECK(close(ref.dot(a.data(), b.data(), n), fast.dot(a.data(), b.data(), n), static_cast<double>(n)));

        auto y1 = random_vec(rng, n);
        auto y2 = y1;
        ref.axpy(0.37, a.data(), y1.data(), n);
        fast.axpy(0.37, a.data(), y2.data(), n);
        for (std::size_t i = 0; i < n; ++i) CHECK(close(y1[i], y2[i], 1));

        const std::size_t rows = (n * 7) % 13 + 1;
        const auto m = random_vec(rng, rows * n);
        std::vector<double> g1(rows), g2(rows);
        ref.gemv(m.data(), rows, n, b.data(), g1.data());
        fast.gemv(m.data(), rows, n, b.data(), g2.data());
        for (std::size_t r = 0; r < rows; ++r) CHECK(close(g1[r], g2[r], static_cast<double>(n)));

        auto x = random_vec(rng, rows);
        x[0] = 0;
        CHECK(close(ref.bilinear(x.data(), m.data(), rows, n, b.data()), fast.bilinear(x.data(), m.data(), rows, n, b.data()),
                    static_cast<double>(rows * n)));
    }
}

}  // namespace

TEST_CASE("scalar kernels on small exact inputs") {
    const Table& t = table(Isa::Scalar);
    const double a[] = {1, 2, 3};
    const double b[] = {4, 5, 6};
    CHECK(t.dot(a, b, 3) == 32);
    double y[] = {1, 1, 1};
    t.axpy(2, a, y, 3);
    CHECK(y[2] == 7);
    const double m[] = {1, 0, 2, 0, 1, 0};  // 2 x 3
    double out[2];
    t.gemv(m, 2, 3, a, out);
    CHECK(out[0] == 7);
    CHECK(out[1] == 2);
    const double x[] = {1, -1};
    CHECK(t.bilinear(x, m, 2, 3, a) == 5);
}

TEST_CASE("every available SIMD kernel set matches the scalar one") {
    const Table& ref = table(Isa::Scalar);
    for (Isa isa : {Isa::Avx2, Isa::Neon}) {
        if (!supported(isa)) continue;
        INFO(isa_name(isa));
        compare_tables(ref, table(isa));
    }
    CHECK(supported(active_isa()));
}

TEST_CASE("span wrappers check sizes") {
    const std::vector<double> a{1, 2}, b{1, 2, 3};
    CHECK_THROWS(dot(a, b));
    CHECK(dot(b, b) == 14);
}
