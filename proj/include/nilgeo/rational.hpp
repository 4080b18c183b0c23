#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace nilgeo {

using Rational = mpq_class;
using QVec = std::vector<Rational>;
using IVec = std::vector<std::int64_t>;

// Canonical "p/q" with q > 0 and gcd(p, q) = 1; integers keep the "/1".
std::string to_string(const Rational& q);
// Accepts "p", "p/q" and surrounding whitespace.
Rational parse_rational(std::string_view text);

// Canonicalized num/den; den must be nonzero.
Rational frac(std::int64_t num, std::int64_t den);

bool is_integer(const Rational& q);
// Nonnegative rational square root when it exists.
std::optional<Rational> rational_sqrt(const Rational& q);
std::int64_t to_int64(const Rational& q);
double to_double(const Rational& q);

QVec to_qvec(const IVec& v);
// Throws PreconditionViolated if some entry is not an integer.
IVec to_ivec(const QVec& v);

bool is_zero(const QVec& v);
QVec operator+(const QVec& a, const QVec& b);
QVec operator-(const QVec& a, const QVec& b);
QVec operator-(const QVec& a);
QVec operator*(const Rational& s, const QVec& v);
Rational dot(const QVec& a, const QVec& b);

IVec operator+(const IVec& a, const IVec& b);
IVec operator-(const IVec& a, const IVec& b);
IVec operator*(std::int64_t s, const IVec& v);

struct IVecHash {
    std::size_t operator()(const IVec& v) const noexcept {
        std::size_t h = 0xcbf29ce484222325ull;
        for (auto x : v) {
            h ^= std::hash<std::int64_t>{}(x) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        }
        return h;
    }
};

struct QVecHash {
    std::size_t operator()(const QVec& v) const noexcept;
};

}  // namespace nilgeo
