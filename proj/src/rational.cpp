#include "nilgeo/rational.hpp"

#include "nilgeo/error.hpp"

#include <cctype>

namespace nilgeo {

std::string to_string(const Rational& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational parse_rational(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    if (text.empty()) throw Error(ErrorCode::InvalidInput, "empty rational");
    auto valid_int = [](std::string_view s) {
        if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
        if (s.empty()) return false;
        for (char c : s) {
            if (!std::isdigit(static_cast<unsigned char>(c))) return false;
        }
        return true;
    };
    auto slash = text.find('/');
    std::string num(text.substr(0, slash));
    std::string den = slash == std::string_view::npos ? "1" : std::string(text.substr(slash + 1));
    if (!num.empty() && num.front() == '+') num.erase(0, 1);
    if (!valid_int(num) || !valid_int(den) || den.front() == '-' || den.front() == '+') {
        throw Error(ErrorCode::InvalidInput, "malformed rational '" + std::string(text) + "'");
    }
    mpz_class n(num, 10);
    mpz_class d(den, 10);
    if (d == 0) throw Error(ErrorCode::InvalidInput, "zero denominator in '" + std::string(text) + "'");
    Rational q(n, d);
    q.canonicalize();
    return q;
}

Rational frac(std::int64_t num, std::int64_t den) {
    if (den == 0) throw Error(ErrorCode::InvalidInput, "zero denominator");
    Rational q(static_cast<long>(num), static_cast<long>(den));
    q.canonicalize();
    return q;
}

bool is_integer(const Rational& q) { return q.get_den() == 1; }

std::optional<Rational> rational_sqrt(const Rational& q) {
    if (q < 0) return std::nullopt;
    const mpz_class rn = sqrt(q.get_num()), rd = sqrt(q.get_den());
    if (rn * rn != q.get_num() || rd * rd != q.get_den()) return std::nullopt;
    Rational root(rn, rd);
    root.canonicalize();
    return root;
}

std::int64_t to_int64(const Rational& q) {
    if (!is_integer(q) || !q.get_num().fits_slong_p()) {
        throw Error(ErrorCode::PreconditionViolated, "rational " + to_string(q) + " is not a machine integer");
    }
    return q.get_num().get_si();
}

double to_double(const Rational& q) { return q.get_d(); }

QVec to_qvec(const IVec& v) {
    QVec out;
    out.reserve(v.size());
    for (auto x : v) out.emplace_back(static_cast<long>(x));
    return out;
}

IVec to_ivec(const QVec& v) {
    IVec out;
    out.reserve(v.size());
    for (const auto& x : v) out.push_back(to_int64(x));
    return out;
}

bool is_zero(const QVec& v) {
    for (const auto& x : v) {
        if (x != 0) return false;
    }
    return true;
}

QVec operator+(const QVec& a, const QVec& b) {
    QVec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

QVec operator-(const QVec& a, const QVec& b) {
    QVec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

QVec operator-(const QVec& a) {
    QVec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = -a[i];
    return out;
}

QVec operator*(const Rational& s, const QVec& v) {
    QVec out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = s * v[i];
    return out;
}

Rational dot(const QVec& a, const QVec& b) {
    Rational acc = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] != 0 && b[i] != 0) acc += a[i] * b[i];
    }
    return acc;
}

IVec operator+(const IVec& a, const IVec& b) {
    IVec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

IVec operator-(const IVec& a, const IVec& b) {
    IVec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

IVec operator*(std::int64_t s, const IVec& v) {
    IVec out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = s * v[i];
    return out;
}

std::size_t QVecHash::operator()(const QVec& v) const noexcept {
    std::size_t h = 0x84222325cbf29ce4ull;
    for (const auto& x : v) {
        std::size_t e = std::hash<long>{}(mpz_get_si(x.get_num_mpz_t())) * 31 +
                        std::hash<long>{}(mpz_get_si(x.get_den_mpz_t()));
        h ^= e + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
}

}  // namespace nilgeo
