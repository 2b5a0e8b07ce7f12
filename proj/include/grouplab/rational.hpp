#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace grouplab {

/// Exact rational number on 64-bit numerator/denominator.
/// Always stored reduced with den > 0. Intermediate products go through
/// 128-bit arithmetic; a result that does not fit 64 bits throws.
struct Rat {
    long long num = 0;
    long long den = 1;

    Rat() = default;
    Rat(long long n) : num(n), den(1) {}
    Rat(long long n, long long d) : num(n), den(d) { normalize(); }

    void normalize() {
        if (den == 0) throw std::invalid_argument("Rat: zero denominator");
        if (den < 0) { num = -num; den = -den; }
        long long g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
    }

    bool is_zero() const { return num == 0; }
    bool is_integer() const { return den == 1; }

    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

    std::string str() const {
        if (den == 1) return std::to_string(num);
        return std::to_string(num) + "/" + std::to_string(den);
    }
};

namespace detail {
inline long long narrow128(__int128 v, const char* what) {
    if (v > static_cast<__int128>(INT64_MAX) || v < static_cast<__int128>(INT64_MIN))
        throw std::overflow_error(std::string("Rat overflow in ") + what);
    return static_cast<long long>(v);
}
}  // namespace detail

inline Rat make_reduced(__int128 n, __int128 d, const char* what) {
    if (d == 0) throw std::invalid_argument("Rat: zero denominator");
    if (d < 0) { n = -n; d = -d; }
    __int128 a = n < 0 ? -n : n, b = d;
    while (b) { __int128 t = a % b; a = b; b = t; }
    if (a > 1) { n /= a; d /= a; }
    Rat r;
    r.num = detail::narrow128(n, what);
    r.den = detail::narrow128(d, what);
    return r;
}

inline Rat operator+(const Rat& a, const Rat& b) {
    return make_reduced((__int128)a.num * b.den + (__int128)b.num * a.den,
                        (__int128)a.den * b.den, "+");
}
inline Rat operator-(const Rat& a, const Rat& b) {
    return make_reduced((__int128)a.num * b.den - (__int128)b.num * a.den,
                        (__int128)a.den * b.den, "-");
}
inline Rat operator-(const Rat& a) { Rat r; r.num = -a.num; r.den = a.den; return r; }
inline Rat operator*(const Rat& a, const Rat& b) {
    return make_reduced((__int128)a.num * b.num, (__int128)a.den * b.den, "*");
}
inline Rat operator/(const Rat& a, const Rat& b) {
    if (b.num == 0) throw std::domain_error("Rat: division by zero");
    return make_reduced((__int128)a.num * b.den, (__int128)a.den * b.num, "/");
}
inline Rat& operator+=(Rat& a, const Rat& b) { a = a + b; return a; }
inline Rat& operator-=(Rat& a, const Rat& b) { a = a - b; return a; }
inline Rat& operator*=(Rat& a, const Rat& b) { a = a * b; return a; }

inline bool operator==(const Rat& a, const Rat& b) { return a.num == b.num && a.den == b.den; }
inline bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
inline bool operator<(const Rat& a, const Rat& b) {
    return (__int128)a.num * b.den < (__int128)b.num * a.den;
}
inline bool operator<=(const Rat& a, const Rat& b) { return a == b || a < b; }
inline bool operator>(const Rat& a, const Rat& b) { return b < a; }
inline bool operator>=(const Rat& a, const Rat& b) { return b <= a; }

inline Rat abs(const Rat& a) { return a.num < 0 ? -a : a; }

/// Reduce into [0,1): the fractional-part representative used for torus coordinates.
inline Rat mod1(const Rat& a) {
    long long q = a.num / a.den;
    long long r = a.num % a.den;
    if (r < 0) r += a.den;
    (void)q;
    Rat out;
    out.num = r;
    out.den = a.den;
    out.normalize();
    return out;
}

/// Representative of a in [-1/2, 1/2), for torus distance computations.
inline Rat centered_mod1(const Rat& a) {
    Rat m = mod1(a);
    if (2 * m.num >= m.den) return m - Rat(1);
    return m;
}

/// Parse "p/q" or "p". Throws on malformed input.
inline Rat parse_rat(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(std::stoll(s));
        return Rat(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
    } catch (const std::exception&) {
        throw std::invalid_argument("parse_rat: malformed rational '" + s + "'");
    }
}

}  // namespace grouplab
