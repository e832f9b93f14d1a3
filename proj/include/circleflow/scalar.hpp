#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <charconv>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace circleflow {

/// Exact rational scalar used whenever inputs are rational and the
/// Laplacian exponent is an integer. All identity checks that can be
/// exact are run over this type.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Shortest round-trip decimal representation. Every float that ends up
/// in a file goes through here so that repeated runs are byte-identical.
inline std::string fmt_double(double x) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

inline bool is_integer(const Rational& q) { return denominator(q) == 1; }

inline long long rational_to_ll(const Rational& q) {
    if (!is_integer(q)) throw std::invalid_argument("rational_to_ll: not an integer");
    return numerator(q).convert_to<long long>();
}

/// base^e for integer e, base != 0 when e < 0.
inline Rational rational_ipow(const Rational& base, long long e) {
    if (e < 0) {
        if (base == 0) throw std::domain_error("rational_ipow: 0 to negative power");
        return Rational(1) / rational_ipow(base, -e);
    }
    Rational acc(1), b = base;
    while (e > 0) {
        if (e & 1) acc *= b;
        b *= b;
        e >>= 1;
    }
    return acc;
}

template <class S>
struct scalar_traits;

template <>
struct scalar_traits<double> {
    static constexpr bool is_exact = false;
    static double from_int(long long n) { return static_cast<double>(n); }
    static double to_double(double x) { return x; }
    static bool is_zero(double x) { return x == 0.0; }
    static double abs(double x) { return std::fabs(x); }
    /// base^expo for integer base >= 1 and arbitrary real exponent.
    static double pow_base(long long base, double expo) {
        return std::pow(static_cast<double>(base), expo);
    }
    static std::string str(double x) { return fmt_double(x); }
};

template <>
struct scalar_traits<Rational> {
    static constexpr bool is_exact = true;
    static Rational from_int(long long n) { return Rational(n); }
    static double to_double(const Rational& x) { return x.convert_to<double>(); }
    static bool is_zero(const Rational& x) { return x == 0; }
    static Rational abs(const Rational& x) { return x < 0 ? Rational(-x) : x; }
    /// Exact base^expo; the exponent must be an integer rational.
    static Rational pow_base(long long base, const Rational& expo) {
        if (!is_integer(expo))
            throw std::invalid_argument("exact mode requires an integer exponent");
        return rational_ipow(Rational(base), rational_to_ll(expo));
    }
    static std::string str(const Rational& x) { return x.str(); }
};

/// A real number carried in two forms at once: a double approximation and
/// the exact rational it was constructed from. Parsing "5/4", "1.25" and
/// "-3" all give exact values; construction from double uses the exact
/// binary expansion of the double.
struct RealParam {
    double value = 0.0;
    Rational exact{};

    RealParam() = default;
    RealParam(double v) : value(v), exact(v) {
        if (!std::isfinite(v)) throw std::invalid_argument("RealParam: non-finite value");
    }
    RealParam(const Rational& q) : value(scalar_traits<Rational>::to_double(q)), exact(q) {}
    RealParam(int v) : RealParam(static_cast<double>(v)) {}

    bool integral() const { return is_integer(exact); }
    std::string str_exact() const { return exact.str(); }

    static RealParam parse(std::string_view s);
};

namespace detail {

inline bool parse_ll(std::string_view s, long long& out) {
    if (s.empty()) return false;
    auto res = std::from_chars(s.data(), s.data() + s.size(), out);
    return res.ec == std::errc{} && res.ptr == s.data() + s.size();
}

// Exact rational from a decimal literal: sign, digits, optional fraction,
// optional exponent. Returns false if the string has any other shape.
inline bool parse_decimal_exact(std::string_view s, Rational& out) {
    std::size_t i = 0;
    bool neg = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) neg = (s[i++] == '-');
    std::string digits;
    long long exp10 = 0;
    bool any = false;
    while (i < s.size() && s[i] >= '0' && s[i] <= '9') {
        digits += s[i++];
        any = true;
    }
    if (i < s.size() && s[i] == '.') {
        ++i;
        while (i < s.size() && s[i] >= '0' && s[i] <= '9') {
            digits += s[i++];
            --exp10;
            any = true;
        }
    }
    if (!any) return false;
    if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
        long long e = 0;
        if (!parse_ll(s.substr(i + 1), e)) return false;
        exp10 += e;
        i = s.size();
    }
    if (i != s.size()) return false;
    // leading zeros would make the BigInt string constructor read octal
    std::size_t first = digits.find_first_not_of('0');
    BigInt mant = first == std::string::npos ? BigInt(0) : BigInt(digits.substr(first));
    Rational q(mant);
    if (exp10 > 0)
        q *= rational_ipow(Rational(10), exp10);
    else if (exp10 < 0)
        q /= rational_ipow(Rational(10), -exp10);
    out = neg ? Rational(-q) : q;
    return true;
}

}  // namespace detail

inline RealParam RealParam::parse(std::string_view s) {
    // strip surrounding whitespace
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    if (s.empty()) throw std::invalid_argument("empty number");

    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        long long num = 0, den = 0;
        if (!detail::parse_ll(s.substr(0, slash), num) ||
            !detail::parse_ll(s.substr(slash + 1), den) || den == 0)
            throw std::invalid_argument("bad rational literal: " + std::string(s));
        return RealParam(Rational(num) / Rational(den));
    }
    Rational q;
    if (!detail::parse_decimal_exact(s, q))
        throw std::invalid_argument("bad number literal: " + std::string(s));
    return RealParam(q);
}

}  // namespace circleflow
