#pragma once

// Exact integer and rational scalars.

#include "errors.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cowaist
{

using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>, boost::multiprecision::et_off>;
using Rational =
    boost::multiprecision::number<boost::multiprecision::cpp_rational_backend, boost::multiprecision::et_off>;

inline BigInt numerator_of(const Rational &q) { return boost::multiprecision::numerator(q); }
inline BigInt denominator_of(const Rational &q) { return boost::multiprecision::denominator(q); }

inline bool is_zero(const Rational &q) { return q.is_zero(); }

/// Canonical text: "p" for integers, "p/q" otherwise, with the sign on p.
inline std::string to_string(const Rational &q)
{
    const BigInt d = denominator_of(q);
    if (d == 1) {
        return numerator_of(q).str();
    }
    return numerator_of(q).str() + "/" + d.str();
}

inline std::string to_string(const BigInt &z) { return z.str(); }

namespace detail
{

inline BigInt parse_integer(std::string_view s, std::string_view whole)
{
    std::size_t i = 0;
    bool neg = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
        neg = s[i] == '-';
        ++i;
    }
    if (i == s.size()) {
        throw usage_error("malformed rational '" + std::string(whole) + "'");
    }
    BigInt v = 0;
    for (; i < s.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) {
            throw usage_error("malformed rational '" + std::string(whole) + "' at position " +
                              std::to_string(i));
        }
        v = v * 10 + (s[i] - '0');
    }
    return neg ? BigInt(-v) : v;
}

} // namespace detail

/// Inverse of to_string; also accepts a leading '+'.
inline Rational parse_rational(std::string_view s)
{
    const auto slash = s.find('/');
    if (slash == std::string_view::npos) {
        return Rational(detail::parse_integer(s, s));
    }
    const BigInt num = detail::parse_integer(s.substr(0, slash), s);
    const BigInt den = detail::parse_integer(s.substr(slash + 1), s);
    if (den <= 0) {
        throw usage_error("rational '" + std::string(s) + "' needs a positive denominator");
    }
    return Rational(num, den);
}

inline BigInt factorial(unsigned n)
{
    BigInt r = 1;
    for (unsigned i = 2; i <= n; ++i) {
        r *= i;
    }
    return r;
}

inline BigInt binomial(const BigInt &n, unsigned k)
{
    if (k == 0) {
        return 1;
    }
    if (n < k) {
        return 0;
    }
    BigInt r = 1;
    for (unsigned i = 0; i < k; ++i) {
        r = r * (n - i) / (i + 1);
    }
    return r;
}

inline BigInt ipow(const BigInt &base, unsigned e)
{
    BigInt r = 1;
    for (unsigned i = 0; i < e; ++i) {
        r *= base;
    }
    return r;
}

} // namespace cowaist
