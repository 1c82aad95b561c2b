#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

namespace hermeis {

// Exact rational arithmetic for sample-timing quantities. Doubles convert
// exactly (every finite double is a dyadic rational), so timing ratios carry
// no float drift.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline Rational rational_from_double(double v) {
    if (!std::isfinite(v)) throw std::invalid_argument("rational_from_double: non-finite value");
    return Rational(v);
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

// floor for non-negative rationals (integer division truncates toward zero)
inline BigInt floor_nonneg(const Rational& r) {
    return numerator(r) / denominator(r);
}

inline BigInt ceil_nonneg(const Rational& r) {
    BigInt q = numerator(r) / denominator(r);
    if (q * denominator(r) != numerator(r)) ++q;
    return q;
}

inline std::int64_t to_int64_checked(const BigInt& v, const char* what) {
    if (v < std::numeric_limits<std::int64_t>::min() || v > std::numeric_limits<std::int64_t>::max())
        throw std::overflow_error(std::string(what) + ": value exceeds 64-bit range");
    return v.convert_to<std::int64_t>();
}

inline unsigned __int128 to_u128_checked(const BigInt& v, const char* what) {
    static const BigInt limit = BigInt(1) << 127;
    if (v < 0 || v >= limit)
        throw std::overflow_error(std::string(what) + ": value exceeds 128-bit range");
    const BigInt hi_part = v >> 64;
    const BigInt lo_part = v - (hi_part << 64);
    unsigned __int128 hi = hi_part.convert_to<std::uint64_t>();
    unsigned __int128 lo = lo_part.convert_to<std::uint64_t>();
    return (hi << 64) | lo;
}

}  // namespace hermeis
