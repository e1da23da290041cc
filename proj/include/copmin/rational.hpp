#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>

namespace copmin {

namespace mp = boost::multiprecision;

/// Arbitrary-precision integer.
using Integer = mp::number<mp::gmp_int, mp::et_off>;

/// Exact rational number, always held in lowest terms with a positive denominator.
using Rational = mp::number<mp::gmp_rational, mp::et_off>;

/// Formats `r` as `p/q`, or as a bare integer when the denominator is one.
std::string to_string(const Rational& r);

/// Parses an integer or a `p/q` fraction (optionally signed). Throws
/// std::invalid_argument on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

Integer floor_of(const Rational& r);
Integer ceil_of(const Rational& r);

/// floor(sqrt(r)) for r >= 0, computed with integer square roots only.
Integer isqrt_floor(const Rational& r);

/// Closed integer interval [lo, hi]; empty when lo > hi.
struct IntRange {
  Integer lo;
  Integer hi;

  bool empty() const { return lo > hi; }
};

/// All integers m with coeff * (m + shift)^2 <= budget, for coeff > 0.
/// Returns nullopt when no integer qualifies.
std::optional<IntRange> square_interval(const Rational& coeff, const Rational& shift,
                                        const Rational& budget);

/// Closest rational to `x` with denominator at most `max_denominator`
/// (continued-fraction best approximation).
Rational rationalize(double x, std::int64_t max_denominator);

double to_double(const Rational& r);

std::int64_t to_int64(const Integer& z);

}  // namespace copmin
