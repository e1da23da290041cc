#include "copmin/rational.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace copmin {

std::string to_string(const Rational& r) {
  if (mp::denominator(r) == 1) {
    return mp::numerator(r).str();
  }
  return mp::numerator(r).str() + "/" + mp::denominator(r).str();
}

namespace {

bool is_integer_literal(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    s.remove_prefix(1);
  }
  if (s.empty()) {
    return false;
  }
  for (char c : s) {
    if (c < '0' || c > '9') {
      return false;
    }
  }
  return true;
}

Integer parse_integer(std::string_view s) {
  if (!is_integer_literal(s)) {
    throw std::invalid_argument("not an integer: '" + std::string(s) + "'");
  }
  if (s.front() == '+') {
    s.remove_prefix(1);
  }
  return Integer(std::string(s));
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    return Rational(parse_integer(text));
  }
  const Integer num = parse_integer(text.substr(0, slash));
  const std::string_view den_text = text.substr(slash + 1);
  if (!den_text.empty() && (den_text.front() == '-' || den_text.front() == '+')) {
    throw std::invalid_argument("signed denominator: '" + std::string(text) + "'");
  }
  const Integer den = parse_integer(den_text);
  if (den == 0) {
    throw std::invalid_argument("zero denominator: '" + std::string(text) + "'");
  }
  return Rational(num, den);
}

Integer floor_of(const Rational& r) {
  const Integer& n = mp::numerator(r);
  const Integer& d = mp::denominator(r);
  Integer q = n / d;  // truncates toward zero
  if (n < 0 && q * d != n) {
    q -= 1;
  }
  return q;
}

Integer ceil_of(const Rational& r) {
  return -floor_of(-r);
}

Integer isqrt_floor(const Rational& r) {
  if (r < 0) {
    throw std::domain_error("isqrt_floor of negative rational");
  }
  // floor(sqrt(x)) == floor(sqrt(floor(x))) for x >= 0.
  return mp::sqrt(floor_of(r));
}

std::optional<IntRange> square_interval(const Rational& coeff, const Rational& shift,
                                        const Rational& budget) {
  if (coeff <= 0) {
    throw std::domain_error("square_interval needs a positive coefficient");
  }
  if (budget < 0) {
    return std::nullopt;
  }
  const Integer radius = isqrt_floor(budget / coeff);
  // m + shift <= sqrt(budget/coeff) is monotone in m; walk down from an upper guess.
  const auto below_right = [&](const Integer& m) {
    const Rational t = Rational(m) + shift;
    return t <= 0 || coeff * t * t <= budget;
  };
  const auto above_left = [&](const Integer& m) {
    const Rational t = Rational(m) + shift;
    return t >= 0 || coeff * t * t <= budget;
  };
  Integer hi = floor_of(-shift) + radius + 1;
  while (!below_right(hi)) {
    hi -= 1;
  }
  Integer lo = ceil_of(-shift) - radius - 1;
  while (!above_left(lo)) {
    lo += 1;
  }
  if (lo > hi) {
    return std::nullopt;
  }
  return IntRange{lo, hi};
}

Rational rationalize(double x, std::int64_t max_denominator) {
  if (!std::isfinite(x)) {
    throw std::domain_error("cannot rationalize a non-finite value");
  }
  if (max_denominator < 1) {
    throw std::invalid_argument("max_denominator must be positive");
  }
  const Rational exact(x);
  if (mp::denominator(exact) <= max_denominator) {
    return exact;
  }
  // Continued-fraction convergents and the best semiconvergent within the cap.
  Integer p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  Integer n = mp::numerator(exact), d = mp::denominator(exact);
  const Integer cap = max_denominator;
  while (true) {
    const Integer a = floor_of(Rational(n, d));
    const Integer q2 = q0 + a * q1;
    if (q2 > cap) {
      break;
    }
    const Integer p2 = p0 + a * p1;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    const Integer rem = n - a * d;
    n = d;
    d = rem;
    if (d == 0) {
      break;
    }
  }
  const Integer k = (cap - q0) / q1;
  const Rational bound1(p0 + k * p1, q0 + k * q1);
  const Rational bound2(p1, q1);
  return mp::abs(bound2 - exact) <= mp::abs(bound1 - exact) ? bound2 : bound1;
}

double to_double(const Rational& r) {
  return r.convert_to<double>();
}

std::int64_t to_int64(const Integer& z) {
  if (z > std::numeric_limits<std::int64_t>::max() ||
      z < std::numeric_limits<std::int64_t>::min()) {
    throw std::overflow_error("integer does not fit in 64 bits: " + z.str());
  }
  return z.convert_to<std::int64_t>();
}

}  // namespace copmin
