#pragma once

#include <algorithm>
#include <initializer_list>
#include <random>
#include <string>
#include <vector>

#include "copmin/matrix.hpp"

namespace copmin::testing {

inline RationalMatrix mat(std::initializer_list<std::initializer_list<const char*>> rows) {
  const auto n = static_cast<Index>(rows.size());
  RationalMatrix q(n, n);
  Index i = 0;
  for (const auto& row : rows) {
    Index j = 0;
    for (const char* v : row) q(i, j++) = parse_rational(v);
    ++i;
  }
  return q;
}

inline RationalMatrix int_mat(std::initializer_list<std::initializer_list<long>> rows) {
  const auto n = static_cast<Index>(rows.size());
  RationalMatrix q(n, n);
  Index i = 0;
  for (const auto& row : rows) {
    Index j = 0;
    for (long v : row) q(i, j++) = Rational(v);
    ++i;
  }
  return q;
}

inline RationalVector vec(std::initializer_list<long> values) {
  RationalVector v(static_cast<Index>(values.size()));
  Index i = 0;
  for (long x : values) v(i++) = Rational(x);
  return v;
}

inline Rational r(const char* text) { return parse_rational(text); }

inline Rational random_rational(std::mt19937_64& rng, long max_num, long max_den) {
  std::uniform_int_distribution<long> num(-max_num, max_num);
  std::uniform_int_distribution<long> den(1, max_den);
  return Rational(num(rng), den(rng));
}

inline RationalMatrix random_symmetric(std::mt19937_64& rng, Index n, long max_num = 6,
                                       long max_den = 3) {
  RationalMatrix q(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = i; j < n; ++j) q(i, j) = q(j, i) = random_rational(rng, max_num, max_den);
  }
  return q;
}

inline Permutation random_permutation(std::mt19937_64& rng, Index n) {
  std::vector<Index> p(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = i;
  std::shuffle(p.begin(), p.end(), rng);
  return Permutation(p);
}

inline std::vector<IntVector> sorted(std::vector<IntVector> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace copmin::testing
