#pragma once

#include "copmin/matrix.hpp"

namespace copmin {

/// Weighted sum of squares
///   M[x] = sum_i outer(i) * (x_i + sum_{j>i} inner(i, j) x_j)^2,
/// where M = perm^T Q perm (or a form bounded above by it on the orthant).
/// Coordinates are those of the permuted matrix; map back with `unpermute`.
struct LagrangeExpansion {
  Permutation perm;
  RationalVector outer;
  /// Strictly upper part is used; diagonal and lower part are ignored.
  RationalMatrix inner;
  /// First index with outer(i) <= 0, or dim() when all are positive.
  Index first_difficult = 0;

  Index dim() const { return outer.size(); }
};

template <typename Derived>
Rational evaluate(const LagrangeExpansion& e, const Eigen::MatrixBase<Derived>& x) {
  if (x.size() != e.dim()) {
    throw DimensionMismatch("expansion dimension does not match vector length");
  }
  Rational sum(0);
  for (Index i = 0; i < e.dim(); ++i) {
    Rational inner_sum(x(i));
    for (Index j = i + 1; j < e.dim(); ++j) {
      inner_sum += e.inner(i, j) * Rational(x(j));
    }
    sum += e.outer(i) * inner_sum * inner_sum;
  }
  return sum;
}

}  // namespace copmin
