#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "copmin/rational.hpp"

namespace copmin {

using Eigen::Index;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using RationalMatrix = Matrix<Rational>;
using RationalVector = Vector<Rational>;

/// Nonnegative integer vector in original coordinates (nonnegativity is the
/// caller's contract).
using IntVector = std::vector<std::int64_t>;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// A permutation of {0, ..., n-1}. Applied to a matrix it yields
/// result(i, j) = Q(p(i), p(j)), i.e. the congruence P^T Q P.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<Index> image);

  static Permutation identity(Index n);
  static Permutation transposition(Index n, Index a, Index b);

  Index size() const { return static_cast<Index>(image_.size()); }
  Index operator()(Index i) const { return image_[static_cast<std::size_t>(i)]; }
  const std::vector<Index>& image() const { return image_; }

  Permutation inverse() const;
  bool is_identity() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<Index> image_;
};

/// i -> outer(inner(i)); symmetric_permute(Q, compose(P1, P2)) equals
/// symmetric_permute(symmetric_permute(Q, P1), P2).
Permutation compose(const Permutation& outer, const Permutation& inner);

/// Maps a vector y in permuted coordinates back to z with z[p(i)] = y[i], so
/// that (P^T Q P)[y] = Q[z].
template <typename T>
std::vector<T> unpermute(const Permutation& p, const std::vector<T>& y) {
  std::vector<T> z(y.size());
  for (Index i = 0; i < p.size(); ++i) {
    z[static_cast<std::size_t>(p(i))] = y[static_cast<std::size_t>(i)];
  }
  return z;
}

/// Inverse of unpermute: y[i] = z[p(i)].
template <typename T>
std::vector<T> permute(const Permutation& p, const std::vector<T>& z) {
  std::vector<T> y(z.size());
  for (Index i = 0; i < p.size(); ++i) {
    y[static_cast<std::size_t>(i)] = z[static_cast<std::size_t>(p(i))];
  }
  return y;
}

template <typename Derived>
Matrix<typename Derived::Scalar> symmetric_permute(const Eigen::MatrixBase<Derived>& q,
                                                   const Permutation& p) {
  if (q.rows() != p.size() || q.cols() != p.size()) {
    throw DimensionMismatch("permutation size does not match matrix");
  }
  Matrix<typename Derived::Scalar> out(q.rows(), q.cols());
  for (Index i = 0; i < q.rows(); ++i) {
    for (Index j = 0; j < q.cols(); ++j) {
      out(i, j) = q(p(i), p(j));
    }
  }
  return out;
}

/// Q[x] = x^T Q x, in the scalar type of Q.
template <typename DerivedQ, typename DerivedX>
typename DerivedQ::Scalar evaluate_form(const Eigen::MatrixBase<DerivedQ>& q,
                                        const Eigen::MatrixBase<DerivedX>& x) {
  if (q.rows() != q.cols() || x.size() != q.rows()) {
    throw DimensionMismatch("evaluate_form: vector length " + std::to_string(x.size()) +
                            " vs matrix dimension " + std::to_string(q.rows()));
  }
  using Scalar = typename DerivedQ::Scalar;
  Scalar sum(0);
  for (Index i = 0; i < q.rows(); ++i) {
    const Scalar xi(x(i));
    if (xi == Scalar(0)) {
      continue;
    }
    Scalar row(0);
    for (Index j = 0; j < q.cols(); ++j) {
      row += q(i, j) * Scalar(x(j));
    }
    sum += xi * row;
  }
  return sum;
}

Rational evaluate_form(const RationalMatrix& q, const IntVector& z);

RationalVector to_rational(const IntVector& z);

template <typename Derived>
bool is_symmetric(const Eigen::MatrixBase<Derived>& q) {
  if (q.rows() != q.cols()) {
    return false;
  }
  for (Index i = 0; i < q.rows(); ++i) {
    for (Index j = i + 1; j < q.cols(); ++j) {
      if (q(i, j) != q(j, i)) {
        return false;
      }
    }
  }
  return true;
}

/// Throws DimensionMismatch / Error unless q is a nonempty symmetric square matrix.
void require_symmetric(const RationalMatrix& q);

inline Eigen::MatrixXd to_double(const RationalMatrix& q) {
  return q.cast<double>();
}

}  // namespace copmin
