#include "copmin/matrix.hpp"

#include <algorithm>
#include <numeric>

namespace copmin {

Permutation::Permutation(std::vector<Index> image) : image_(std::move(image)) {
  std::vector<bool> seen(image_.size(), false);
  for (Index v : image_) {
    if (v < 0 || v >= size() || seen[static_cast<std::size_t>(v)]) {
      throw std::invalid_argument("not a permutation");
    }
    seen[static_cast<std::size_t>(v)] = true;
  }
}

Permutation Permutation::identity(Index n) {
  std::vector<Index> image(static_cast<std::size_t>(n));
  std::iota(image.begin(), image.end(), Index{0});
  return Permutation(std::move(image));
}

Permutation Permutation::transposition(Index n, Index a, Index b) {
  auto image = identity(n).image_;
  std::swap(image.at(static_cast<std::size_t>(a)), image.at(static_cast<std::size_t>(b)));
  return Permutation(std::move(image));
}

Permutation Permutation::inverse() const {
  std::vector<Index> inv(image_.size());
  for (Index i = 0; i < size(); ++i) {
    inv[static_cast<std::size_t>((*this)(i))] = i;
  }
  return Permutation(std::move(inv));
}

bool Permutation::is_identity() const {
  for (Index i = 0; i < size(); ++i) {
    if ((*this)(i) != i) {
      return false;
    }
  }
  return true;
}

Permutation compose(const Permutation& outer, const Permutation& inner) {
  if (outer.size() != inner.size()) {
    throw DimensionMismatch("composing permutations of different sizes");
  }
  std::vector<Index> image(static_cast<std::size_t>(outer.size()));
  for (Index i = 0; i < outer.size(); ++i) {
    image[static_cast<std::size_t>(i)] = outer(inner(i));
  }
  return Permutation(std::move(image));
}

RationalVector to_rational(const IntVector& z) {
  RationalVector x(static_cast<Index>(z.size()));
  for (std::size_t i = 0; i < z.size(); ++i) {
    x(static_cast<Index>(i)) = Rational(z[i]);
  }
  return x;
}

Rational evaluate_form(const RationalMatrix& q, const IntVector& z) {
  return evaluate_form(q, to_rational(z));
}

void require_symmetric(const RationalMatrix& q) {
  if (q.rows() < 1 || q.rows() != q.cols()) {
    throw DimensionMismatch("expected a nonempty square matrix");
  }
  for (Index i = 0; i < q.rows(); ++i) {
    for (Index j = i + 1; j < q.cols(); ++j) {
      if (q(i, j) != q(j, i)) {
        throw Error("matrix is not symmetric at (" + std::to_string(i + 1) + "," +
                    std::to_string(j + 1) + ")/(" + std::to_string(j + 1) + "," +
                    std::to_string(i + 1) + ")");
      }
    }
  }
}

}  // namespace copmin
