#include "copmin/gadgets.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

#include "copmin/spectrum.hpp"

namespace copmin {

namespace {

void validate(const SubsetSumInstance& inst) {
  if (inst.a.empty()) throw InvalidInstance("subset-sum instance needs at least one weight");
  for (auto v : inst.a) {
    if (v < 1) throw InvalidInstance("subset-sum weights must be positive");
  }
  if (inst.s < 1) throw InvalidInstance("subset-sum target must be positive");
}

RationalMatrix from_rows(std::initializer_list<std::initializer_list<int>> rows) {
  const auto n = static_cast<Index>(rows.size());
  RationalMatrix q(n, n);
  Index i = 0;
  for (const auto& row : rows) {
    Index j = 0;
    for (int v : row) q(i, j++) = v;
    ++i;
  }
  return q;
}

}  // namespace

RationalMatrix subset_sum_gadget(const SubsetSumInstance& inst) {
  validate(inst);
  const auto n = static_cast<Index>(inst.a.size());
  const Rational nn(n);
  const Rational s(inst.s);
  RationalMatrix q(n + 1, n + 1);
  for (Index i = 0; i < n; ++i) {
    const Rational ai(inst.a[static_cast<std::size_t>(i)]);
    for (Index j = 0; j < n; ++j) {
      q(i, j) = nn * ai * Rational(inst.a[static_cast<std::size_t>(j)]) + (i == j ? 2 : 0);
    }
    q(i, n) = -nn * s * ai - 1;
    q(n, i) = q(i, n);
  }
  q(n, n) = nn * s * s + nn;
  return q;
}

bool gadget_h_identity_check(const SubsetSumInstance& inst) {
  validate(inst);
  const auto n = static_cast<Index>(inst.a.size());
  RationalVector h(n + 1);
  for (Index i = 0; i < n; ++i) h(i) = inst.a[static_cast<std::size_t>(i)];
  h(n) = -inst.s;
  RationalMatrix g = RationalMatrix::Zero(n, n + 1);
  for (Index i = 0; i < n; ++i) {
    g(i, i) = -1;
    g(i, n) = 1;
  }
  RationalMatrix lhs = Rational(n) * h * h.transpose() + g.transpose() * g;
  for (Index i = 0; i < n; ++i) lhs(i, i) += 1;
  return lhs == subset_sum_gadget(inst);
}

SubsetSumInstance random_subset_sum(std::mt19937_64& rng, int max_n, std::int64_t max_a) {
  std::uniform_int_distribution<int> dim(1, max_n);
  std::uniform_int_distribution<std::int64_t> weight(1, max_a);
  SubsetSumInstance inst;
  inst.a.resize(static_cast<std::size_t>(dim(rng)));
  for (auto& v : inst.a) v = weight(rng);
  const auto total = std::accumulate(inst.a.begin(), inst.a.end(), std::int64_t{0});
  inst.s = std::uniform_int_distribution<std::int64_t>(1, total)(rng);
  return inst;
}

RationalMatrix named_matrix(std::string_view name) {
  if (name == "example1") {
    return from_rows({{3, -1, 3}, {-1, 2, -1}, {3, -1, 2}});
  }
  if (name == "blocks4") {
    return from_rows({{8, -2, -8, 0}, {-2, 1, 0, 8}, {-8, 0, 24, 16}, {0, 8, 16, 32}});
  }
  if (name == "horn") {
    return from_rows({{1, -1, 1, 1, -1},
                      {-1, 1, -1, 1, 1},
                      {1, -1, 1, -1, 1},
                      {1, 1, -1, 1, -1},
                      {-1, 1, 1, -1, 1}});
  }
  throw std::invalid_argument("unknown matrix name '" + std::string(name) + "'");
}

std::string_view to_string(MatrixClass c) {
  switch (c) {
    case MatrixClass::Psd:
      return "psd";
    case MatrixClass::Spn:
      return "spn";
    case MatrixClass::SpnTwoNeg:
      return "spn2neg";
  }
  return "?";
}

MatrixClass parse_matrix_class(std::string_view name) {
  if (name == "psd") return MatrixClass::Psd;
  if (name == "spn") return MatrixClass::Spn;
  if (name == "spn2neg" || name == "spn_two_neg") return MatrixClass::SpnTwoNeg;
  throw std::invalid_argument("unknown matrix class '" + std::string(name) + "'");
}

namespace {

IntegerMatrix draw_factor(std::mt19937_64& rng, Index rows, Index cols, std::int64_t range) {
  std::uniform_int_distribution<std::int64_t> entry(-range, range);
  IntegerMatrix b(rows, cols);
  for (;;) {
    for (Index i = 0; i < rows; ++i) {
      for (Index j = 0; j < cols; ++j) b(i, j) = entry(rng);
    }
    bool zero_row = false;
    for (Index i = 0; i < rows; ++i) zero_row = zero_row || (b.row(i).array() == 0).all();
    if (!zero_row) return b;
  }
}

IntegerMatrix draw_noise(std::mt19937_64& rng, Index dim, std::int64_t off_max,
                         std::int64_t diag_max) {
  std::uniform_int_distribution<std::int64_t> off(0, off_max);
  std::uniform_int_distribution<std::int64_t> diag(0, diag_max);
  IntegerMatrix n(dim, dim);
  for (Index i = 0; i < dim; ++i) {
    n(i, i) = diag(rng);
    for (Index j = i + 1; j < dim; ++j) n(i, j) = n(j, i) = off(rng);
  }
  return n;
}

GeneratedMatrix assemble(IntegerMatrix b, IntegerMatrix noise, int attempts) {
  const IntegerMatrix sum = b * b.transpose() + noise;
  return GeneratedMatrix{sum.unaryExpr([](std::int64_t v) { return Rational(v); }), std::move(b),
                         std::move(noise), attempts};
}

}  // namespace

GeneratedMatrix random_matrix(MatrixClass cls, Index dim, std::uint64_t seed,
                              std::int64_t range) {
  if (dim < 2) throw std::invalid_argument("random_matrix needs dim >= 2");
  if (range < 1) throw std::invalid_argument("random_matrix needs range >= 1");
  std::mt19937_64 rng(seed);
  switch (cls) {
    case MatrixClass::Psd:
      return assemble(draw_factor(rng, dim, dim, range), IntegerMatrix::Zero(dim, dim), 1);
    case MatrixClass::Spn: {
      IntegerMatrix b = draw_factor(rng, dim, dim, range);
      return assemble(std::move(b), draw_noise(rng, dim, range * range, range), 1);
    }
    case MatrixClass::SpnTwoNeg: {
      constexpr int kMaxAttempts = 1000;
      for (int attempt = 1; attempt <= kMaxAttempts; ++attempt) {
        IntegerMatrix b = draw_factor(rng, dim, std::max<Index>(dim - 2, 1), range);
        IntegerMatrix noise = draw_noise(rng, dim, 4 * range * range, range);
        GeneratedMatrix g = assemble(std::move(b), std::move(noise), attempt);
        if (inertia_of(g.matrix).negative >= 2) return g;
      }
      throw GenerationFailed("no matrix with two negative eigenvalues after 1000 attempts");
    }
  }
  throw std::invalid_argument("unknown matrix class");
}

}  // namespace copmin
