#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "copmin/gadgets.hpp"
#include "copmin/matrix.hpp"

namespace copmin {

class BoxTooLarge : public Error {
 public:
  using Error::Error;
};

struct OracleResult {
  Rational minimum;
  /// Lexicographically sorted.
  std::vector<IntVector> vectors;
  std::uint64_t evaluated = 0;
};

/// Exhaustive minimum of Q[z] over nonzero z with 0 <= z_i <= box[i].
/// Throws BoxTooLarge when the box holds more than `guard` points.
OracleResult brute_force_min(const RationalMatrix& q, const std::vector<std::int64_t>& box,
                             std::uint64_t guard = 100'000'000);

/// Lexicographically first x in {0,1}^n (ones before zeros) with a^T x = s.
std::optional<std::vector<int>> subset_sum_brute(const SubsetSumInstance& inst);

}  // namespace copmin
