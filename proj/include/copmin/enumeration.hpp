#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "copmin/expansion.hpp"
#include "copmin/matrix.hpp"

namespace copmin {

/// Range for a difficult coordinate given the coordinates above it; the entries
/// of `point` at indices > coordinate are fixed, the rest are unspecified.
using TailBound =
    std::function<std::optional<IntRange>(Index coordinate, std::span<const std::int64_t> point)>;

/// Upper bounds for the difficult coordinates of an expansion, in expansion
/// (permuted) coordinates. The caller certifies that every nonnegative real x
/// with Q[x] <= lambda satisfies x_i <= upper[i].
struct DifficultBox {
  /// nullopt marks an easy coordinate, or a difficult one left unbounded.
  std::vector<std::optional<std::int64_t>> upper;
  /// Consulted for difficult coordinates without an upper bound; its range is
  /// intersected with [0, upper[i]] otherwise.
  TailBound refine;

  static DifficultBox none(Index dim) {
    return DifficultBox{std::vector<std::optional<std::int64_t>>(static_cast<std::size_t>(dim)),
                        {}};
  }
};

struct EnumerationResult {
  Rational lambda;
  /// Original coordinates, lexicographically sorted, zero vector excluded.
  std::vector<IntVector> vectors;
  std::uint64_t nodes = 0;
};

struct EnumerationOptions {
  std::uint64_t max_nodes = 100'000'000;
  /// Worker threads over the outermost coordinate; results are identical for
  /// any value.
  unsigned threads = 1;
};

/// Some nonzero z in the orthant has Q[z] <= 0, so Q is not strictly copositive.
class ZeroValueFound : public Error {
 public:
  ZeroValueFound(IntVector witness, Rational value);
  IntVector witness;
  Rational value;
};

class NodeLimitExceeded : public Error {
 public:
  explicit NodeLimitExceeded(std::uint64_t limit);
  std::uint64_t limit;
};

/// Thrown when a difficult coordinate has neither a box bound nor a refinement.
class UnboundedCoordinate : public Error {
 public:
  explicit UnboundedCoordinate(Index coordinate);
  Index coordinate;
};

/// All z in Z^n_{>=0} \ {0} with Q[z] <= lambda. `expansion` describes
/// perm^T M perm for some M with M[x] <= Q[x] on the orthant (usually M = Q);
/// every leaf is re-evaluated exactly against Q.
EnumerationResult enumerate_below(const RationalMatrix& q, const LagrangeExpansion& expansion,
                                  const Rational& lambda, const DifficultBox& box,
                                  const EnumerationOptions& options = {});

/// The minimum of Q over Z^n_{>=0} \ {0} and all its representatives, given
/// lambda0 >= that minimum. Lambda shrinks in place as shorter vectors appear;
/// the box stays fixed. Throws ZeroValueFound on a leaf with Q[z] <= 0.
EnumerationResult minimize(const RationalMatrix& q, const LagrangeExpansion& expansion,
                           const Rational& lambda0, const DifficultBox& box,
                           const EnumerationOptions& options = {});

using BoxProvider = std::function<DifficultBox(const Rational& lambda)>;

/// The provider is queried once, at lambda0.
EnumerationResult minimize(const RationalMatrix& q, const LagrangeExpansion& expansion,
                           const Rational& lambda0, const BoxProvider& box_provider,
                           const EnumerationOptions& options = {});

}  // namespace copmin
