#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "copmin/bounds.hpp"
#include "copmin/enumeration.hpp"
#include "copmin/matrix.hpp"

namespace copmin {

enum class SolveStatus { StrictlyCopositive, NotStrictlyCopositive, NotApplicable };

enum class Strategy { PositiveDefinite, PsdSlice, OneDifficult, SpnSplit, DiagonalSplitThenSpn };

/// Which strategy the cascade may use. Auto tries them cheapest first; the
/// others force a single path.
enum class StrategyChoice { Auto, PositiveDefinite, PsdSlice, OneDifficult, Spn, Split };

enum class Classification { StrictlyCopositive, CopositiveNotStrictly, NotCopositive, Unknown };

std::string_view to_string(SolveStatus s);
std::string_view to_string(Strategy s);
std::string_view to_string(StrategyChoice s);
std::string_view to_string(Classification c);
StrategyChoice parse_strategy_choice(std::string_view name);

struct SolverOptions {
  StrategyChoice strategy = StrategyChoice::Auto;
  /// Starting radius; the smallest diagonal entry is used when it is smaller.
  std::optional<Rational> lambda;
  EnumerationOptions enumeration;
  SpnOptions spn;
};

struct CopMinResult {
  SolveStatus status = SolveStatus::NotApplicable;
  /// Valid when strictly copositive.
  Rational minimum;
  std::vector<IntVector> representatives;
  std::optional<Strategy> strategy;
  /// Nonzero z >= 0 with Q[z] = witness_value <= 0.
  std::optional<IntVector> witness;
  std::optional<RationalVector> real_witness;
  std::optional<Rational> witness_value;
  /// NotApplicable reason: needs-blocks-unresolved, spn-not-found,
  /// spn-inconclusive, unbounded-coordinate, strategy-not-applicable or
  /// no-vector-below-lambda.
  std::string reason;
  /// Bounds used for the difficult coordinates, in original coordinates;
  /// nullopt where the expansion itself bounds the coordinate or the bound
  /// depends on the other coordinates.
  std::vector<std::optional<std::int64_t>> box;
  std::uint64_t nodes = 0;
};

CopMinResult min_cop(const RationalMatrix& q, const SolverOptions& options = {});

/// Every nonzero z >= 0 with Q[z] <= lambda, bounded through the same cascade.
/// `status` is StrictlyCopositive when the list is complete; representatives
/// hold the vectors and minimum holds lambda.
CopMinResult list_below(const RationalMatrix& q, const Rational& lambda,
                        const SolverOptions& options = {});

Classification classify(const RationalMatrix& q, const SolverOptions& options = {});
Classification classify(const RationalMatrix& q, const CopMinResult& result,
                        const SpnOptions& spn = {});

/// Smallest positive integer multiple of a nonnegative rational vector, when
/// it fits in 64 bits.
std::optional<IntVector> integer_multiple(const RationalVector& x);

}  // namespace copmin
