#pragma once

#include <optional>
#include <string_view>
#include <variant>

#include "copmin/expansion.hpp"
#include "copmin/matrix.hpp"
#include "copmin/spectrum.hpp"

namespace copmin {

/// How pivots are chosen among the remaining diagonal entries.
///  - None: keep the given order; only deviates to skip a zero pivot.
///  - Phase1: largest positive diagonal entry first, then the largest-magnitude
///    negative one, pushing nonpositive outer coefficients to the end.
///  - Phase1Then2: Phase1, then reorder the easy block so that its outer
///    coefficients increase.
enum class PivotStrategy { None, Phase1, Phase1Then2 };

std::string_view to_string(PivotStrategy s);
PivotStrategy parse_pivot_strategy(std::string_view name);

/// perm^T Q perm = lower * diag(diagonal) * lower^T, exactly.
struct LdltFactorization {
  Permutation perm;
  RationalMatrix lower;
  RationalVector diagonal;
  /// 0-based index of the first diagonal entry <= 0, or dim() if none.
  Index first_difficult = 0;

  Index dim() const { return diagonal.size(); }
};

/// Elimination stopped on a remainder whose diagonal is entirely zero while
/// some off-diagonal entry is not; a proper diagonal D does not exist along
/// this pivot sequence.
struct NeedsBlocks {
  /// Rows/columns of the original matrix still in the stuck remainder.
  std::vector<Index> remaining;
  RationalMatrix remainder;
};

using LdltOutcome = std::variant<LdltFactorization, NeedsBlocks>;

class ZeroPivot : public Error {
 public:
  using Error::Error;
};

class NonPositiveDiagonal : public Error {
 public:
  using Error::Error;
};

/// One elimination step on Q with the given pivot moved to the front by a
/// transposition. The column and remainder follow the transposed order.
struct LdltStep {
  RationalVector column;
  Rational pivot;
  RationalMatrix remainder;
};

LdltStep ldlt_step(const RationalMatrix& q, Index pivot);

LdltOutcome ldlt_decompose(const RationalMatrix& q, PivotStrategy strategy);

/// Convenience: the factorization, or nullopt on NeedsBlocks.
std::optional<LdltFactorization> try_factorize(const RationalMatrix& q, PivotStrategy strategy);

/// lower * diag(diagonal) * lower^T.
RationalMatrix reconstruct(const LdltFactorization& f);

LagrangeExpansion lagrange_expansion(const LdltFactorization& f);

Index difficult_count(const LdltFactorization& f);

/// Sign counts of D; equals the inertia of Q by Sylvester's law.
Inertia exact_inertia(const LdltFactorization& f);

/// Unpivoted LDLT succeeding iff q is positive semidefinite: every pivot is
/// nonnegative and a zero pivot has an all-zero remaining row.
std::optional<LdltFactorization> semidefinite_factor(const RationalMatrix& q);

bool is_positive_semidefinite(const RationalMatrix& q);

/// Q = reduced + nonnegative with nonnegative = delta * I.
struct DiagonalSplit {
  RationalMatrix reduced;
  RationalMatrix nonnegative;
  Rational delta;
};

DiagonalSplit diagonal_split(const RationalMatrix& q, const Rational& delta);

/// Tries delta = (min_i Q_ii)/2 and halves it up to `max_retries` times until
/// the reduced matrix factors without blocks.
struct SplitFactorization {
  DiagonalSplit split;
  LdltFactorization factorization;
  int attempts = 0;
};

std::optional<SplitFactorization> split_until_factorable(const RationalMatrix& q,
                                                         PivotStrategy strategy,
                                                         int max_retries = 8);

}  // namespace copmin
