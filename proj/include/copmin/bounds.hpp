#pragma once

#include <optional>
#include <span>

#include <Eigen/Dense>

#include "copmin/enumeration.hpp"
#include "copmin/ldlt.hpp"
#include "copmin/matrix.hpp"

namespace copmin {

/// Minimum of Q[x] over x >= 0 with x_k fixed to the slice value.
struct QpSolution {
  /// Full-length primal point; x_star(k) is the slice value.
  Eigen::VectorXd x_star;
  double value = 0.0;
  /// Multipliers of x_j >= 0 (zero at k and on the free set).
  Eigen::VectorXd mu;
  /// Proven lower bound on the slice minimum; nullopt when no certificate
  /// could be built (semidefinite block, unbounded or stalled iteration).
  std::optional<Rational> certified_lower;
  /// Set when the minimum was located exactly; then certified_lower is the
  /// minimum itself and this point attains it.
  std::optional<RationalVector> exact_point;
  long iterations = 0;
};

enum class SliceKind {
  /// Complement block must be positive definite.
  PositiveDefinite,
  /// Complement block must be positive semidefinite.
  Semidefinite,
};

class NotConvexSlice : public Error {
 public:
  using Error::Error;
};

/// The certified slice minimum is <= 0, so no box follows from it.
class NonPositiveMinimum : public Error {
 public:
  NonPositiveMinimum(Rational certified, std::optional<RationalVector> witness);
  Rational certified;
  /// Exact x >= 0, x != 0 with Q[x] <= 0, when one is known.
  std::optional<RationalVector> witness;
};

/// Never throws NonPositiveMinimum.
QpSolution solve_slice(const RationalMatrix& q, Index k, const Rational& slice_value = Rational(1),
                       SliceKind kind = SliceKind::PositiveDefinite);

/// solve_slice with a positive definite complement; throws NonPositiveMinimum
/// unless the certificate is positive.
QpSolution qp_min_slice(const RationalMatrix& q, Index k,
                        const Rational& slice_value = Rational(1));

/// floor(sqrt(lambda / lower)), exactly; lower > 0.
std::int64_t slice_bound(const Rational& lambda, const Rational& lower);

/// Box for a factorization with exactly one difficult coordinate, bounding the
/// last permuted coordinate through the slice of the original matrix.
DifficultBox one_difficult_box(const RationalMatrix& q, const LdltFactorization& f,
                               const Rational& lambda);

/// Q = psd + nonnegative, exactly.
struct SpnSplit {
  RationalMatrix psd;
  RationalMatrix nonnegative;
  /// Smallest pivot of the exact factorization of psd.
  Rational margin;
};

enum class SpnStatus { Found, NotFound, Inconclusive };

std::string_view to_string(SpnStatus s);

struct SpnOutcome {
  SpnStatus status = SpnStatus::NotFound;
  std::optional<SpnSplit> split;
  /// Final distance between the two constraint sets, relative to max(1, |Q|).
  double gap = 0.0;
  int iterations = 0;
};

struct SpnOptions {
  int max_iterations = 10'000;
  double tolerance = 1e-10;
  double shrink = 1e-3;
  std::int64_t max_denominator = 1'000'000;
  double margin = 1e-6;
  double stall_gap = 1e-6;
};

SpnOutcome spn_decompose(const RationalMatrix& q, const SpnOptions& options = {});

/// S + N = Q, N >= 0 entrywise and S positive semidefinite, all exactly.
bool verify_split(const RationalMatrix& q, const RationalMatrix& psd,
                  const RationalMatrix& nonnegative);

/// Box from slices of a positive semidefinite S <= Q, in the coordinates of
/// `perm`. Difficult coordinates whose slice minimum is not certified positive
/// stay unbounded. If `zero_point` is given it receives an exact x >= 0 with
/// x != 0 and S[x] = 0 when one turns up.
DifficultBox psd_slice_box(const RationalMatrix& psd, const Rational& lambda,
                           const Permutation& perm, Index first_difficult,
                           std::optional<RationalVector>* zero_point = nullptr);

DifficultBox spn_box(const SpnSplit& split, const Rational& lambda, const Permutation& perm,
                     Index first_difficult);

class NonPositiveLeading : public Error {
 public:
  using Error::Error;
};

/// Integer range of y_k >= 0 compatible with Q[y] <= lambda once y_{k+1..n-1}
/// are fixed, where Q' = S' + N' in permuted coordinates, `psd_factor` is the
/// unpivoted factorization of S' and `nonnegative` is N'. Coordinates below k
/// are ignored. nullopt when empty.
std::optional<IntRange> spn_quadratic_box(const LdltFactorization& psd_factor,
                                          const RationalMatrix& nonnegative,
                                          const Rational& lambda, Index k,
                                          std::span<const std::int64_t> point);

/// Leading coefficient D_kk(S') + N'_kk of the inequality above.
Rational quadratic_leading(const LdltFactorization& psd_factor, const RationalMatrix& nonnegative,
                           Index k);

}  // namespace copmin
