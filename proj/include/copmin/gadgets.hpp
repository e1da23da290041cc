#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include "copmin/matrix.hpp"

namespace copmin {

struct SubsetSumInstance {
  std::vector<std::int64_t> a;
  std::int64_t s = 0;
};

class InvalidInstance : public Error {
 public:
  using Error::Error;
};

/// (n+1)-dimensional integer matrix
///   n [a a^T, -s a; -s a^T, s^2] + [2I, -1; -1^T, n],
/// whose copositive minimum is n exactly when some 0/1 vector x has a^T x = s.
RationalMatrix subset_sum_gadget(const SubsetSumInstance& inst);

/// Checks n h h^T + G^T G + diag(I, 0) == gadget with h = (a, -s), G = (-I | 1).
bool gadget_h_identity_check(const SubsetSumInstance& inst);

/// Instance with n in [1, max_n] and entries in [1, max_a]; s is drawn from
/// [1, sum(a)].
SubsetSumInstance random_subset_sum(std::mt19937_64& rng, int max_n, std::int64_t max_a);

/// "example1", "blocks4" or "horn"; throws std::invalid_argument otherwise.
RationalMatrix named_matrix(std::string_view name);

enum class MatrixClass { Psd, Spn, SpnTwoNeg };

std::string_view to_string(MatrixClass c);
/// Accepts "psd", "spn", "spn2neg" and "spn_two_neg".
MatrixClass parse_matrix_class(std::string_view name);

using IntegerMatrix = Matrix<std::int64_t>;

/// A random matrix together with its construction: matrix = B B^T + noise.
struct GeneratedMatrix {
  RationalMatrix matrix;
  IntegerMatrix factor;
  /// Symmetric and entrywise nonnegative; zero for the psd class.
  IntegerMatrix noise;
  int attempts = 1;
};

class GenerationFailed : public Error {
 public:
  using Error::Error;
};

/// Deterministic in (cls, dim, seed, range).
///  - psd: B is dim x dim with entries in [-range, range] and no zero row.
///  - spn: psd plus noise with off-diagonal entries in [0, range^2] and
///    diagonal entries in [0, range].
///  - spn_two_neg: B has dim - 2 columns and the off-diagonal noise reaches
///    4 range^2; candidates are redrawn until at least two eigenvalues are
///    negative, up to 1000 times.
GeneratedMatrix random_matrix(MatrixClass cls, Index dim, std::uint64_t seed,
                              std::int64_t range = 3);

}  // namespace copmin
