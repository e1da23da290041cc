#pragma once

#include <Eigen/Dense>

#include "copmin/matrix.hpp"

namespace copmin {

class EigenNotConverged : public Error {
 public:
  EigenNotConverged(const std::string& what, double residual) : Error(what), residual(residual) {}
  double residual;
};

/// Floating-point spectrum of a symmetric matrix, eigenvalues ascending.
struct SymmetricEigen {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd eigenvectors;
  /// ||V diag(w) V^T - Q||_F
  double residual = 0.0;
};

SymmetricEigen symmetric_eigen(const Eigen::MatrixXd& q);

inline SymmetricEigen symmetric_eigen(const RationalMatrix& q) {
  return symmetric_eigen(to_double(q));
}

/// Eigenvalue sign counts. `ambiguous` is set when some eigenvalue lies within
/// three orders of magnitude of the zero threshold on either side.
struct Inertia {
  Index positive = 0;
  Index zero = 0;
  Index negative = 0;
  bool ambiguous = false;

  Index dim() const { return positive + zero + negative; }
  friend bool operator==(const Inertia& a, const Inertia& b) {
    return a.positive == b.positive && a.zero == b.zero && a.negative == b.negative;
  }
};

/// Zero threshold is 1e-9 * ||Q||_F.
Inertia inertia_of(const Eigen::MatrixXd& q);

inline Inertia inertia_of(const RationalMatrix& q) {
  return inertia_of(to_double(q));
}

/// Projection onto {X symmetric : X - floor*I is PSD} by eigenvalue clamping.
Eigen::MatrixXd project_psd(const Eigen::MatrixXd& q, double floor = 0.0);

}  // namespace copmin
