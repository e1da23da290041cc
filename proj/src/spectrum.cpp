#include "copmin/spectrum.hpp"

#include <cmath>
#include <limits>

namespace copmin {

namespace {
constexpr double kZeroThreshold = 1e-9;
}

SymmetricEigen symmetric_eigen(const Eigen::MatrixXd& q) {
  if (q.rows() != q.cols()) {
    throw DimensionMismatch("symmetric_eigen needs a square matrix");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(q);
  if (solver.info() != Eigen::Success) {
    throw EigenNotConverged("symmetric eigensolver did not converge",
                            std::numeric_limits<double>::infinity());
  }
  SymmetricEigen out;
  out.eigenvalues = solver.eigenvalues();
  out.eigenvectors = solver.eigenvectors();
  out.residual = (out.eigenvectors * out.eigenvalues.asDiagonal() * out.eigenvectors.transpose() - q)
                     .norm();
  const double scale = std::max(1.0, q.norm());
  if (!(out.residual < 1e-8 * scale)) {
    throw EigenNotConverged("symmetric eigensolver residual too large", out.residual);
  }
  return out;
}

Inertia inertia_of(const Eigen::MatrixXd& q) {
  Inertia in;
  if (q.size() == 0) {
    return in;
  }
  const auto eig = symmetric_eigen(q);
  const double threshold = kZeroThreshold * q.norm();
  for (Index i = 0; i < eig.eigenvalues.size(); ++i) {
    const double w = eig.eigenvalues(i);
    const double a = std::abs(w);
    if (a <= threshold) {
      ++in.zero;
    } else if (w > 0) {
      ++in.positive;
    } else {
      ++in.negative;
    }
    if (threshold > 0 && a >= threshold * 1e-3 && a <= threshold * 1e3) {
      in.ambiguous = true;
    }
  }
  return in;
}

Eigen::MatrixXd project_psd(const Eigen::MatrixXd& q, double floor) {
  const auto eig = symmetric_eigen(q);
  const Eigen::VectorXd clamped = eig.eigenvalues.cwiseMax(floor);
  return eig.eigenvectors * clamped.asDiagonal() * eig.eigenvectors.transpose();
}

}  // namespace copmin
