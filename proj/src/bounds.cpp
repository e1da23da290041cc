#include "copmin/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "copmin/spectrum.hpp"

namespace copmin {

NonPositiveMinimum::NonPositiveMinimum(Rational certified, std::optional<RationalVector> witness)
    : Error("slice minimum is not positive (certified " + to_string(certified) + ")"),
      certified(std::move(certified)),
      witness(std::move(witness)) {}

std::string_view to_string(SpnStatus s) {
  switch (s) {
    case SpnStatus::Found:
      return "found";
    case SpnStatus::NotFound:
      return "not-found";
    case SpnStatus::Inconclusive:
      return "inconclusive";
  }
  return "?";
}

namespace {

constexpr long kMaxIterations = 1'000'000;
constexpr double kResidualTolerance = 1e-10;
constexpr std::int64_t kMultiplierDenominator = 1'000'000'000;

// Some solution of a x = rhs with free unknowns set to zero; nullopt if the
// system is inconsistent.
std::optional<RationalVector> solve_exact(RationalMatrix a, RationalVector rhs) {
  const Index rows = a.rows();
  const Index cols = a.cols();
  std::vector<Index> pivots;
  Index r = 0;
  for (Index c = 0; c < cols && r < rows; ++c) {
    Index p = r;
    while (p < rows && a(p, c) == 0) ++p;
    if (p == rows) continue;
    a.row(p).swap(a.row(r));
    std::swap(rhs(p), rhs(r));
    for (Index i = 0; i < rows; ++i) {
      if (i == r || a(i, c) == 0) continue;
      const Rational f = a(i, c) / a(r, c);
      for (Index j = c; j < cols; ++j) a(i, j) -= f * a(r, j);
      rhs(i) -= f * rhs(r);
    }
    pivots.push_back(c);
    ++r;
  }
  for (Index i = r; i < rows; ++i) {
    if (rhs(i) != 0) return std::nullopt;
  }
  RationalVector x = RationalVector::Zero(cols);
  for (Index i = 0; i < r; ++i) {
    const Index c = pivots[static_cast<std::size_t>(i)];
    x(c) = rhs(i) / a(i, c);
  }
  return x;
}

// f(x) = x^T A x + 2 b^T x + c over x >= 0.
struct SliceData {
  std::vector<Index> free_coords;
  RationalMatrix a;
  RationalVector b;
  Rational c;
};

SliceData slice_data(const RationalMatrix& q, Index k, const Rational& s) {
  const Index n = q.rows();
  SliceData d;
  for (Index i = 0; i < n; ++i) {
    if (i != k) d.free_coords.push_back(i);
  }
  const auto m = static_cast<Index>(d.free_coords.size());
  d.a.resize(m, m);
  d.b.resize(m);
  for (Index i = 0; i < m; ++i) {
    const Index gi = d.free_coords[static_cast<std::size_t>(i)];
    for (Index j = 0; j < m; ++j) {
      d.a(i, j) = q(gi, d.free_coords[static_cast<std::size_t>(j)]);
    }
    d.b(i) = q(gi, k) * s;
  }
  d.c = q(k, k) * s * s;
  return d;
}

Rational objective(const SliceData& d, const RationalVector& x) {
  return evaluate_form(d.a, x) + 2 * d.b.dot(x) + d.c;
}

// KKT point with the given free set, if it exists and satisfies every sign
// condition exactly.
std::optional<RationalVector> polish(const SliceData& d, const std::vector<Index>& free) {
  const auto m = d.a.rows();
  RationalVector x = RationalVector::Zero(m);
  if (!free.empty()) {
    const auto f = static_cast<Index>(free.size());
    RationalMatrix aff(f, f);
    RationalVector rhs(f);
    for (Index i = 0; i < f; ++i) {
      for (Index j = 0; j < f; ++j) aff(i, j) = d.a(free[i], free[j]);
      rhs(i) = -d.b(free[i]);
    }
    const auto sol = solve_exact(aff, rhs);
    if (!sol) return std::nullopt;
    for (Index i = 0; i < f; ++i) {
      if ((*sol)(i) < 0) return std::nullopt;
      x(free[i]) = (*sol)(i);
    }
  }
  const RationalVector grad = d.a * x + d.b;
  for (Index j = 0; j < m; ++j) {
    if (grad(j) < 0) return std::nullopt;
    if (x(j) > 0 && grad(j) != 0) return std::nullopt;
  }
  return x;
}

std::vector<Index> free_set(const Eigen::VectorXd& x, double tol) {
  std::vector<Index> free;
  for (Index j = 0; j < x.size(); ++j) {
    if (x(j) > tol) free.push_back(j);
  }
  return free;
}

bool is_positive_definite(const RationalMatrix& a) {
  if (a.rows() == 0) return true;
  const auto f = semidefinite_factor(a);
  return f && (f->diagonal.array() > Rational(0)).all();
}

RationalVector embed(const SliceData& d, const RationalVector& x, Index k, const Rational& s) {
  RationalVector full(static_cast<Index>(d.free_coords.size()) + 1);
  full(k) = s;
  for (Index i = 0; i < x.size(); ++i) full(d.free_coords[static_cast<std::size_t>(i)]) = x(i);
  return full;
}

}  // namespace

QpSolution solve_slice(const RationalMatrix& q, Index k, const Rational& slice_value,
                       SliceKind kind) {
  require_symmetric(q);
  const Index n = q.rows();
  if (k < 0 || k >= n) {
    throw std::out_of_range("slice coordinate out of range");
  }
  const SliceData d = slice_data(q, k, slice_value);
  const Index m = d.a.rows();
  const bool definite = is_positive_definite(d.a);
  if (kind == SliceKind::PositiveDefinite && !definite) {
    throw NotConvexSlice("complement of coordinate " + std::to_string(k + 1) +
                         " is not positive definite");
  }
  if (kind == SliceKind::Semidefinite && !definite && !is_positive_semidefinite(d.a)) {
    throw NotConvexSlice("complement of coordinate " + std::to_string(k + 1) +
                         " is not positive semidefinite");
  }

  QpSolution out;
  out.mu = Eigen::VectorXd::Zero(n);
  auto finish_exact = [&](const RationalVector& x) {
    const Rational value = objective(d, x);
    const RationalVector grad = 2 * (d.a * x + d.b);
    for (Index j = 0; j < m; ++j) {
      out.mu(d.free_coords[static_cast<std::size_t>(j)]) = to_double(grad(j));
    }
    out.exact_point = embed(d, x, k, slice_value);
    out.x_star = out.exact_point->cast<double>();
    out.certified_lower = value;
    out.value = to_double(value);
  };

  if (m == 0) {
    finish_exact(RationalVector::Zero(0));
    return out;
  }

  const Eigen::MatrixXd a = d.a.cast<double>();
  const Eigen::VectorXd b = d.b.cast<double>();
  const double lmax = symmetric_eigen(a).eigenvalues.maxCoeff();
  const double step = lmax > 0 ? 1.0 / (2.0 * lmax) : 1.0;
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff() + b.cwiseAbs().maxCoeff());

  Eigen::VectorXd x = Eigen::VectorXd::Zero(m);
  std::vector<Index> tried;
  bool tried_any = false;
  auto attempt = [&](double tol) -> bool {
    auto free = free_set(x, tol);
    if (tried_any && free == tried) return false;
    tried = free;
    tried_any = true;
    if (auto exact = polish(d, free)) {
      finish_exact(*exact);
      return true;
    }
    return false;
  };

  long it = 0;
  bool diverged = false;
  for (; it < kMaxIterations; ++it) {
    const Eigen::VectorXd g = 2.0 * (a * x + b);
    const double residual = (x - (x - g).cwiseMax(0.0)).lpNorm<Eigen::Infinity>();
    if (residual < kResidualTolerance * scale) break;
    if (it % 100 == 0 && attempt(1e-9 * std::max(1.0, x.lpNorm<Eigen::Infinity>()))) {
      out.iterations = it;
      return out;
    }
    x = (x - step * g).cwiseMax(0.0);
    if (!x.allFinite() || x.lpNorm<Eigen::Infinity>() > 1e12) {
      diverged = true;
      break;
    }
  }
  out.iterations = it;
  if (!diverged) {
    for (double tol : {1e-9, 1e-7, 1e-5}) {
      tried_any = false;
      if (attempt(tol * std::max(1.0, x.lpNorm<Eigen::Infinity>()))) return out;
    }
  }

  out.x_star = Eigen::VectorXd::Zero(n);
  out.x_star(k) = to_double(slice_value);
  for (Index j = 0; j < m; ++j) out.x_star(d.free_coords[static_cast<std::size_t>(j)]) = x(j);
  out.value = x.dot(a * x) + 2.0 * b.dot(x) + to_double(d.c);
  const Eigen::VectorXd g = 2.0 * (a * x + b);
  RationalVector mu(m);
  for (Index j = 0; j < m; ++j) {
    const double mj = diverged ? 0.0 : std::max(0.0, g(j));
    out.mu(d.free_coords[static_cast<std::size_t>(j)]) = mj;
    mu(j) = rationalize(mj, kMultiplierDenominator);
    if (mu(j) < 0) mu(j) = 0;
  }
  if (definite && !diverged) {
    // Lagrangian dual at mu: c - (2b - mu)^T A^{-1} (2b - mu) / 4.
    const RationalVector r = 2 * d.b - mu;
    const auto y = solve_exact(d.a, r);
    out.certified_lower = d.c - r.dot(*y) / 4;
  }
  return out;
}

QpSolution qp_min_slice(const RationalMatrix& q, Index k, const Rational& slice_value) {
  QpSolution sol = solve_slice(q, k, slice_value, SliceKind::PositiveDefinite);
  if (!sol.certified_lower || *sol.certified_lower <= 0) {
    std::optional<RationalVector> witness;
    if (sol.exact_point) {
      witness = sol.exact_point;
    } else {
      RationalVector x(sol.x_star.size());
      for (Index i = 0; i < x.size(); ++i) {
        x(i) = rationalize(std::max(0.0, sol.x_star(i)), 1'000'000);
      }
      x(k) = slice_value;
      if (evaluate_form(q, x) <= 0) witness = x;
    }
    throw NonPositiveMinimum(sol.certified_lower.value_or(Rational(0)), std::move(witness));
  }
  return sol;
}

std::int64_t slice_bound(const Rational& lambda, const Rational& lower) {
  if (lower <= 0) {
    throw std::domain_error("slice_bound needs a positive lower bound");
  }
  if (lambda <= 0) {
    return 0;
  }
  return to_int64(isqrt_floor(lambda / lower));
}

DifficultBox one_difficult_box(const RationalMatrix& q, const LdltFactorization& f,
                               const Rational& lambda) {
  const Index n = f.dim();
  if (difficult_count(f) != 1) {
    throw std::invalid_argument("one_difficult_box needs exactly one difficult coordinate");
  }
  const QpSolution sol = qp_min_slice(q, f.perm(n - 1));
  DifficultBox box = DifficultBox::none(n);
  box.upper[static_cast<std::size_t>(n - 1)] = slice_bound(lambda, *sol.certified_lower);
  return box;
}

bool verify_split(const RationalMatrix& q, const RationalMatrix& psd,
                  const RationalMatrix& nonnegative) {
  if (psd.rows() != q.rows() || nonnegative.rows() != q.rows() || psd.cols() != q.cols() ||
      nonnegative.cols() != q.cols()) {
    return false;
  }
  if (psd + nonnegative != q) return false;
  if ((nonnegative.array() < Rational(0)).any()) return false;
  return is_symmetric(psd) && is_positive_semidefinite(psd);
}

namespace {

std::optional<SpnSplit> make_split(const RationalMatrix& q, RationalMatrix nonnegative) {
  RationalMatrix psd = q - nonnegative;
  if ((nonnegative.array() < Rational(0)).any()) return std::nullopt;
  const auto factor = semidefinite_factor(psd);
  if (!factor) return std::nullopt;
  Rational margin = factor->diagonal.size() ? factor->diagonal.minCoeff() : Rational(0);
  return SpnSplit{std::move(psd), std::move(nonnegative), std::move(margin)};
}

struct Projection {
  Eigen::MatrixXd nonnegative;
  double gap = 0.0;
  int iterations = 0;
};

// Dykstra's alternating projections from N = 0 between {N >= 0} and
// {N : Q - N >= floor * I}.
Projection project_split(const Eigen::MatrixXd& q, double floor, double scale,
                         const SpnOptions& opt) {
  const Index n = q.rows();
  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXd r = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXd y = x;
  Projection out;
  for (int it = 1; it <= opt.max_iterations; ++it) {
    const Eigen::MatrixXd xp = x + p;
    y = q - project_psd(q - xp, floor);
    y = (y + y.transpose()) / 2;
    p = xp - y;
    const Eigen::MatrixXd yr = y + r;
    Eigen::MatrixXd next = yr.cwiseMax(0.0) * (1.0 - opt.shrink);
    r = yr - next;
    const double move = (next - x).norm();
    x = std::move(next);
    out.iterations = it;
    if (move < opt.tolerance * scale) break;
  }
  // y satisfies the semidefinite constraint; drop its negative entries.
  out.nonnegative = y.cwiseMax(0.0);
  out.gap = (y - out.nonnegative).norm() / scale;
  return out;
}

RationalMatrix rationalize_nonnegative(const Eigen::MatrixXd& x, std::int64_t max_den) {
  const Index n = x.rows();
  RationalMatrix out(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = i; j < n; ++j) {
      Rational v = rationalize((x(i, j) + x(j, i)) / 2, max_den);
      if (v < 0) v = 0;
      out(i, j) = v;
      out(j, i) = v;
    }
  }
  return out;
}

}  // namespace

SpnOutcome spn_decompose(const RationalMatrix& q, const SpnOptions& options) {
  require_symmetric(q);
  const Index n = q.rows();
  SpnOutcome out;
  if (auto split = make_split(q, RationalMatrix::Zero(n, n))) {
    out.status = SpnStatus::Found;
    out.split = std::move(split);
    return out;
  }
  if ((q.array() >= Rational(0)).all()) {
    out.status = SpnStatus::Found;
    out.split = SpnSplit{RationalMatrix::Zero(n, n), q, Rational(0)};
    return out;
  }

  const Eigen::MatrixXd qd = q.cast<double>();
  const double scale = std::max(1.0, qd.cwiseAbs().maxCoeff());
  const Rational margin = rationalize(options.margin, options.max_denominator);
  bool converged = false;
  out.gap = std::numeric_limits<double>::infinity();
  for (double floor : {1e-6 * scale, 0.0}) {
    const Projection proj = project_split(qd, floor, scale, options);
    out.iterations += proj.iterations;
    out.gap = std::min(out.gap, proj.gap);
    if (proj.gap > options.stall_gap) continue;
    converged = true;
    RationalMatrix nn = rationalize_nonnegative(proj.nonnegative, options.max_denominator);
    if (auto split = make_split(q, nn)) {
      out.status = SpnStatus::Found;
      out.split = std::move(split);
      return out;
    }
    for (Index i = 0; i < n; ++i) {
      nn(i, i) = nn(i, i) > margin ? nn(i, i) - margin : Rational(0);
    }
    if (auto split = make_split(q, nn)) {
      out.status = SpnStatus::Found;
      out.split = std::move(split);
      return out;
    }
  }
  out.status = converged ? SpnStatus::Inconclusive : SpnStatus::NotFound;
  return out;
}

DifficultBox psd_slice_box(const RationalMatrix& psd, const Rational& lambda,
                           const Permutation& perm, Index first_difficult,
                           std::optional<RationalVector>* zero_point) {
  const Index n = psd.rows();
  DifficultBox box = DifficultBox::none(n);
  for (Index i = first_difficult; i < n; ++i) {
    const QpSolution sol = solve_slice(psd, perm(i), Rational(1), SliceKind::Semidefinite);
    if (sol.certified_lower && *sol.certified_lower > 0) {
      box.upper[static_cast<std::size_t>(i)] = slice_bound(lambda, *sol.certified_lower);
    } else if (zero_point && !*zero_point && sol.exact_point && *sol.certified_lower <= 0) {
      *zero_point = sol.exact_point;
    }
  }
  return box;
}

DifficultBox spn_box(const SpnSplit& split, const Rational& lambda, const Permutation& perm,
                     Index first_difficult) {
  return psd_slice_box(split.psd, lambda, perm, first_difficult);
}

Rational quadratic_leading(const LdltFactorization& psd_factor, const RationalMatrix& nonnegative,
                           Index k) {
  return psd_factor.diagonal(k) + nonnegative(k, k);
}

std::optional<IntRange> spn_quadratic_box(const LdltFactorization& psd_factor,
                                          const RationalMatrix& nonnegative,
                                          const Rational& lambda, Index k,
                                          std::span<const std::int64_t> point) {
  const Index n = psd_factor.dim();
  if (nonnegative.rows() != n || static_cast<Index>(point.size()) != n || k < 0 || k >= n) {
    throw DimensionMismatch("spn_quadratic_box: inconsistent dimensions");
  }
  const Rational a = quadratic_leading(psd_factor, nonnegative, k);
  if (a <= 0) {
    throw NonPositiveLeading("leading coefficient at coordinate " + std::to_string(k + 1) +
                             " is " + to_string(a));
  }
  const auto& l = psd_factor.lower;
  const auto& dd = psd_factor.diagonal;
  auto y = [&](Index j) { return Rational(point[static_cast<std::size_t>(j)]); };

  Rational shift(0);
  for (Index j = k + 1; j < n; ++j) shift += l(j, k) * y(j);
  Rational linear = 2 * dd(k) * shift;
  for (Index j = k + 1; j < n; ++j) linear += 2 * nonnegative(k, j) * y(j);
  Rational constant = dd(k) * shift * shift;
  for (Index i = k + 1; i < n; ++i) {
    Rational t = y(i);
    for (Index j = i + 1; j < n; ++j) t += l(j, i) * y(j);
    constant += dd(i) * t * t;
    for (Index j = k + 1; j < n; ++j) constant += nonnegative(i, j) * y(i) * y(j);
  }
  // a t^2 + linear t + constant <= lambda, completed to a square.
  const Rational center = linear / (2 * a);
  const Rational budget = lambda - constant + a * center * center;
  if (budget < 0) return std::nullopt;
  auto range = square_interval(a, center, budget);
  if (!range || range->hi < 0) return std::nullopt;
  if (range->lo < 0) range->lo = 0;
  return range;
}

}  // namespace copmin
