#include "copmin/solver.hpp"

#include <limits>
#include <memory>
#include <stdexcept>

#include "copmin/ldlt.hpp"

namespace copmin {

std::string_view to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::StrictlyCopositive:
      return "strictly-copositive";
    case SolveStatus::NotStrictlyCopositive:
      return "not-strictly-copositive";
    case SolveStatus::NotApplicable:
      return "not-applicable";
  }
  return "?";
}

std::string_view to_string(Strategy s) {
  switch (s) {
    case Strategy::PositiveDefinite:
      return "positive-definite";
    case Strategy::PsdSlice:
      return "psd-slice";
    case Strategy::OneDifficult:
      return "one-difficult";
    case Strategy::SpnSplit:
      return "spn-split";
    case Strategy::DiagonalSplitThenSpn:
      return "diagonal-split-then-spn";
  }
  return "?";
}

std::string_view to_string(StrategyChoice s) {
  switch (s) {
    case StrategyChoice::Auto:
      return "auto";
    case StrategyChoice::PositiveDefinite:
      return "pd";
    case StrategyChoice::PsdSlice:
      return "psd";
    case StrategyChoice::OneDifficult:
      return "one-difficult";
    case StrategyChoice::Spn:
      return "spn";
    case StrategyChoice::Split:
      return "split";
  }
  return "?";
}

std::string_view to_string(Classification c) {
  switch (c) {
    case Classification::StrictlyCopositive:
      return "strictly-copositive";
    case Classification::CopositiveNotStrictly:
      return "copositive-not-strictly";
    case Classification::NotCopositive:
      return "not-copositive";
    case Classification::Unknown:
      return "unknown";
  }
  return "?";
}

StrategyChoice parse_strategy_choice(std::string_view name) {
  for (auto c : {StrategyChoice::Auto, StrategyChoice::PositiveDefinite, StrategyChoice::PsdSlice,
                 StrategyChoice::OneDifficult, StrategyChoice::Spn, StrategyChoice::Split}) {
    if (to_string(c) == name) return c;
  }
  throw std::invalid_argument("unknown strategy '" + std::string(name) + "'");
}

std::optional<IntVector> integer_multiple(const RationalVector& x) {
  Integer den(1);
  for (Index i = 0; i < x.size(); ++i) den = mp::lcm(den, mp::denominator(x(i)));
  Integer g(0);
  std::vector<Integer> scaled;
  for (Index i = 0; i < x.size(); ++i) {
    scaled.push_back(mp::numerator(x(i)) * (den / mp::denominator(x(i))));
    g = mp::gcd(g, scaled.back());
  }
  if (g == 0) return std::nullopt;
  IntVector out;
  const Integer limit(std::numeric_limits<std::int64_t>::max());
  for (auto& v : scaled) {
    v /= g;
    if (v < 0 || v > limit) return std::nullopt;
    out.push_back(to_int64(v));
  }
  return out;
}

namespace {

constexpr const char* kNeedsBlocks = "needs-blocks-unresolved";
constexpr const char* kSpnNotFound = "spn-not-found";
constexpr const char* kSpnInconclusive = "spn-inconclusive";
constexpr const char* kUnbounded = "unbounded-coordinate";
constexpr const char* kNotApplicable = "strategy-not-applicable";

struct Plan {
  LagrangeExpansion expansion;
  DifficultBox box;
  Strategy strategy;
};

struct Attempt {
  std::optional<Plan> plan;
  std::string reason;
  /// Exact x >= 0, x != 0, Q[x] <= 0 found while bounding.
  std::optional<RationalVector> witness;
};

Attempt fail(std::string reason) { return Attempt{std::nullopt, std::move(reason), std::nullopt}; }

struct RescueData {
  LdltFactorization psd_factor;
  RationalMatrix nonnegative;
  Rational lambda;
  std::vector<bool> rescued;
};

// Bounds the remaining difficult coordinates by the quadratic inequality of
// the split; returns false if some leading coefficient is not positive.
bool attach_rescue(DifficultBox& box, const RationalMatrix& psd, const RationalMatrix& nonnegative,
                   const Permutation& perm, Index first_difficult, const Rational& lambda) {
  const Index n = perm.size();
  std::vector<bool> rescued(static_cast<std::size_t>(n), false);
  bool any = false;
  for (Index i = first_difficult; i < n; ++i) {
    if (!box.upper[static_cast<std::size_t>(i)]) rescued[static_cast<std::size_t>(i)] = any = true;
  }
  if (!any) return true;
  auto psd_factor = semidefinite_factor(symmetric_permute(psd, perm));
  if (!psd_factor) return false;
  auto data = std::make_shared<RescueData>(
      RescueData{std::move(*psd_factor), symmetric_permute(nonnegative, perm), lambda, rescued});
  for (Index i = first_difficult; i < n; ++i) {
    if (rescued[static_cast<std::size_t>(i)] &&
        quadratic_leading(data->psd_factor, data->nonnegative, i) <= 0) {
      return false;
    }
  }
  box.refine = [data](Index i, std::span<const std::int64_t> point) -> std::optional<IntRange> {
    if (!data->rescued[static_cast<std::size_t>(i)]) {
      return IntRange{Integer(0), Integer(std::numeric_limits<std::int64_t>::max())};
    }
    return spn_quadratic_box(data->psd_factor, data->nonnegative, data->lambda, i, point);
  };
  return true;
}

Attempt plan_psd(const RationalMatrix& q, const LdltFactorization& f, const Rational& lambda) {
  if (!is_positive_semidefinite(q)) return fail(kNotApplicable);
  std::optional<RationalVector> zero;
  DifficultBox box = psd_slice_box(q, lambda, f.perm, f.first_difficult, &zero);
  if (zero) return Attempt{std::nullopt, kUnbounded, zero};
  const Index n = q.rows();
  if (!attach_rescue(box, q, RationalMatrix::Zero(n, n), f.perm, f.first_difficult, lambda)) {
    return fail(kUnbounded);
  }
  return Attempt{Plan{lagrange_expansion(f), std::move(box), Strategy::PsdSlice}, {}, {}};
}

Attempt plan_one_difficult(const RationalMatrix& q, const LdltFactorization& f,
                           const Rational& lambda) {
  if (difficult_count(f) != 1) return fail(kNotApplicable);
  try {
    DifficultBox box = one_difficult_box(q, f, lambda);
    return Attempt{Plan{lagrange_expansion(f), std::move(box), Strategy::OneDifficult}, {}, {}};
  } catch (const NonPositiveMinimum& e) {
    return Attempt{std::nullopt, kUnbounded, e.witness};
  }
}

Attempt spn_failure(SpnStatus status) {
  return fail(status == SpnStatus::Inconclusive ? kSpnInconclusive : kSpnNotFound);
}

Attempt plan_spn(const RationalMatrix& q, const LdltFactorization& f, const Rational& lambda,
                 const SpnOptions& spn) {
  const SpnOutcome outcome = spn_decompose(q, spn);
  if (!outcome.split) return spn_failure(outcome.status);
  DifficultBox box = spn_box(*outcome.split, lambda, f.perm, f.first_difficult);
  if (!attach_rescue(box, outcome.split->psd, outcome.split->nonnegative, f.perm,
                     f.first_difficult, lambda)) {
    return fail(kUnbounded);
  }
  return Attempt{Plan{lagrange_expansion(f), std::move(box), Strategy::SpnSplit}, {}, {}};
}

// Enumerate with the expansion of Q - delta*I and bound its difficult
// coordinates through a split of Q, or failing that one assembled from a split
// of the reduced matrix.
Attempt plan_split(const RationalMatrix& q, const Rational& lambda, const SpnOptions& spn) {
  const auto sf = split_until_factorable(q, PivotStrategy::Phase1Then2);
  if (!sf) return fail(kNeedsBlocks);
  const auto& f = sf->factorization;
  const Index n = q.rows();
  DifficultBox box = DifficultBox::none(n);
  if (difficult_count(f) > 0) {
    SpnOutcome outcome = spn_decompose(q, spn);
    std::optional<SpnSplit> full = outcome.split;
    if (!full) {
      outcome = spn_decompose(sf->split.reduced, spn);
      if (!outcome.split) return spn_failure(outcome.status);
      full = SpnSplit{outcome.split->psd, outcome.split->nonnegative + sf->split.nonnegative,
                      outcome.split->margin};
    }
    box = spn_box(*full, lambda, f.perm, f.first_difficult);
    if (!attach_rescue(box, full->psd, full->nonnegative, f.perm, f.first_difficult, lambda)) {
      return fail(kUnbounded);
    }
  }
  return Attempt{Plan{lagrange_expansion(f), std::move(box), Strategy::DiagonalSplitThenSpn},
                 {},
                 {}};
}

Attempt make_plan(const RationalMatrix& q, const Rational& lambda, const SolverOptions& options) {
  const auto choice = options.strategy;
  if (choice == StrategyChoice::Split) return plan_split(q, lambda, options.spn);

  auto outcome = ldlt_decompose(q, PivotStrategy::Phase1Then2);
  if (std::holds_alternative<NeedsBlocks>(outcome)) {
    if (choice != StrategyChoice::Auto) return fail(kNotApplicable);
    return plan_split(q, lambda, options.spn);
  }
  const auto& f = std::get<LdltFactorization>(outcome);

  switch (choice) {
    case StrategyChoice::PositiveDefinite:
      if (difficult_count(f) != 0) return fail(kNotApplicable);
      return Attempt{Plan{lagrange_expansion(f), DifficultBox::none(f.dim()),
                          Strategy::PositiveDefinite},
                     {},
                     {}};
    case StrategyChoice::PsdSlice:
      return plan_psd(q, f, lambda);
    case StrategyChoice::OneDifficult:
      return plan_one_difficult(q, f, lambda);
    case StrategyChoice::Spn:
      return plan_spn(q, f, lambda, options.spn);
    case StrategyChoice::Split:
    case StrategyChoice::Auto:
      break;
  }

  if (difficult_count(f) == 0) {
    return Attempt{
        Plan{lagrange_expansion(f), DifficultBox::none(f.dim()), Strategy::PositiveDefinite},
        {},
        {}};
  }
  Attempt last = fail(kNotApplicable);
  if (is_positive_semidefinite(q)) {
    last = plan_psd(q, f, lambda);
    if (last.plan || last.witness) return last;
  }
  if (difficult_count(f) == 1) {
    last = plan_one_difficult(q, f, lambda);
    if (last.plan || last.witness) return last;
  }
  return plan_spn(q, f, lambda, options.spn);
}

void set_witness(CopMinResult& r, const RationalMatrix& q, const RationalVector& x) {
  r.real_witness = x;
  r.witness = integer_multiple(x);
  r.witness_value = r.witness ? evaluate_form(q, *r.witness) : evaluate_form(q, x);
}

// Q_ii <= 0 settles the question without any enumeration.
std::optional<CopMinResult> diagonal_witness(const RationalMatrix& q) {
  const Index n = q.rows();
  auto unit = [n](Index i, std::int64_t t) {
    IntVector z(static_cast<std::size_t>(n), 0);
    z[static_cast<std::size_t>(i)] = t;
    return z;
  };
  CopMinResult r;
  r.status = SolveStatus::NotStrictlyCopositive;
  for (Index i = 0; i < n; ++i) {
    if (q(i, i) < 0) {
      r.witness = unit(i, 1);
      r.witness_value = q(i, i);
      return r;
    }
  }
  for (Index i = 0; i < n; ++i) {
    if (q(i, i) != 0) continue;
    for (Index j = 0; j < n; ++j) {
      if (j == i || q(i, j) >= 0) continue;
      // t e_i + e_j has value 2 t Q_ij + Q_jj < 0.
      const Integer t = floor_of(q(j, j) / (-2 * q(i, j))) + 1;
      IntVector z = unit(j, 1);
      z[static_cast<std::size_t>(i)] = to_int64(t);
      r.witness_value = evaluate_form(q, z);
      r.witness = std::move(z);
      return r;
    }
  }
  for (Index i = 0; i < n; ++i) {
    if (q(i, i) == 0) {
      r.witness = unit(i, 1);
      r.witness_value = Rational(0);
      return r;
    }
  }
  return std::nullopt;
}

std::vector<std::optional<std::int64_t>> original_box(const Plan& plan) {
  const Index n = plan.expansion.dim();
  std::vector<std::optional<std::int64_t>> out(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(plan.expansion.perm(i))] =
        plan.box.upper[static_cast<std::size_t>(i)];
  }
  return out;
}

}  // namespace

CopMinResult min_cop(const RationalMatrix& q, const SolverOptions& options) {
  require_symmetric(q);
  if (auto r = diagonal_witness(q)) return *r;

  Rational lambda = q.diagonal().minCoeff();
  if (options.lambda && *options.lambda < lambda) lambda = *options.lambda;

  CopMinResult r;
  Attempt attempt = make_plan(q, lambda, options);
  if (!attempt.plan) {
    if (attempt.witness) {
      r.status = SolveStatus::NotStrictlyCopositive;
      set_witness(r, q, *attempt.witness);
    } else {
      r.status = SolveStatus::NotApplicable;
      r.reason = attempt.reason;
    }
    return r;
  }
  const Plan& plan = *attempt.plan;
  r.strategy = plan.strategy;
  r.box = original_box(plan);
  try {
    auto found = minimize(q, plan.expansion, lambda, plan.box, options.enumeration);
    r.nodes = found.nodes;
    if (found.vectors.empty()) {
      r.status = SolveStatus::NotApplicable;
      r.reason = "no-vector-below-lambda";
      return r;
    }
    r.status = SolveStatus::StrictlyCopositive;
    r.minimum = found.lambda;
    r.representatives = std::move(found.vectors);
  } catch (const ZeroValueFound& e) {
    r.status = SolveStatus::NotStrictlyCopositive;
    r.witness = e.witness;
    r.witness_value = e.value;
  }
  return r;
}

CopMinResult list_below(const RationalMatrix& q, const Rational& lambda,
                        const SolverOptions& options) {
  require_symmetric(q);
  if (auto r = diagonal_witness(q)) return *r;
  CopMinResult r;
  Attempt attempt = make_plan(q, lambda, options);
  if (!attempt.plan) {
    if (attempt.witness) {
      r.status = SolveStatus::NotStrictlyCopositive;
      set_witness(r, q, *attempt.witness);
    } else {
      r.status = SolveStatus::NotApplicable;
      r.reason = attempt.reason;
    }
    return r;
  }
  r.strategy = attempt.plan->strategy;
  r.box = original_box(*attempt.plan);
  auto found = enumerate_below(q, attempt.plan->expansion, lambda, attempt.plan->box,
                               options.enumeration);
  r.nodes = found.nodes;
  for (const auto& z : found.vectors) {
    if (evaluate_form(q, z) <= 0) {
      r.status = SolveStatus::NotStrictlyCopositive;
      r.witness = z;
      r.witness_value = evaluate_form(q, z);
      return r;
    }
  }
  r.status = SolveStatus::StrictlyCopositive;
  r.minimum = lambda;
  r.representatives = std::move(found.vectors);
  return r;
}

Classification classify(const RationalMatrix& q, const CopMinResult& result,
                        const SpnOptions& spn) {
  switch (result.status) {
    case SolveStatus::StrictlyCopositive:
      return Classification::StrictlyCopositive;
    case SolveStatus::NotApplicable:
      return Classification::Unknown;
    case SolveStatus::NotStrictlyCopositive:
      break;
  }
  if (result.witness_value && *result.witness_value < 0) {
    return Classification::NotCopositive;
  }
  // A zero value proves copositivity fails to be strict; copositivity itself
  // needs a split.
  if (spn_decompose(q, spn).split) {
    return Classification::CopositiveNotStrictly;
  }
  return Classification::Unknown;
}

Classification classify(const RationalMatrix& q, const SolverOptions& options) {
  return classify(q, min_cop(q, options), options.spn);
}

}  // namespace copmin
