#include "copmin/ldlt.hpp"

#include <stdexcept>

namespace copmin {

std::string_view to_string(PivotStrategy s) {
  switch (s) {
    case PivotStrategy::None:
      return "none";
    case PivotStrategy::Phase1:
      return "phase1";
    case PivotStrategy::Phase1Then2:
      return "phase12";
  }
  return "?";
}

PivotStrategy parse_pivot_strategy(std::string_view name) {
  if (name == "none") return PivotStrategy::None;
  if (name == "phase1") return PivotStrategy::Phase1;
  if (name == "phase12") return PivotStrategy::Phase1Then2;
  throw std::invalid_argument("unknown pivot strategy '" + std::string(name) + "'");
}

namespace {

enum class Rule {
  InOrder,
  LargestPositiveFirst,
  // Smallest positive pivot among the first `limit` positions; used on the
  // semidefinite matrix R of the second phase.
  SmallestPositiveLeading,
};

struct Elimination {
  RationalMatrix work;
  std::vector<Index> order;
  RationalMatrix lower;
  RationalVector diag;
};

void swap_positions(Elimination& el, Index s, Index p) {
  if (s == p) {
    return;
  }
  el.work.row(s).swap(el.work.row(p));
  el.work.col(s).swap(el.work.col(p));
  std::swap(el.order[static_cast<std::size_t>(s)], el.order[static_cast<std::size_t>(p)]);
  for (Index c = 0; c < s; ++c) {
    std::swap(el.lower(s, c), el.lower(p, c));
  }
}

bool row_is_zero(const RationalMatrix& w, Index s) {
  for (Index j = s; j < w.cols(); ++j) {
    if (w(s, j) != 0) {
      return false;
    }
  }
  return true;
}

bool remainder_is_zero(const RationalMatrix& w, Index s) {
  for (Index i = s; i < w.rows(); ++i) {
    if (!row_is_zero(w, i)) {
      return false;
    }
  }
  return true;
}

void eliminate_at(Elimination& el, Index s) {
  const Index n = el.work.rows();
  const Rational e = el.work(s, s);
  el.diag(s) = e;
  if (e == 0) {
    // Zero row: nothing to eliminate.
    return;
  }
  for (Index i = s + 1; i < n; ++i) {
    el.lower(i, s) = el.work(i, s) / e;
  }
  for (Index i = s + 1; i < n; ++i) {
    if (el.work(i, s) == 0) {
      continue;
    }
    for (Index j = s + 1; j <= i; ++j) {
      el.work(i, j) -= el.lower(i, s) * el.work(j, s);
      el.work(j, i) = el.work(i, j);
    }
  }
  for (Index i = s + 1; i < n; ++i) {
    el.work(i, s) = 0;
    el.work(s, i) = 0;
  }
}

enum class Pick { Pivot, ZeroRow, AllZero, Blocks };

struct Choice {
  Pick kind;
  Index index = 0;
};

Choice choose(const Elimination& el, Index s, Rule rule, Index limit) {
  const Index n = el.work.rows();
  const auto& w = el.work;
  switch (rule) {
    case Rule::InOrder: {
      if (w(s, s) != 0) return {Pick::Pivot, s};
      if (row_is_zero(w, s)) return {Pick::ZeroRow, s};
      for (Index p = s + 1; p < n; ++p) {
        if (w(p, p) != 0) return {Pick::Pivot, p};
      }
      return {Pick::Blocks};
    }
    case Rule::LargestPositiveFirst: {
      Index best = -1;
      for (Index p = s; p < n; ++p) {
        if (w(p, p) > 0 && (best < 0 || w(p, p) > w(best, best))) best = p;
      }
      if (best >= 0) return {Pick::Pivot, best};
      for (Index p = s; p < n; ++p) {
        if (w(p, p) < 0 && (best < 0 || w(p, p) < w(best, best))) best = p;
      }
      if (best >= 0) return {Pick::Pivot, best};
      return remainder_is_zero(w, s) ? Choice{Pick::AllZero} : Choice{Pick::Blocks};
    }
    case Rule::SmallestPositiveLeading: {
      Index best = -1;
      for (Index p = s; p < limit; ++p) {
        if (w(p, p) > 0 && (best < 0 || w(p, p) < w(best, best))) best = p;
      }
      if (best >= 0) return {Pick::Pivot, best};
      return {Pick::ZeroRow, s};
    }
  }
  return {Pick::Blocks};
}

std::variant<Elimination, NeedsBlocks> eliminate(const RationalMatrix& q, Rule rule,
                                                 Index limit) {
  const Index n = q.rows();
  Elimination el{q, {}, RationalMatrix::Identity(n, n), RationalVector::Zero(n)};
  el.order.resize(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) el.order[static_cast<std::size_t>(i)] = i;

  for (Index s = 0; s < n; ++s) {
    if (rule == Rule::SmallestPositiveLeading && s >= limit) {
      break;
    }
    const Choice c = choose(el, s, rule, limit);
    switch (c.kind) {
      case Pick::Blocks: {
        NeedsBlocks nb;
        nb.remaining.assign(el.order.begin() + s, el.order.end());
        nb.remainder = el.work.bottomRightCorner(n - s, n - s);
        return nb;
      }
      case Pick::AllZero:
        // Trailing zero outer coefficients; L stays the identity there.
        return el;
      case Pick::ZeroRow:
        swap_positions(el, s, c.index);
        el.diag(s) = 0;
        break;
      case Pick::Pivot:
        swap_positions(el, s, c.index);
        eliminate_at(el, s);
        break;
    }
  }
  return el;
}

Index first_nonpositive(const RationalVector& d) {
  for (Index i = 0; i < d.size(); ++i) {
    if (d(i) <= 0) return i;
  }
  return d.size();
}

LdltFactorization to_factorization(Elimination el) {
  LdltFactorization f;
  f.perm = Permutation(std::move(el.order));
  f.lower = std::move(el.lower);
  f.diagonal = std::move(el.diag);
  f.first_difficult = first_nonpositive(f.diagonal);
  return f;
}

// Second phase: reorder the easy block so its outer coefficients increase.
LdltFactorization reorder_easy_block(const LdltFactorization& first) {
  const Index n = first.dim();
  const Index k = first.first_difficult;
  if (k <= 1) {
    return first;
  }
  RationalVector easy = first.diagonal;
  for (Index i = k; i < n; ++i) easy(i) = 0;
  const RationalMatrix r = first.lower * easy.asDiagonal() * first.lower.transpose();

  auto second = std::get<Elimination>(eliminate(r, Rule::SmallestPositiveLeading, k));

  LdltFactorization out;
  out.perm = compose(first.perm, Permutation(second.order));
  out.lower = first.lower;
  out.lower.leftCols(k) = second.lower.leftCols(k);
  out.diagonal = first.diagonal;
  out.diagonal.head(k) = second.diag.head(k);
  out.first_difficult = first_nonpositive(out.diagonal);
  return out;
}

}  // namespace

LdltStep ldlt_step(const RationalMatrix& q, Index pivot) {
  require_symmetric(q);
  if (pivot < 0 || pivot >= q.rows()) {
    throw std::out_of_range("pivot index out of range");
  }
  if (q(pivot, pivot) == 0) {
    throw ZeroPivot("zero pivot at index " + std::to_string(pivot + 1));
  }
  const Index n = q.rows();
  const RationalMatrix t = symmetric_permute(q, Permutation::transposition(n, 0, pivot));
  LdltStep step;
  step.pivot = t(0, 0);
  const RationalVector c = t.col(0).tail(n - 1);
  step.column = c / step.pivot;
  step.remainder = t.bottomRightCorner(n - 1, n - 1) - step.column * c.transpose();
  return step;
}

LdltOutcome ldlt_decompose(const RationalMatrix& q, PivotStrategy strategy) {
  require_symmetric(q);
  const Rule rule = strategy == PivotStrategy::None ? Rule::InOrder : Rule::LargestPositiveFirst;
  auto result = eliminate(q, rule, q.rows());
  if (auto* nb = std::get_if<NeedsBlocks>(&result)) {
    return std::move(*nb);
  }
  auto f = to_factorization(std::get<Elimination>(std::move(result)));
  if (strategy == PivotStrategy::Phase1Then2) {
    return reorder_easy_block(f);
  }
  return f;
}

std::optional<LdltFactorization> try_factorize(const RationalMatrix& q, PivotStrategy strategy) {
  auto outcome = ldlt_decompose(q, strategy);
  if (auto* f = std::get_if<LdltFactorization>(&outcome)) {
    return std::move(*f);
  }
  return std::nullopt;
}

RationalMatrix reconstruct(const LdltFactorization& f) {
  return f.lower * f.diagonal.asDiagonal() * f.lower.transpose();
}

LagrangeExpansion lagrange_expansion(const LdltFactorization& f) {
  LagrangeExpansion e;
  e.perm = f.perm;
  e.outer = f.diagonal;
  e.inner = f.lower.transpose();
  e.first_difficult = f.first_difficult;
  return e;
}

Index difficult_count(const LdltFactorization& f) {
  return f.dim() - f.first_difficult;
}

Inertia exact_inertia(const LdltFactorization& f) {
  Inertia in;
  for (Index i = 0; i < f.dim(); ++i) {
    const auto& d = f.diagonal(i);
    if (d > 0) {
      ++in.positive;
    } else if (d < 0) {
      ++in.negative;
    } else {
      ++in.zero;
    }
  }
  return in;
}

std::optional<LdltFactorization> semidefinite_factor(const RationalMatrix& q) {
  require_symmetric(q);
  const Index n = q.rows();
  Elimination el{q, {}, RationalMatrix::Identity(n, n), RationalVector::Zero(n)};
  el.order.resize(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) el.order[static_cast<std::size_t>(i)] = i;
  for (Index s = 0; s < n; ++s) {
    if (el.work(s, s) < 0) {
      return std::nullopt;
    }
    if (el.work(s, s) == 0 && !row_is_zero(el.work, s)) {
      return std::nullopt;
    }
    eliminate_at(el, s);
  }
  return to_factorization(std::move(el));
}

bool is_positive_semidefinite(const RationalMatrix& q) {
  return semidefinite_factor(q).has_value();
}

DiagonalSplit diagonal_split(const RationalMatrix& q, const Rational& delta) {
  require_symmetric(q);
  if (delta < 0) {
    throw std::invalid_argument("diagonal_split needs delta >= 0");
  }
  for (Index i = 0; i < q.rows(); ++i) {
    if (q(i, i) <= delta) {
      throw NonPositiveDiagonal("diagonal entry " + std::to_string(i + 1) + " is " +
                                to_string(q(i, i)) + ", not above delta " + to_string(delta));
    }
  }
  DiagonalSplit out;
  out.delta = delta;
  out.nonnegative = RationalMatrix::Identity(q.rows(), q.cols()) * delta;
  out.reduced = q - out.nonnegative;
  return out;
}

std::optional<SplitFactorization> split_until_factorable(const RationalMatrix& q,
                                                         PivotStrategy strategy,
                                                         int max_retries) {
  Rational delta = q.diagonal().minCoeff() / 2;
  for (int attempt = 1; attempt <= max_retries + 1; ++attempt, delta /= 2) {
    DiagonalSplit split = diagonal_split(q, delta);
    if (auto f = try_factorize(split.reduced, strategy)) {
      return SplitFactorization{std::move(split), std::move(*f), attempt};
    }
  }
  return std::nullopt;
}

}  // namespace copmin
