#include "copmin/enumeration.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <limits>
#include <thread>

#include "copmin/matrix_io.hpp"

namespace copmin {

ZeroValueFound::ZeroValueFound(IntVector witness, Rational value)
    : Error("nonzero vector (" + format_vector(witness) + ") has value " + to_string(value)),
      witness(std::move(witness)),
      value(std::move(value)) {}

NodeLimitExceeded::NodeLimitExceeded(std::uint64_t limit)
    : Error("enumeration exceeded " + std::to_string(limit) + " nodes"), limit(limit) {}

UnboundedCoordinate::UnboundedCoordinate(Index coordinate)
    : Error("difficult coordinate " + std::to_string(coordinate + 1) + " has no bound"),
      coordinate(coordinate) {}

namespace {

enum class Mode { Below, Minimize };

struct Range {
  std::int64_t lo;
  std::int64_t hi;
};

class Search {
 public:
  Search(const RationalMatrix& q, const LagrangeExpansion& e, const DifficultBox& box, Mode mode,
         Rational lambda, std::atomic<std::uint64_t>& nodes, std::uint64_t max_nodes)
      : q_(q),
        e_(e),
        box_(box),
        mode_(mode),
        lambda_(std::move(lambda)),
        nodes_(nodes),
        max_nodes_(max_nodes),
        y_(static_cast<std::size_t>(e.dim()), 0) {}

  /// Range of the outermost coordinate.
  std::optional<Range> top_range() { return range_at(e_.dim() - 1, Rational(0), Rational(0)); }

  /// Explores the whole tree, or only the branch with the top coordinate fixed.
  void run(std::optional<std::int64_t> top_value) {
    descend(e_.dim() - 1, Rational(0), false, top_value);
  }

  const Rational& lambda() const { return lambda_; }
  std::vector<IntVector>& found() { return found_; }

 private:
  Rational shift_at(Index level) const {
    Rational shift(0);
    for (Index j = level + 1; j < e_.dim(); ++j) {
      const auto yj = y_[static_cast<std::size_t>(j)];
      if (yj != 0) {
        shift += e_.inner(level, j) * Rational(yj);
      }
    }
    return shift;
  }

  bool is_difficult(Index level) const { return level >= e_.first_difficult; }

  std::optional<Range> range_at(Index level, const Rational& shift, const Rational& consumed) {
    if (is_difficult(level)) {
      const auto& upper = box_.upper[static_cast<std::size_t>(level)];
      if (!upper && !box_.refine) {
        throw UnboundedCoordinate(level);
      }
      Range r{0, upper.value_or(std::numeric_limits<std::int64_t>::max())};
      if (box_.refine) {
        const auto refined = box_.refine(level, y_);
        if (!refined || refined->empty() || refined->hi < 0) {
          return std::nullopt;
        }
        r.lo = std::max<std::int64_t>(0, to_int64(std::max(refined->lo, Integer(0))));
        if (refined->hi < Integer(r.hi)) {
          r.hi = to_int64(refined->hi);
        }
      }
      if (r.lo > r.hi) {
        return std::nullopt;
      }
      return r;
    }
    const Rational budget = lambda_ - consumed;
    if (budget < 0) {
      return std::nullopt;
    }
    const auto interval = square_interval(e_.outer(level), shift, budget);
    if (!interval || interval->hi < 0) {
      return std::nullopt;
    }
    return Range{to_int64(std::max(interval->lo, Integer(0))), to_int64(interval->hi)};
  }

  void count_node() {
    if (nodes_.fetch_add(1, std::memory_order_relaxed) + 1 > max_nodes_) {
      throw NodeLimitExceeded(max_nodes_);
    }
  }

  void descend(Index level, const Rational& consumed, bool nonzero_above,
               std::optional<std::int64_t> only_value) {
    const Rational shift = shift_at(level);
    const auto range = range_at(level, shift, consumed);
    if (!range) {
      return;
    }
    const bool easy = !is_difficult(level);
    const auto& outer = e_.outer(level);
    std::int64_t lo = range->lo;
    std::int64_t hi = range->hi;
    if (only_value) {
      if (*only_value < lo || *only_value > hi) {
        return;
      }
      lo = hi = *only_value;
    }
    for (std::int64_t v = lo; v <= hi; ++v) {
      if (level == 0 && v == 0 && !nonzero_above) {
        continue;
      }
      const Rational t = Rational(v) + shift;
      const Rational next = consumed + outer * t * t;
      if (easy && next > lambda_) {
        // Lambda may have shrunk since the range was computed.
        if (t >= 0) {
          break;
        }
        continue;
      }
      y_[static_cast<std::size_t>(level)] = v;
      count_node();
      if (level == 0) {
        leaf();
      } else {
        descend(level - 1, next, nonzero_above || v != 0, std::nullopt);
      }
    }
    y_[static_cast<std::size_t>(level)] = 0;
  }

  void leaf() {
    IntVector z = unpermute(e_.perm, y_);
    const Rational value = evaluate_form(q_, z);
    if (mode_ == Mode::Below) {
      if (value <= lambda_) {
        found_.push_back(std::move(z));
      }
      return;
    }
    if (value <= 0) {
      throw ZeroValueFound(std::move(z), value);
    }
    if (value < lambda_) {
      lambda_ = value;
      found_.clear();
      found_.push_back(std::move(z));
    } else if (value == lambda_) {
      found_.push_back(std::move(z));
    }
  }

  const RationalMatrix& q_;
  const LagrangeExpansion& e_;
  const DifficultBox& box_;
  Mode mode_;
  Rational lambda_;
  std::atomic<std::uint64_t>& nodes_;
  std::uint64_t max_nodes_;
  std::vector<std::int64_t> y_;
  std::vector<IntVector> found_;
};

void check_inputs(const RationalMatrix& q, const LagrangeExpansion& e, const DifficultBox& box) {
  if (q.rows() != q.cols() || q.rows() != e.dim() || e.perm.size() != e.dim()) {
    throw DimensionMismatch("matrix and expansion dimensions differ");
  }
  if (static_cast<Index>(box.upper.size()) != e.dim()) {
    throw DimensionMismatch("difficult box has wrong length");
  }
  if (e.dim() < 1) {
    throw DimensionMismatch("empty expansion");
  }
}

EnumerationResult run_search(const RationalMatrix& q, const LagrangeExpansion& e,
                             const Rational& lambda, const DifficultBox& box, Mode mode,
                             const EnumerationOptions& options) {
  check_inputs(q, e, box);
  std::atomic<std::uint64_t> nodes{0};
  EnumerationResult out;

  std::optional<Range> top;
  if (options.threads > 1) {
    top = Search(q, e, box, mode, lambda, nodes, options.max_nodes).top_range();
  }
  if (!top || top->hi - top->lo < 1) {
    Search s(q, e, box, mode, lambda, nodes, options.max_nodes);
    s.run(std::nullopt);
    out.lambda = s.lambda();
    out.vectors = std::move(s.found());
  } else {
    // One independent search per value of the outermost coordinate.
    const auto count = static_cast<std::size_t>(top->hi - top->lo + 1);
    std::vector<std::optional<Search>> parts(count);
    std::vector<std::exception_ptr> errors(count);
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
      for (std::size_t i; (i = next.fetch_add(1)) < count;) {
        try {
          parts[i].emplace(q, e, box, mode, lambda, nodes, options.max_nodes);
          parts[i]->run(top->lo + static_cast<std::int64_t>(i));
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    };
    std::vector<std::thread> pool;
    const auto workers = std::min<std::size_t>(options.threads, count);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    for (const auto& err : errors) {
      if (err) std::rethrow_exception(err);
    }
    out.lambda = lambda;
    for (auto& part : parts) {
      if (mode == Mode::Minimize && !part->found().empty() && part->lambda() < out.lambda) {
        out.lambda = part->lambda();
        out.vectors.clear();
      }
      if (mode == Mode::Below || part->lambda() == out.lambda) {
        for (auto& v : part->found()) out.vectors.push_back(std::move(v));
      }
    }
  }
  std::sort(out.vectors.begin(), out.vectors.end());
  out.vectors.erase(std::unique(out.vectors.begin(), out.vectors.end()), out.vectors.end());
  out.nodes = nodes.load();
  return out;
}

}  // namespace

EnumerationResult enumerate_below(const RationalMatrix& q, const LagrangeExpansion& expansion,
                                  const Rational& lambda, const DifficultBox& box,
                                  const EnumerationOptions& options) {
  return run_search(q, expansion, lambda, box, Mode::Below, options);
}

EnumerationResult minimize(const RationalMatrix& q, const LagrangeExpansion& expansion,
                           const Rational& lambda0, const DifficultBox& box,
                           const EnumerationOptions& options) {
  return run_search(q, expansion, lambda0, box, Mode::Minimize, options);
}

EnumerationResult minimize(const RationalMatrix& q, const LagrangeExpansion& expansion,
                           const Rational& lambda0, const BoxProvider& box_provider,
                           const EnumerationOptions& options) {
  return minimize(q, expansion, lambda0, box_provider(lambda0), options);
}

}  // namespace copmin
