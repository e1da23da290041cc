#include "copmin/oracle.hpp"

#include <algorithm>
#include <limits>

namespace copmin {

namespace {

std::uint64_t box_size(const std::vector<std::int64_t>& box, std::uint64_t guard) {
  std::uint64_t total = 1;
  for (auto b : box) {
    if (b < 0) throw std::invalid_argument("box bounds must be nonnegative");
    const auto width = static_cast<std::uint64_t>(b) + 1;
    if (total > guard / width) throw BoxTooLarge("box exceeds the point guard");
    total *= width;
  }
  return total;
}

// Visits every point of the box in odometer order, skipping the origin.
template <typename Visit>
void for_each_point(const std::vector<std::int64_t>& box, Visit visit) {
  IntVector z(box.size(), 0);
  for (;;) {
    std::size_t i = 0;
    while (i < z.size() && z[i] == box[i]) z[i++] = 0;
    if (i == z.size()) return;
    ++z[i];
    visit(z);
  }
}

template <typename T>
struct Best {
  std::optional<T> value;
  std::vector<IntVector> vectors;

  void offer(const T& v, const IntVector& z) {
    if (!value || v < *value) {
      value = v;
      vectors.assign(1, z);
    } else if (v == *value) {
      vectors.push_back(z);
    }
  }
};

// Integer matrix d*Q when every entry and every value over the box fits in
// 128 bits with room to spare.
std::optional<std::pair<Matrix<__int128>, Integer>> scaled_integer(
    const RationalMatrix& q, const std::vector<std::int64_t>& box) {
  Integer den(1);
  for (Index i = 0; i < q.rows(); ++i) {
    for (Index j = 0; j < q.cols(); ++j) den = mp::lcm(den, mp::denominator(q(i, j)));
  }
  Integer norm(0);
  Integer reach(0);
  for (auto b : box) reach += b;
  Matrix<__int128> out(q.rows(), q.cols());
  const Integer limit = Integer(1) << 62;
  for (Index i = 0; i < q.rows(); ++i) {
    for (Index j = 0; j < q.cols(); ++j) {
      const Integer v = mp::numerator(q(i, j)) * (den / mp::denominator(q(i, j)));
      if (mp::abs(v) > limit) return std::nullopt;
      norm = std::max(norm, Integer(mp::abs(v)));
      out(i, j) = static_cast<__int128>(to_int64(v));
    }
  }
  if (norm * reach * reach >= (Integer(1) << 120)) return std::nullopt;
  return std::make_pair(std::move(out), den);
}

}  // namespace

OracleResult brute_force_min(const RationalMatrix& q, const std::vector<std::int64_t>& box,
                             std::uint64_t guard) {
  require_symmetric(q);
  if (static_cast<Index>(box.size()) != q.rows()) {
    throw DimensionMismatch("box length does not match matrix dimension");
  }
  OracleResult out;
  out.evaluated = box_size(box, guard) - 1;
  if (out.evaluated == 0) throw std::invalid_argument("box holds no nonzero point");

  const Index n = q.rows();
  if (auto scaled = scaled_integer(q, box)) {
    const auto& m = scaled->first;
    Best<__int128> best;
    for_each_point(box, [&](const IntVector& z) {
      __int128 sum = 0;
      for (Index i = 0; i < n; ++i) {
        const __int128 zi = z[static_cast<std::size_t>(i)];
        if (zi == 0) continue;
        __int128 row = 0;
        for (Index j = 0; j < n; ++j) row += m(i, j) * z[static_cast<std::size_t>(j)];
        sum += zi * row;
      }
      best.offer(sum, z);
    });
    const __int128 v = *best.value;
    const bool negative = v < 0;
    unsigned __int128 mag = negative ? static_cast<unsigned __int128>(-v)
                                     : static_cast<unsigned __int128>(v);
    Integer num(0);
    for (int shift = 96; shift >= 0; shift -= 32) {
      num = (num << 32) + Integer(static_cast<std::uint64_t>((mag >> shift) & 0xffffffffu));
    }
    if (negative) num = -num;
    out.minimum = Rational(num, scaled->second);
    out.vectors = std::move(best.vectors);
  } else {
    Best<Rational> best;
    for_each_point(box, [&](const IntVector& z) { best.offer(evaluate_form(q, z), z); });
    out.minimum = *best.value;
    out.vectors = std::move(best.vectors);
  }
  std::sort(out.vectors.begin(), out.vectors.end());
  return out;
}

namespace {

bool search(const SubsetSumInstance& inst, std::size_t i, std::int64_t remaining,
            std::vector<int>& x) {
  if (i == inst.a.size()) return remaining == 0;
  if (remaining >= inst.a[i]) {
    x[i] = 1;
    if (search(inst, i + 1, remaining - inst.a[i], x)) return true;
  }
  x[i] = 0;
  return search(inst, i + 1, remaining, x);
}

}  // namespace

std::optional<std::vector<int>> subset_sum_brute(const SubsetSumInstance& inst) {
  if (inst.a.size() > 25) throw std::invalid_argument("subset_sum_brute supports n <= 25");
  std::vector<int> x(inst.a.size(), 0);
  if (search(inst, 0, inst.s, x)) return x;
  return std::nullopt;
}

}  // namespace copmin
