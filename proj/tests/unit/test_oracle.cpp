#include <doctest.h>

#include "copmin/gadgets.hpp"
#include "copmin/oracle.hpp"
#include "support.hpp"

using namespace copmin;
using namespace copmin::testing;

TEST_SUITE("oracle") {
  TEST_CASE("worked example") {
    const auto r = brute_force_min(named_matrix("example1"), {3, 3, 3});
    CHECK(r.minimum == 2);
    CHECK(r.vectors == std::vector<IntVector>{{0, 0, 1}, {0, 1, 0}, {0, 1, 1}});
    CHECK(r.evaluated == 63);
  }

  TEST_CASE("identity and uneven boxes") {
    const auto r = brute_force_min(RationalMatrix::Identity(2, 2), {1, 1});
    CHECK(r.minimum == 1);
    CHECK(r.vectors == std::vector<IntVector>{{0, 1}, {1, 0}});
    const auto u = brute_force_min(int_mat({{4, 0}, {0, 1}}), {0, 2});
    CHECK(u.minimum == 1);
    CHECK(u.vectors == std::vector<IntVector>{{0, 1}});
  }

  TEST_CASE("fractional entries") {
    const auto fr = brute_force_min(mat({{"1/2", "-1/3"}, {"-1/3", "1/2"}}), {2, 2});
    CHECK(fr.minimum == r("1/3"));
    CHECK(fr.vectors == std::vector<IntVector>{{1, 1}});
  }

  TEST_CASE("large entries take the exact path") {
    RationalMatrix q = RationalMatrix::Identity(2, 2) * Rational(Integer("1000000000000000000000"));
    const auto res = brute_force_min(q, {2, 2});
    CHECK(res.minimum == Rational(Integer("1000000000000000000000")));
    CHECK(res.vectors.size() == 2);
  }

  TEST_CASE("gadget without a solution stays above n") {
    const auto r = brute_force_min(subset_sum_gadget({{2, 4, 6}, 5}), {2, 2, 2, 2});
    CHECK(r.minimum > 3);
  }

  TEST_CASE("subset-sum search") {
    CHECK(subset_sum_brute({{1, 2, 3}, 3}) == std::vector<int>{1, 1, 0});
    CHECK(!subset_sum_brute({{2, 4, 6}, 5}).has_value());
    CHECK(subset_sum_brute({{5, 5, 1}, 10}) == std::vector<int>{1, 1, 0});
  }

  TEST_CASE("guards") {
    CHECK_THROWS_AS(brute_force_min(RationalMatrix::Identity(10, 10),
                                    std::vector<std::int64_t>(10, 20)),
                    BoxTooLarge);
    CHECK_THROWS_AS(brute_force_min(RationalMatrix::Identity(2, 2), {1}), DimensionMismatch);
    CHECK_THROWS(brute_force_min(RationalMatrix::Identity(2, 2), {1, -1}));
    CHECK_THROWS_AS(brute_force_min(RationalMatrix::Identity(2, 2), {0, 0}), std::invalid_argument);
  }
}
