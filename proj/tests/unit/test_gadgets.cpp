#include <doctest.h>

#include "copmin/gadgets.hpp"
#include "copmin/ldlt.hpp"
#include "copmin/oracle.hpp"
#include "copmin/solver.hpp"
#include "copmin/spectrum.hpp"
#include "support.hpp"

using namespace copmin;
using namespace copmin::testing;

TEST_SUITE("gadgets") {
  TEST_CASE("smallest gadget") {
    CHECK(subset_sum_gadget({{1}, 1}) == int_mat({{3, -2}, {-2, 2}}));
  }

  TEST_CASE("gadget value at a solution") {
    const RationalMatrix q = subset_sum_gadget({{1, 2, 3}, 5});
    CHECK(q.rows() == 4);
    CHECK(evaluate_form(q, IntVector{0, 1, 1, 1}) == 3);
    CHECK(evaluate_form(q, IntVector{1, 1, 0, 1}) > 3);
    CHECK(evaluate_form(q, IntVector{1, 0, 0, 0}) == 3 + 2);
  }

  TEST_CASE("invalid instances") {
    CHECK_THROWS_AS(subset_sum_gadget({{}, 1}), InvalidInstance);
    CHECK_THROWS_AS(subset_sum_gadget({{1, 0}, 1}), InvalidInstance);
    CHECK_THROWS_AS(subset_sum_gadget({{1, 2}, 0}), InvalidInstance);
  }

  TEST_CASE("structural identity on random instances") {
    std::mt19937_64 rng(61);
    for (int i = 0; i < 25; ++i) {
      const auto inst = random_subset_sum(rng, 6, 9);
      CHECK(gadget_h_identity_check(inst));
      const RationalMatrix q = subset_sum_gadget(inst);
      CHECK(is_symmetric(q));
      CHECK(is_positive_semidefinite(q));
    }
  }

  TEST_CASE("gadget minimum decides the instance") {
    std::mt19937_64 rng(67);
    for (int i = 0; i < 25; ++i) {
      const auto inst = random_subset_sum(rng, 4, 6);
      const Index n = static_cast<Index>(inst.a.size());
      CAPTURE(n);
      const auto r = min_cop(subset_sum_gadget(inst));
      REQUIRE(r.status == SolveStatus::StrictlyCopositive);
      const bool solvable = subset_sum_brute(inst).has_value();
      CHECK(solvable == (r.minimum == n));
      CHECK(r.minimum >= n);
    }
  }

  TEST_CASE("named matrices") {
    CHECK(named_matrix("example1").diagonal() == vec({3, 2, 2}));
    CHECK(named_matrix("blocks4").rows() == 4);
    const RationalMatrix horn = named_matrix("horn");
    CHECK(horn.rows() == 5);
    CHECK(horn.diagonal() == RationalVector::Ones(5));
    CHECK_THROWS_AS(named_matrix("nope"), std::invalid_argument);
  }

  TEST_CASE("generator is deterministic") {
    for (auto cls : {MatrixClass::Psd, MatrixClass::Spn, MatrixClass::SpnTwoNeg}) {
      const auto a = random_matrix(cls, 5, 99);
      const auto b = random_matrix(cls, 5, 99);
      CHECK(a.matrix == b.matrix);
      CHECK(a.factor == b.factor);
      CHECK(a.attempts == b.attempts);
      CHECK(random_matrix(cls, 5, 100).matrix != a.matrix);
    }
  }

  TEST_CASE("generated classes meet their postconditions") {
    for (Index dim = 3; dim <= 7; ++dim) {
      for (std::uint64_t seed = 0; seed < 8; ++seed) {
        for (auto cls : {MatrixClass::Psd, MatrixClass::Spn, MatrixClass::SpnTwoNeg}) {
          const auto g = random_matrix(cls, dim, seed);
          const IntegerMatrix bbt = g.factor * g.factor.transpose();
          const IntegerMatrix sum = bbt + g.noise;
          CHECK(g.matrix == sum.unaryExpr([](std::int64_t v) { return Rational(v); }));
          CHECK((g.noise.array() >= 0).all());
          CHECK(g.noise == g.noise.transpose());
          for (Index i = 0; i < dim; ++i) CHECK(g.factor.row(i).cwiseAbs().sum() > 0);
          switch (cls) {
            case MatrixClass::Psd:
              CHECK(g.noise.isZero());
              CHECK(is_positive_semidefinite(g.matrix));
              break;
            case MatrixClass::Spn:
              CHECK(g.factor.cols() == dim);
              break;
            case MatrixClass::SpnTwoNeg:
              CHECK(g.factor.cols() == dim - 2);
              CHECK(inertia_of(g.matrix).negative >= 2);
              break;
          }
        }
      }
    }
  }

  TEST_CASE("class names") {
    CHECK(parse_matrix_class("spn2neg") == MatrixClass::SpnTwoNeg);
    CHECK(parse_matrix_class("spn_two_neg") == MatrixClass::SpnTwoNeg);
    CHECK(to_string(MatrixClass::Psd) == "psd");
    CHECK_THROWS_AS(parse_matrix_class("dense"), std::invalid_argument);
  }
}
