#include <doctest.h>

#include "copmin/gadgets.hpp"
#include "copmin/ldlt.hpp"
#include "copmin/matrix_io.hpp"
#include "copmin/spectrum.hpp"
#include "support.hpp"

using namespace copmin;
using namespace copmin::testing;

TEST_SUITE("matrix-core") {
  TEST_CASE("evaluate_form") {
    const RationalMatrix q = named_matrix("example1");
    CHECK(evaluate_form(q, IntVector{0, 1, 0}) == 2);
    CHECK(evaluate_form(q, IntVector{1, 0, 0}) == 3);
    CHECK(evaluate_form(RationalMatrix::Identity(3, 3), IntVector{1, 1, 1}) == 3);
    CHECK(evaluate_form(q, vec({0, 1, 1})) == 2);
    CHECK_THROWS_AS(evaluate_form(q, IntVector{1, 1}), DimensionMismatch);
  }

  TEST_CASE("symmetric_permute") {
    const RationalMatrix q = named_matrix("example1");
    CHECK(symmetric_permute(q, Permutation::identity(3)) == q);
    const RationalMatrix swapped = symmetric_permute(q, Permutation::transposition(3, 0, 2));
    CHECK(swapped(0, 0) == 2);
    CHECK(is_symmetric(swapped));
    const auto swap12 = Permutation::transposition(3, 0, 1);
    CHECK(symmetric_permute(symmetric_permute(q, swap12), swap12) == q);
  }

  TEST_CASE("permutation round trips") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 50; ++trial) {
      const Index n = 2 + trial % 6;
      const RationalMatrix q = random_symmetric(rng, n);
      const Permutation p = random_permutation(rng, n);
      const Permutation p2 = random_permutation(rng, n);
      CHECK(symmetric_permute(symmetric_permute(q, p), p.inverse()) == q);
      CHECK(symmetric_permute(q, compose(p, p2)) ==
            symmetric_permute(symmetric_permute(q, p), p2));
      IntVector z(static_cast<std::size_t>(n));
      for (auto& v : z) v = static_cast<std::int64_t>(rng() % 5);
      CHECK(permute(p, unpermute(p, z)) == z);
      CHECK(evaluate_form(symmetric_permute(q, p), permute(p, z)) == evaluate_form(q, z));
    }
  }

  TEST_CASE("eigenvalues and inertia") {
    Eigen::MatrixXd d = Eigen::Vector3d(1, 2, 3).asDiagonal();
    const auto eig = symmetric_eigen(d);
    CHECK(eig.eigenvalues(0) == doctest::Approx(1));
    CHECK(eig.eigenvalues(2) == doctest::Approx(3));
    const auto swap = symmetric_eigen(int_mat({{0, 1}, {1, 0}}));
    CHECK(swap.eigenvalues(0) == doctest::Approx(-1));
    CHECK(swap.eigenvalues(1) == doctest::Approx(1));
    CHECK(swap.residual < 1e-12);

    CHECK(inertia_of(RationalMatrix(RationalMatrix::Identity(4, 4))) == Inertia{4, 0, 0, false});
    CHECK(inertia_of(named_matrix("example1")) == Inertia{2, 0, 1, false});
    CHECK(inertia_of(RationalMatrix(RationalMatrix::Zero(3, 3))) == Inertia{0, 3, 0, false});
    CHECK(inertia_of(named_matrix("horn")).dim() == 5);
  }

  TEST_CASE("expansion evaluation equals the form") {
    std::mt19937_64 rng(17);
    int checked = 0;
    while (checked < 100) {
      const Index n = 2 + static_cast<Index>(rng() % 5);
      const RationalMatrix q = random_symmetric(rng, n);
      const auto f = try_factorize(q, PivotStrategy::Phase1);
      if (!f) continue;
      const auto e = lagrange_expansion(*f);
      RationalVector x(n);
      for (Index i = 0; i < n; ++i) x(i) = random_rational(rng, 7, 5);
      RationalVector z(n);
      for (Index i = 0; i < n; ++i) z(f->perm(i)) = x(i);
      CHECK(evaluate(e, x) == evaluate_form(q, z));
      ++checked;
    }
  }

  TEST_CASE("text format parsing") {
    const auto q = parse_matrix_text("3\n3 -1 3\n-1 2 -1\n3 -1 2\n");
    CHECK(q == named_matrix("example1"));
    const auto one = parse_matrix_text("1\n5/3\n");
    CHECK(one.rows() == 1);
    CHECK(one(0, 0) == r("5/3"));
    CHECK(parse_matrix_text("2\n1 0\n0 1\n\n\n") == RationalMatrix::Identity(2, 2));

    try {
      parse_matrix_text("2\n1 2\n3 1\n");
      FAIL("asymmetric input accepted");
    } catch (const Error& e) {
      CHECK(std::string(e.what()).find("(1,2)/(2,1)") != std::string::npos);
    }
    try {
      parse_matrix_text("2\n1 2\n2 x\n");
      FAIL("bad entry accepted");
    } catch (const ParseError& e) {
      CHECK(e.line == 3);
      CHECK(e.column == 3);
    }
    CHECK_THROWS_AS(parse_matrix_text("2\n1 2\n"), ParseError);
    CHECK_THROWS_AS(parse_matrix_text("2\n1 2 3\n2 1\n"), ParseError);
    CHECK_THROWS_AS(parse_matrix_text("0\n"), ParseError);
    CHECK_THROWS_AS(parse_matrix_text(""), ParseError);
  }

  TEST_CASE("json format parsing") {
    const auto q = parse_matrix(R"({"matrix": [["3", "-1", "3"], ["-1", "2", "-1"], [3, -1, 2]]})");
    CHECK(q == named_matrix("example1"));
    CHECK_THROWS(parse_matrix(R"({"matrix": [["1", "2"], ["3", "1"]]})"));
    CHECK_THROWS(parse_matrix(R"({"nope": []})"));
    CHECK_THROWS(parse_matrix(R"({"matrix": [["1.5"]]})"));
  }

  TEST_CASE("print then parse is the identity") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 50; ++trial) {
      const RationalMatrix q = random_symmetric(rng, 1 + trial % 7, 50, 40);
      CHECK(parse_matrix_text(format_matrix(q)) == q);
    }
  }
}
