#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "latfm/error.hpp"
#include "latfm/matrix.hpp"
#include "latfm/normal_form.hpp"
#include "oracles.hpp"

using namespace latfm;

namespace {

IntMatrix to_int(const oracle::Mat& m) { return IntMatrix::from_rows(m); }

bool is_unimodular(const IntMatrix& m) { return m.is_square() && abs(determinant(m)) == 1; }

}  // namespace

TEST_CASE("determinant matches the Leibniz expansion") {
  std::mt19937 rng(11);
  for (int t = 0; t < 150; ++t) {
    const std::size_t n = 1 + t % 6;
    const auto m = oracle::random_matrix(rng, n, n, -7, 7);
    CHECK(determinant(to_int(m)) == oracle::leibniz_det(m));
  }
  CHECK(determinant(IntMatrix{{0, 1}, {1, 0}}) == -1);
  CHECK(determinant(IntMatrix{{2, 3}, {3, 0}}) == -9);
}

TEST_CASE("smith form examples") {
  CHECK(smith_normal_form(IntMatrix{{2, 0}, {0, 2}}).invariants == std::vector<Integer>{2, 2});
  CHECK(smith_normal_form(IntMatrix{{2, 3}, {3, 0}}).invariants == std::vector<Integer>{1, 9});
  CHECK(smith_normal_form(IntMatrix{{12}}).invariants == std::vector<Integer>{12});
  CHECK(smith_normal_form(IntMatrix(2, 3)).rank == 0);
}

TEST_CASE("smith form agrees with determinantal divisors") {
  std::mt19937 rng(12);
  for (int t = 0; t < 120; ++t) {
    const std::size_t r = 1 + t % 4, c = 1 + (t / 4) % 4;
    const auto m = oracle::random_matrix(rng, r, c, -6, 6);
    const IntMatrix a = to_int(m);
    const SmithForm s = smith_normal_form(a);
    CHECK(s.left * a * s.right == s.diag);
    CHECK(is_unimodular(s.left));
    CHECK(is_unimodular(s.right));
    CHECK(s.invariants == oracle::determinantal_invariants(m));
    for (std::size_t i = 0; i < s.diag.rows(); ++i)
      for (std::size_t j = 0; j < s.diag.cols(); ++j)
        if (i != j) CHECK(s.diag(i, j) == 0);
  }
}

TEST_CASE("hermite form is a canonical form for column spans") {
  std::mt19937 rng(13);
  for (int t = 0; t < 80; ++t) {
    const std::size_t n = 2 + t % 4, k = 1 + t % 3;
    IntMatrix b = to_int(oracle::random_matrix(rng, n, k, -5, 5));
    if (smith_normal_form(b).rank != k) continue;
    // Right-multiply by a random unimodular matrix built from elementary steps.
    IntMatrix u = IntMatrix::identity(k);
    std::uniform_int_distribution<int> pick(0, static_cast<int>(k) - 1), mult(-3, 3);
    for (int s = 0; s < 6 && k > 1; ++s) {
      const int i = pick(rng), j = pick(rng);
      if (i != j) u.add_col_multiple(i, j, mult(rng));
    }
    CHECK(canonical_basis(b) == canonical_basis(b * u));
    const IntMatrix h = hermite_normal_form(b.transpose());
    CHECK(h.rows() == k);
  }
}

TEST_CASE("integer kernel is saturated and annihilated") {
  std::mt19937 rng(14);
  for (int t = 0; t < 60; ++t) {
    const IntMatrix m = to_int(oracle::random_matrix(rng, 1 + t % 3, 4, -4, 4));
    const IntMatrix k = integer_kernel(m);
    CHECK(k.cols() == 4 - smith_normal_form(m).rank);
    if (k.cols() == 0) continue;
    CHECK(m * k == IntMatrix(m.rows(), k.cols()));
    for (const auto& f : smith_normal_form(k).invariants) CHECK(f == 1);
  }
}

TEST_CASE("solvers") {
  const IntMatrix m{{2, 3}, {3, 0}};
  auto x = solve_integer(m, {5, 3});
  REQUIRE(x);
  CHECK(m * std::span<const Integer>(*x) == IntVector{5, 3});
  CHECK_FALSE(solve_integer(m, {1, 1}));
  auto y = solve_rational(m, {1, 1});
  REQUIRE(y);
  CHECK((*y)[0] == Rational(1, 3));
  CHECK((*y)[1] == Rational(1, 9));
  auto cols = solve_integer_columns(m, IntMatrix{{5, 2}, {3, 3}});
  REQUIRE(cols);
  CHECK(m * *cols == IntMatrix{{5, 2}, {3, 3}});
}

TEST_CASE("unimodular inverse and completion") {
  const IntMatrix u{{2, 1}, {7, 4}};
  CHECK(u * inverse_unimodular(u) == IntMatrix::identity(2));
  CHECK_THROWS_AS(inverse_unimodular(IntMatrix{{2, 0}, {0, 1}}), Error);
  std::mt19937 rng(15);
  for (int t = 0; t < 100; ++t) {
    IntVector c = to_int(oracle::random_matrix(rng, 1, 2 + t % 5, -30, 30)).row(0);
    if (gcd_of(c) != 1) continue;
    for (auto strategy : {CompletionStrategy::Smith, CompletionStrategy::ExtendedGcd}) {
      const IntMatrix p = complete_to_unimodular(c, strategy);
      CHECK(p.column(0) == c);
      CHECK(abs(determinant(p)) == 1);
    }
  }
  CHECK_THROWS_AS(complete_to_unimodular({2, 4}, CompletionStrategy::Smith), Error);
}

TEST_CASE("rational residues") {
  CHECK(mod_floor(Rational(-2, 9), Integer(2)) == Rational(16, 9));
  CHECK(mod_floor(Rational(5, 2), Integer(1)) == Rational(1, 2));
  CHECK(mod_floor(Integer(-3), Integer(5)) == 2);
  CHECK(to_string(Rational(-2, 9)) == "-2/9");
}
