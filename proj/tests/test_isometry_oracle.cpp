#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "latfm/error.hpp"
#include "latfm/isometry_oracle.hpp"
#include "oracles.hpp"

using namespace latfm;

namespace {

Lattice member(long d, long n) { return Lattice(IntMatrix{{2 * d, n}, {n, 0}}); }

bool is_witness(const IntMatrix& b, const Lattice& l1, const Lattice& l2) {
  return abs(determinant(b)) == 1 && congruence(l1.gram(), b) == l2.gram();
}

}  // namespace

TEST_CASE("self-isometry is the identity") {
  const auto r = find_isometry_bounded(member(1, 3), member(1, 3));
  CHECK(r.outcome == SearchOutcome::Found);
  REQUIRE(r.witness);
  CHECK(r.witness->matrix == IntMatrix::identity(2));
}

TEST_CASE("witness for L_{1,5} and L_{6,5}") {
  const auto r = find_isometry_bounded(member(1, 5), member(6, 5));
  REQUIRE(r.outcome == SearchOutcome::Found);
  CHECK(is_witness(r.witness->matrix, member(1, 5), member(6, 5)));
}

TEST_CASE("invariant screen gives definitive negatives") {
  CHECK(find_isometry_bounded(rank_one(2), rank_one(4)).outcome == SearchOutcome::NotIsometric);
  CHECK(find_isometry_bounded(rank_one(2), rank_one(-2)).outcome == SearchOutcome::NotIsometric);
  CHECK(find_isometry_bounded(hyperbolic_plane(), Lattice(IntMatrix{{1, 0}, {0, -1}})).outcome ==
        SearchOutcome::NotIsometric);
  CHECK(find_isometry_bounded(hyperbolic_plane(), rank_one(2)).outcome == SearchOutcome::NotIsometric);
}

TEST_CASE("budget exhaustion is distinguishable") {
  // d1 = 1, d2 = 2, n = 5: neither congruence holds, so no witness exists.
  const auto r = find_isometry_bounded(member(1, 5), member(2, 5), SearchBudget{20, 10'000'000});
  CHECK(r.outcome == SearchOutcome::BudgetExhausted);
  CHECK_FALSE(r.node_limit_hit);
  const auto cut = find_isometry_bounded(member(1, 5), member(2, 5), SearchBudget{50, 100});
  CHECK(cut.outcome == SearchOutcome::BudgetExhausted);
  CHECK(cut.node_limit_hit);
  CHECK_THROWS_AS(find_isometry_bounded(member(1, 5), member(2, 5), SearchBudget{0, 100}), Error);
}

TEST_CASE("every returned witness verifies") {
  for (long n : {3, 5, 7})
    for (long d1 = 1; d1 <= 6; ++d1)
      for (long d2 = 1; d2 <= 6; ++d2) {
        if (std::gcd(2 * d1, n) != 1 || std::gcd(2 * d2, n) != 1) continue;
        const auto r = find_isometry_bounded(member(d1, n), member(d2, n), SearchBudget{20, 1'000'000});
        if (r.outcome == SearchOutcome::Found) CHECK(is_witness(r.witness->matrix, member(d1, n), member(d2, n)));
      }
}

TEST_CASE("bounded enumeration of automorphisms") {
  const auto e = enumerate_isometries_bounded(member(1, 3), member(1, 3), SearchBudget{10, 1'000'000});
  CHECK(e.complete);
  for (const auto& w : e.witnesses) CHECK(is_witness(w.matrix, member(1, 3), member(1, 3)));
  std::vector<IntMatrix> found;
  for (const auto& w : e.witnesses) found.push_back(w.matrix);
  for (const IntMatrix& m : {IntMatrix{{1, 0}, {0, 1}}, IntMatrix{{-1, 0}, {0, -1}}, IntMatrix{{1, 3}, {0, -1}},
                             IntMatrix{{-1, -3}, {0, 1}}})
    CHECK(std::find(found.begin(), found.end(), m) != found.end());
  CHECK(found.size() == 4);
  const auto one = enumerate_isometries_bounded(rank_one(6), rank_one(6));
  CHECK(one.witnesses.size() == 2);
}

TEST_CASE("units with square one") {
  auto values = [](long two_d) {
    std::vector<long> out;
    for (const auto& u : units_with_square_one(Integer(two_d))) out.push_back(u.get_si());
    return out;
  };
  CHECK(values(12) == std::vector<long>{1, 5, 7, 11});
  CHECK(values(2) == std::vector<long>{1});
  CHECK(values(8) == std::vector<long>{1, 7});
  for (std::uint64_t d = 1; d <= 200; ++d) {
    CHECK(units_with_square_one(Integer(static_cast<unsigned long>(2 * d))).size() == oracle::units_square_one_count(d));
    if (d >= 2) CHECK(oracle::units_square_one_count(d) == (1u << oracle::prime_count_trial(d)));
  }
}

TEST_CASE("double cosets") {
  const auto a = discriminant_module(rank_one(12));
  const auto full = orthogonal_group_of_module(a);
  const std::vector<ModuleIsometry> pm{scalar_isometry(a, 1), scalar_isometry(a, -1)};
  CHECK(double_coset_count(pm, full, pm) == 2);
  CHECK(double_coset_count(full, full, full) == 1);
  const std::vector<ModuleIsometry> id{identity_isometry(a)};
  CHECK(double_coset_count(id, full, id) == 4);
  const auto t = discriminant_module(rank_one(2));
  const std::vector<ModuleIsometry> tid{identity_isometry(t)};
  CHECK(double_coset_count(tid, tid, tid) == 1);
  const std::vector<ModuleIsometry> not_closed{scalar_isometry(a, 5)};
  CHECK_THROWS_AS(double_coset_count(not_closed, full, pm), Error);
  const std::vector<ModuleIsometry> foreign{scalar_isometry(a, 1), scalar_isometry(a, 3)};
  CHECK_THROWS_AS(double_coset_count(foreign, full, pm), Error);
}
