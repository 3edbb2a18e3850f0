#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "latfm/error.hpp"
#include "latfm/fm_count.hpp"
#include "oracles.hpp"

using namespace latfm;

TEST_CASE("prime counts") {
  CHECK(distinct_prime_count(1) == 1);
  CHECK(distinct_prime_count(6) == 2);
  CHECK(distinct_prime_count(210) == 4);
  for (std::uint64_t d = 1; d <= 500; ++d) CHECK(distinct_prime_count(d) == oracle::prime_count_trial(d));
  std::uint64_t prod = 1;
  for (auto [p, e] : factorize(720720))
    for (unsigned i = 0; i < e; ++i) prod *= p;
  CHECK(prod == 720720);
}

TEST_CASE("closed form") {
  CHECK(fm_count_rho1(PolarizationDegree(1)) == 1);
  CHECK(fm_count_rho1(PolarizationDegree(15)) == 2);
  CHECK(fm_count_rho1(PolarizationDegree(210)) == 8);
  CHECK(PolarizationDegree::from_degree(420).d() == 210);
  CHECK_THROWS_AS(PolarizationDegree::from_degree(3), Error);
  CHECK_THROWS_AS(PolarizationDegree(0), Error);
  for (std::uint64_t d = 1; d <= 200; ++d) CHECK(fm_count_rho1(PolarizationDegree(d)) >= 1);
}

TEST_CASE("doubling with a fresh prime") {
  for (std::uint64_t d : {2, 3, 6, 10, 15, 30}) {
    for (std::uint64_t q : {7, 11, 13}) {
      if (d % q == 0) continue;
      CHECK(fm_count_rho1(PolarizationDegree(d * q)) == 2 * fm_count_rho1(PolarizationDegree(d)));
    }
  }
}

TEST_CASE("double-coset route agrees") {
  CHECK(fm_count_rho1_via_cosets(PolarizationDegree(6)) == 2);
  CHECK(fm_count_rho1_via_cosets(PolarizationDegree(1)) == 1);
  CHECK(fm_count_rho1_via_cosets(PolarizationDegree(30)) == 4);
  for (std::uint64_t d = 1; d <= 200; ++d) {
    const PolarizationDegree pd(d);
    CHECK(fm_count_rho1_via_cosets(pd) == (std::uint64_t{1} << (oracle::prime_count_trial(d) - 1)));
  }
}

TEST_CASE("genus sums") {
  const auto pm = HodgeActionImage::plus_minus_identity();
  for (long d : {1, 2, 6, 30, 210}) {
    const auto r = fm_count_genus_sum({rank_one(2 * d)}, pm);
    CHECK(r.count == fm_count_rho1(PolarizationDegree(d)));
    CHECK(r.saturated_within_budget);
  }
  CHECK(fm_count_genus_sum({hyperbolic_plane()}, HodgeActionImage::trivial()).count == 1);
  const auto l13 = fm_count_genus_sum({Lattice(IntMatrix{{2, 3}, {3, 0}})}, pm, SearchBudget{10, 1'000'000});
  // O(A) = {1, 8} mod 9 and O(L_{1,3}) already induces -1.
  CHECK(l13.count == 1);
  CHECK(l13.per_member == std::vector<std::size_t>{1});
  const auto both = fm_count_genus_sum({rank_one(12), rank_one(12)}, pm);
  CHECK(both.count == 4);
  CHECK_THROWS_AS(fm_count_genus_sum({k3_lattice()}, pm), Error);
}

TEST_CASE("generated subgroups") {
  const auto a = discriminant_module(rank_one(60));
  const auto g = generated_subgroup(a, {scalar_isometry(a, 11)});
  CHECK(g.size() == 2);
  const auto all = generated_subgroup(a, orthogonal_group_of_module(a));
  CHECK(all.size() == orthogonal_group_of_module(a).size());
  CHECK(HodgeActionImage::plus_minus_identity().on(discriminant_module(rank_one(2))).size() == 1);
}
