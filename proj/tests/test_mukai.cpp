#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "latfm/error.hpp"
#include "latfm/mukai.hpp"
#include "oracles.hpp"

using namespace latfm;

namespace {

std::vector<std::pair<long, long>> rs_pairs(const std::vector<MukaiVector>& vs) {
  std::vector<std::pair<long, long>> out;
  for (const auto& v : vs) out.emplace_back(v.r.get_si(), v.s.get_si());
  return out;
}

// -a·s' + λ·λ' - c·r' for vectors supported on H⁰, the first U, and H⁴.
Integer small_pairing(const IntVector& x, const IntVector& y) {
  return -x[0] * y[23] + x[1] * y[2] + x[2] * y[1] - x[23] * y[0];
}

}  // namespace

TEST_CASE("Mukai lattice") {
  const Lattice m = mukai_lattice();
  CHECK(m.rank() == 24);
  CHECK(m.is_even());
  CHECK(m.is_unimodular());
  CHECK(m.determinant() == -k3_lattice().determinant());
  CHECK(m.signature() == Signature{4, 20});
  CHECK(m.gram()(0, 0) == 0);
  CHECK(m.gram()(0, 23) == -1);
  CHECK(m.gram()(23, 23) == 0);
}

TEST_CASE("Mukai pairing") {
  const auto emb = embed_polarized(PolarizationDegree(5));
  const IntVector one_zero_one = emb.assemble(1, IntVector(22), 1);
  CHECK(mukai_pairing(one_zero_one, one_zero_one) == -2);
  const IntVector h = emb.assemble(0, emb.h, 0);
  CHECK(mukai_pairing(h, h) == 10);
  std::mt19937 rng(41);
  std::uniform_int_distribution<int> dist(-9, 9);
  for (int t = 0; t < 100; ++t) {
    IntVector x(24), y(24);
    for (std::size_t i : {0, 1, 2, 23}) x[i] = dist(rng), y[i] = dist(rng);
    CHECK(mukai_pairing(x, y) == small_pairing(x, y));
    CHECK(mukai_pairing(x, y) == mukai_lattice().pair(x, y));
  }
  CHECK_THROWS_AS(mukai_pairing(IntVector(3), IntVector(24)), Error);
}

TEST_CASE("enumeration") {
  CHECK(rs_pairs(enumerate_mukai_vectors(PolarizationDegree(15))) ==
        std::vector<std::pair<long, long>>{{1, 15}, {3, 5}, {5, 3}, {15, 1}});
  CHECK(rs_pairs(enumerate_mukai_vectors(PolarizationDegree(1))) == std::vector<std::pair<long, long>>{{1, 1}});
  CHECK(rs_pairs(enumerate_mukai_vectors(PolarizationDegree(49))) ==
        std::vector<std::pair<long, long>>{{1, 49}, {49, 1}});
  CHECK(rs_pairs(enumerate_mukai_vectors(PolarizationDegree(8))) == std::vector<std::pair<long, long>>{{1, 8}, {8, 1}});
  for (std::uint64_t d = 1; d <= 200; ++d) {
    const PolarizationDegree pd(d);
    const auto emb = embed_polarized(pd);
    const auto vs = enumerate_mukai_vectors(pd);
    for (const auto& v : vs) {
      const IntVector x = emb.to_vector(v);
      CHECK(mukai_pairing(x, x) == 0);
      CHECK(v.square() == 0);
      CHECK(gcd(gcd(v.r, v.h_mult), v.s) == 1);
      CHECK(v.r * v.s == static_cast<unsigned long>(d));
    }
    CHECK(distinct_classes(vs).size() == (std::size_t{1} << (oracle::prime_count_trial(d) - 1)));
  }
}

TEST_CASE("swap classes") {
  const auto cls = distinct_classes(enumerate_mukai_vectors(PolarizationDegree(15)));
  REQUIRE(cls.size() == 2);
  CHECK(cls[0].representative.r == 1);
  CHECK(cls[0].representative.s == 15);
  CHECK(cls[1].representative.r == 3);
  CHECK(cls[1].members.size() == 2);
  CHECK(distinct_classes(enumerate_mukai_vectors(PolarizationDegree(30))).size() == 4);
  const MukaiVector a{3, 1, 5, 15}, b{5, 1, 3, 15}, c{1, 1, 15, 15};
  CHECK_FALSE(swap_distinctness_check(a, b));
  CHECK(swap_distinctness_check(c, a));
  CHECK_FALSE(swap_distinctness_check(a, a));
}

TEST_CASE("polarized embedding") {
  for (std::uint64_t d : {1, 2, 7}) {
    const auto emb = embed_polarized(PolarizationDegree(d));
    CHECK(emb.k3.norm(emb.h) == 2 * d);
    CHECK(is_primitive(emb.h_line()));
    const Lattice t = emb.transcendental().as_lattice();
    CHECK(t.rank() == 21);
    CHECK(t.signature() == Signature{2, 19});
  }
}

TEST_CASE("moduli shadow") {
  for (std::uint64_t d : {1, 2, 6, 15}) {
    for (const auto& v : enumerate_mukai_vectors(PolarizationDegree(d))) {
      const ModuliShadow s = moduli_lattice_shadow(v);
      const Lattice& q = s.quotient.lattice;
      CHECK(q.rank() == 22);
      CHECK(q.is_even());
      CHECK(abs(q.determinant()) == 1);
      CHECK(q.signature() == Signature{3, 19});
      CHECK(s.ns_square == 2 * d);
      CHECK(s.transcendental_is_ns_complement);
      CHECK(s.transcendental_matches_tx);
      const auto other = moduli_lattice_shadow(v, CompletionStrategy::ExtendedGcd);
      CHECK(other.quotient.lattice.determinant() == q.determinant());
      CHECK(other.quotient.lattice.signature() == q.signature());
      CHECK(other.ns_square == s.ns_square);
    }
  }
  CHECK_THROWS_AS(moduli_lattice_shadow(MukaiVector{1, 1, 2, 1}), Error);
  CHECK_THROWS_AS(moduli_lattice_shadow(MukaiVector{2, 2, 2, 1}), Error);
}

TEST_CASE("pairing with (0, h, 2s) is -b.h mod r on v^perp") {
  std::mt19937 rng(42);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (std::uint64_t d : {6, 15, 30}) {
    const auto emb = embed_polarized(PolarizationDegree(d));
    for (const auto& v : enumerate_mukai_vectors(PolarizationDegree(d))) {
      if (v.r == 1) continue;
      IntMatrix line(24, 1);
      line.set_column(0, emb.to_vector(v));
      const auto perp = orthogonal_complement(SublatticeEmbedding(emb.mukai, line));
      const IntVector ns = emb.assemble(0, emb.h, 2 * v.s);
      for (int t = 0; t < 20; ++t) {
        IntVector x(24);
        for (std::size_t j = 0; j < perp.rank(); ++j) {
          const int c = coef(rng);
          for (std::size_t i = 0; i < 24; ++i) x[i] += c * perp.basis()(i, j);
        }
        REQUIRE(mukai_pairing(x, emb.to_vector(v)) == 0);
        // b·h for b in the first U with h = e + d f
        const Integer bh = x[1] * static_cast<unsigned long>(d) + x[2];
        CHECK(mod_floor(Integer(mukai_pairing(x, ns) + bh), v.r) == 0);
      }
    }
  }
}
