#include "latfm/selftest.hpp"

#include <functional>
#include <random>

#include "latfm/error.hpp"
#include "latfm/fm_count.hpp"
#include "latfm/isometry_oracle.hpp"
#include "latfm/mukai.hpp"
#include "latfm/normal_form.hpp"
#include "latfm/parallel.hpp"
#include "latfm/rank2_family.hpp"

namespace latfm {

namespace {

struct Claim {
  std::string name;
  std::string anchor;
  std::function<std::string()> check;  // empty string on success
};

std::string check_unimodular(const IntMatrix& gram, Signature expected) {
  const Lattice l(gram);
  if (!l.is_even()) return "not even";
  if (!l.is_unimodular()) return "det " + l.determinant().get_str();
  if (!(l.signature() == expected))
    return "signature (" + std::to_string(l.signature().plus) + "," + std::to_string(l.signature().minus) + ")";
  return {};
}

std::string snf_property() {
  std::mt19937 rng(20240607);
  std::uniform_int_distribution<int> entry(-9, 9), dim(1, 5);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t r = dim(rng), c = dim(rng);
    IntMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) m(i, j) = entry(rng);
    const SmithForm s = smith_normal_form(m);
    if (s.left * m * s.right != s.diag) return "left*M*right != D for " + to_string(m);
    for (std::size_t i = 1; i < s.rank; ++i)
      if (!mpz_divisible_p(s.invariants[i].get_mpz_t(), s.invariants[i - 1].get_mpz_t()))
        return "divisibility fails for " + to_string(m);
  }
  return {};
}

std::string orthogonal_group_order(std::uint64_t range) {
  for (std::uint64_t d = 1; d <= range; ++d) {
    const auto units = units_with_square_one(Integer(static_cast<unsigned long>(2 * d)));
    const std::uint64_t expected = d == 1 ? 1 : std::uint64_t{1} << distinct_prime_count(d);
    if (units.size() != expected) return "d=" + std::to_string(d) + ": " + std::to_string(units.size());
  }
  return {};
}

std::string fm_cross_check(std::uint64_t range) {
  for (std::uint64_t d = 1; d <= range; ++d) {
    const PolarizationDegree pd(d);
    if (fm_count_rho1(pd) != fm_count_rho1_via_cosets(pd)) return "d=" + std::to_string(d);
  }
  return {};
}

std::string mukai_counts(std::uint64_t range) {
  for (std::uint64_t d = 1; d <= range; ++d) {
    const PolarizationDegree pd(d);
    const auto vs = enumerate_mukai_vectors(pd);
    for (const auto& v : vs)
      if (v.square() != 0 || !v.is_primitive()) return "bad vector for d=" + std::to_string(d);
    if (distinct_classes(vs).size() != fm_count_rho1(pd)) return "class count for d=" + std::to_string(d);
  }
  return {};
}

std::string shadow_check(std::uint64_t range) {
  for (std::uint64_t d = 1; d <= range; ++d) {
    for (const auto& v : enumerate_mukai_vectors(PolarizationDegree(d))) {
      const ModuliShadow s = moduli_lattice_shadow(v);
      const Lattice& q = s.quotient.lattice;
      const std::string tag = "d=" + std::to_string(d) + " r=" + v.r.get_str();
      if (q.rank() != 22 || !q.is_even() || !q.is_unimodular() || !(q.signature() == Signature{3, 19}))
        return tag + ": quotient is not the K3 lattice type";
      if (s.ns_square != Integer(static_cast<unsigned long>(2 * d))) return tag + ": ns square";
      if (!s.transcendental_is_ns_complement || !s.transcendental_matches_tx) return tag + ": transcendental image";
    }
  }
  return {};
}

std::string closed_forms(std::uint64_t range) {
  for (std::uint64_t n = 1; n <= range; ++n)
    for (std::uint64_t d = 1; d <= range; ++d) {
      if (std::gcd(2 * d, n) != 1) continue;
      if (!make_member(d, n).matches_snf) return "d=" + std::to_string(d) + " n=" + std::to_string(n);
    }
  return {};
}

std::string disc_iso_agreement(std::uint64_t range) {
  for (std::uint64_t n = 1; n <= range; ++n) {
    std::vector<FamilyMember> ms;
    for (std::uint64_t d = 1; d <= range; ++d)
      if (std::gcd(2 * d, n) == 1) ms.push_back(make_member(d, n));
    for (const auto& a : ms)
      for (const auto& b : ms) {
        const bool closed = disc_groups_isomorphic(a.d, n, b.d, n).has_value();
        const bool generic = is_isometric_modules(discriminant_module(a.lattice), discriminant_module(b.lattice)).has_value();
        if (closed != generic) return "d1=" + std::to_string(a.d) + " d2=" + std::to_string(b.d) + " n=" + std::to_string(n);
      }
  }
  return {};
}

std::string necessity_grid() {
  const SearchBudget budget{50, 10'000'000};
  for (std::uint64_t n : {3, 5, 7})
    for (std::uint64_t d1 = 1; d1 <= 6; ++d1)
      for (std::uint64_t d2 = d1; d2 <= 6; ++d2) {
        if (std::gcd(2 * d1, n) != 1 || std::gcd(2 * d2, n) != 1) continue;
        const auto r = find_isometry_bounded(make_member(d1, n).lattice, make_member(d2, n).lattice, budget);
        const auto c = isometry_necessary_conditions(d1, d2, n);
        const std::string tag = "d1=" + std::to_string(d1) + " d2=" + std::to_string(d2) + " n=" + std::to_string(n);
        if (r.outcome == SearchOutcome::Found && !(c.a2 || c.b2)) return tag + ": witness without a2/b2";
        if (c.certificate && r.outcome == SearchOutcome::Found) return tag + ": certificate contradicted";
      }
  return {};
}

std::string family_check() {
  for (Ambient amb : {Ambient::K3, Ambient::Abelian}) {
    const FamilyBundle f = build_family(3, 1, amb);
    if (f.n != 83 || f.members.size() != 3) return "n or member count";
    if (f.witnesses.size() != 3 || f.certificates.size() != 3 || f.attestations.size() != 3) return "pair data";
    for (const auto& c : f.certificates)
      if (!verify_certificate(c.certificate)) return "certificate fails re-verification";
    if (!f.has_degree_polarization) return "no degree-2 polarization";
    for (bool z : f.represents_zero)
      if (!z) return "member does not represent zero";
    const std::size_t rank = amb == Ambient::K3 ? 20 : 4;
    const Signature sig = amb == Ambient::K3 ? Signature{2, 18} : Signature{2, 2};
    for (const auto& a : f.attestations)
      if (a.attestation.rank != rank || !(a.attestation.signature == sig)) return "attestation shape";
  }
  return {};
}

std::string orbit_check(std::uint64_t range) {
  for (std::uint64_t d = 1; d <= range; ++d)
    if (polarization_orbits_in_U(d).count != fm_count_rho1(PolarizationDegree(d))) return "d=" + std::to_string(d);
  return {};
}

std::string gamma_check() {
  const Lattice k3 = k3_lattice();
  for (std::uint64_t d : {2, 3, 6}) {
    IntMatrix b(22, 1);
    b(0, 0) = 1;
    b(1, 0) = static_cast<unsigned long>(d);
    gamma_complement_map(SublatticeEmbedding(k3, std::move(b)));
  }
  for (std::uint64_t n : {3, 5, 7})
    for (std::uint64_t d = 1; d <= 4; ++d)
      if (std::gcd(2 * d, n) == 1) gamma_complement_map(make_member(d, n).embedding);
  return {};
}

}  // namespace

std::vector<ClaimResult> run_selftest(const SelftestOptions& options) {
  const std::uint64_t r = options.range_d;
  const std::uint64_t small = std::min<std::uint64_t>(r, 30);
  const bool corrupt = options.corrupt_builtin;
  std::vector<Claim> claims = {
      {"k3-lattice-even-unimodular", "K3 lattice U^3 + E8(-1)^2, signature (3,19)",
       [corrupt] {
         IntMatrix g = k3_lattice().gram();
         if (corrupt) g(0, 0) = 1;
         return check_unimodular(g, {3, 19});
       }},
      {"mukai-lattice-even-unimodular", "Mukai lattice, signature (4,20)",
       [] { return check_unimodular(mukai_lattice().gram(), {4, 20}); }},
      {"smith-form-identity", "Smith normal form", snf_property},
      {"orthogonal-group-order", "|O(A)| = 2^p(d) for the degree-2d lattice",
       [r] { return orthogonal_group_order(r); }},
      {"fm-count-cross-check", "|FM(X)| = 2^(p(d)-1) via double cosets", [r] { return fm_cross_check(r); }},
      {"mukai-class-count", "isotropic Mukai vectors v^I_J", [r] { return mukai_counts(r); }},
      {"moduli-shadow", "v^perp / Zv is the K3 lattice, with NS and T_X images",
       [small] { return shadow_check(small); }},
      {"closed-form-discriminant", "discriminant of L_{d,n}", [small] { return closed_forms(small); }},
      {"disc-iso-agreement", "A_{L_{d1,n}} isometric to A_{L_{d2,n}} iff d1*a^2 = d2 mod n^2",
       [small] { return disc_iso_agreement(std::min<std::uint64_t>(small, 12)); }},
      {"necessity-never-contradicted", "isometric L_{d,n} force d1 = d2 or d1*d2 = 1 mod n", necessity_grid},
      {"family-pipeline", "N pairwise non-isometric lattices in one genus", family_check},
      {"polarization-orbits", "orbits of primitive degree-2d vectors in U", [r] { return orbit_check(r); }},
      {"gamma-anti-isometry", "A_V to A_{V^perp} reverses q", gamma_check},
  };

  return parallel_map<ClaimResult>(claims.size(), [&](std::size_t i) {
    ClaimResult res{claims[i].name, claims[i].anchor, false, {}};
    try {
      res.detail = claims[i].check();
      res.passed = res.detail.empty();
    } catch (const Error& e) {
      res.detail = e.what();
    } catch (const std::exception& e) {
      res.detail = e.what();
    }
    return res;
  });
}

}  // namespace latfm
