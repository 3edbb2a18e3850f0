#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "latfm/finite_form.hpp"
#include "latfm/lattice.hpp"

namespace latfm {

/// L_{d,n}: Gram [[2d, n], [n, 0]] with gcd(2d, n) = 1, realized as the span
/// of (1, d, 0, 0) and (0, n, 1, 0) inside U ⊕ U.
struct FamilyMember {
  std::uint64_t d;
  std::uint64_t n;
  Lattice lattice;
  SublatticeEmbedding embedding;
  /// Cyclic of order n² generated by (n·e − 2d·f)/n² with q = −2d/n².
  FiniteQuadraticModule closed_form;
  RatVector closed_form_generator;
  /// The closed form agrees with the Smith-form discriminant module.
  bool matches_snf = false;
};

/// Throws NotCoprime unless gcd(2d, n) = 1, InvalidArgument for d or n zero.
FamilyMember make_member(std::uint64_t d, std::uint64_t n);

/// α with gcd(α, n) = 1 and d₁·α² ≡ d₂ (mod n²).
struct DiscIsoWitness {
  std::uint64_t d1;
  std::uint64_t d2;
  std::uint64_t n;
  std::uint64_t alpha;
};

/// Least α in [1, n²) (α = 1 when n = 1), or empty when n₁ ≠ n₂ or no α exists.
std::optional<DiscIsoWitness> disc_groups_isomorphic(std::uint64_t d1, std::uint64_t n1, std::uint64_t d2,
                                                     std::uint64_t n2);

/// Proof that L_{d1,n} and L_{d2,n} are not isometric: an isometry forces
/// d₁ ≡ d₂ or d₁·d₂ ≡ 1 (mod n), and both fail.
struct NonIsometryCertificate {
  std::uint64_t d1;
  std::uint64_t d2;
  std::uint64_t n;
  std::uint64_t difference_residue;  ///< (d₁ − d₂) mod n, nonzero
  std::uint64_t product_residue;     ///< d₁·d₂ mod n, not 1
};

struct NecessaryConditions {
  bool a2 = false;  ///< d₁ ≡ d₂ (mod n)
  bool b2 = false;  ///< d₁·d₂ ≡ 1 (mod n)
  std::optional<NonIsometryCertificate> certificate;
};

NecessaryConditions isometry_necessary_conditions(std::uint64_t d1, std::uint64_t d2, std::uint64_t n);

/// Independent re-verification of a certificate by modular arithmetic.
bool verify_certificate(const NonIsometryCertificate& c);

/// Data for one side of the complement-isometry criterion for even
/// sublattices of an even unimodular lattice.
struct NikulinInput {
  FiniteQuadraticModule module;
  Signature signature;
  std::size_t rank = 0;

  static NikulinInput from_lattice(const Lattice& t);
};

/// The verified hypotheses; the isometry T₁ ≅ T₂ they imply is attested, not
/// constructed.
struct NikulinAttestation {
  std::size_t rank = 0;
  Signature signature;
  std::size_t length = 0;  ///< ℓ(A): minimal number of generators
  ModuleIsometry disc_iso;
};

/// Throws HypothesisFailed naming the first failed hypothesis: "signature",
/// "indefinite", "rank" or "discriminant-form".
NikulinAttestation check_nikulin_hypotheses(const NikulinInput& t1, const NikulinInput& t2);

enum class Ambient { K3, Abelian };
std::string_view to_string(Ambient a);

struct PairWitness {
  std::size_t i;
  std::size_t j;
  DiscIsoWitness witness;
};

struct PairCertificate {
  std::size_t i;
  std::size_t j;
  NonIsometryCertificate certificate;
};

struct PairAttestation {
  std::size_t i;
  std::size_t j;
  NikulinAttestation attestation;
};

struct FamilyBundle {
  std::uint64_t count;
  std::uint64_t d;
  std::uint64_t n;
  Ambient ambient;
  std::vector<FamilyMember> members;
  std::vector<SublatticeEmbedding> complements;
  std::vector<PairWitness> witnesses;
  std::vector<PairCertificate> certificates;
  std::vector<PairAttestation> attestations;
  /// Member 1 contains a vector of square 2d.
  bool has_degree_polarization = false;
  /// Each member contains a primitive vector of square 0.
  std::vector<bool> represents_zero;
};

/// Least odd prime strictly greater than x.
std::uint64_t least_odd_prime_above(std::uint64_t x);

/// N members L_{d·i², n} (i = 1..N) with n the least odd prime above d²N⁴,
/// with all pairwise witnesses, certificates and complement attestations.
FamilyBundle build_family(std::uint64_t count, std::uint64_t d, Ambient ambient);

/// Primitive vectors of square 2d in U grouped into orbits of
/// O(U) = {±id, ±swap}.
struct PolarizationOrbits {
  std::size_t count = 0;
  /// (a, b) with 0 < a ≤ b, ascending.
  std::vector<std::pair<Integer, Integer>> representatives;
  std::vector<std::vector<std::pair<Integer, Integer>>> orbits;
};

PolarizationOrbits polarization_orbits_in_U(std::uint64_t d);

}  // namespace latfm
