#pragma once

#include <vector>

#include "latfm/fm_count.hpp"
#include "latfm/lattice.hpp"

namespace latfm {

/// v = (r, h_mult·h, s) in H⁰ ⊕ H² ⊕ H⁴ for a polarization h with h² = 2d.
struct MukaiVector {
  Integer r;
  Integer h_mult;
  Integer s;
  std::uint64_t d = 1;

  /// v·v = 2d·h_mult² − 2rs
  [[nodiscard]] Integer square() const;
  [[nodiscard]] bool is_primitive() const;

  friend bool operator==(const MukaiVector&, const MukaiVector&) = default;
};

/// Coordinate layout of the rank-24 Mukai lattice: index 0 is H⁰, indices
/// 1..22 are the K3 lattice U³ ⊕ E8(-1)², index 23 is H⁴.
inline constexpr std::size_t kMukaiRank = 24;
inline constexpr std::size_t kMukaiH0 = 0;
inline constexpr std::size_t kMukaiH4 = 23;

/// Gram of −r·s' − s·r' + λ·λ'. Even, unimodular, signature (4, 20).
Lattice mukai_lattice();

Integer mukai_pairing(const IntVector& a, const IntVector& b);

/// One vector per subset I of the prime-power blocks of d, in bitmask order
/// (bit i set puts block i into r). Every 2^k with k ≥ 1 dividing d exactly
/// forms its own block.
std::vector<MukaiVector> enumerate_mukai_vectors(const PolarizationDegree& d);

/// Orbit of the swap (r, h, s) ~ (s, h, r).
struct MukaiClass {
  MukaiVector representative;  ///< r ≤ s
  std::vector<MukaiVector> members;
};

/// Swap classes, sorted by representative (r, s).
std::vector<MukaiClass> distinct_classes(const std::vector<MukaiVector>& vs);

/// True iff v1 and v2 lie in different swap classes.
bool swap_distinctness_check(const MukaiVector& v1, const MukaiVector& v2);

/// The K3 lattice with h = e + d·f in its first hyperbolic plane, and the
/// surrounding Mukai lattice.
struct PolarizedEmbedding {
  Lattice k3;
  Lattice mukai;
  IntVector h;  ///< 22 coordinates: (1, d, 0, …, 0)
  std::uint64_t d;

  [[nodiscard]] SublatticeEmbedding h_line() const;
  /// h^⊥ ⊂ Λ: the lattice shadow of T_X.
  [[nodiscard]] SublatticeEmbedding transcendental() const;
  /// (r, h_mult·h, s) as a rank-24 vector.
  [[nodiscard]] IntVector to_vector(const MukaiVector& v) const;
  /// (a, λ, c) as a rank-24 vector.
  [[nodiscard]] IntVector assemble(const Integer& a, const IntVector& lambda, const Integer& c) const;
};

PolarizedEmbedding embed_polarized(const PolarizationDegree& d);

/// Lattice-level picture of the moduli space attached to v: the quotient
/// v^⊥/Zv, the class of (0, h, 2s), and the image of {(0, n, 0) : n ∈ h^⊥}.
struct ModuliShadow {
  QuotientLattice quotient;
  /// Quotient coordinates of the class of (0, h, 2s).
  IntVector ns_generator;
  Integer ns_square;
  /// Image of h^⊥, saturated and HNF-canonical, inside the quotient lattice.
  SublatticeEmbedding transcendental;
  /// ns_generator^⊥ in the quotient equals the transcendental image exactly.
  bool transcendental_is_ns_complement = false;
  /// The image basis has the same Gram matrix as the h^⊥ basis in Λ.
  bool transcendental_matches_tx = false;
};

/// Throws NotIsotropic or NotPrimitive.
ModuliShadow moduli_lattice_shadow(const MukaiVector& v, CompletionStrategy strategy = CompletionStrategy::Smith);

}  // namespace latfm
