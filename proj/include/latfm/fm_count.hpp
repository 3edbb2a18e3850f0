#pragma once

#include <cstdint>
#include <vector>

#include "latfm/finite_form.hpp"
#include "latfm/isometry_oracle.hpp"
#include "latfm/lattice.hpp"

namespace latfm {

/// h² = 2d with d ≥ 1.
class PolarizationDegree {
 public:
  /// Throws InvalidArgument for d < 1.
  explicit PolarizationDegree(std::uint64_t d);
  /// From the geometric degree 2d; throws InvalidArgument if it is odd or < 2.
  static PolarizationDegree from_degree(std::uint64_t two_d);

  [[nodiscard]] std::uint64_t d() const noexcept { return d_; }
  [[nodiscard]] std::uint64_t degree() const noexcept { return 2 * d_; }

 private:
  std::uint64_t d_;
};

/// The image of the Hodge isometry group G in O(A_T), given as a list of
/// scalar maps x ↦ k·x. Scalars act identically on every genus member, which
/// is what lets one image serve the whole genus sum.
struct HodgeActionImage {
  std::vector<Integer> scalars;

  /// {±id}: the image for Picard number 1. This is a Hodge-theoretic input
  /// taken as given, not computed from a period.
  static HodgeActionImage plus_minus_identity() { return {{1, -1}}; }
  static HodgeActionImage trivial() { return {{1}}; }

  [[nodiscard]] std::vector<ModuleIsometry> on(const FiniteQuadraticModule& a) const;
};

/// Prime-power factorization of n as (p, e) pairs, ascending p.
std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n);

/// Number of distinct primes dividing d, with the convention p(1) = 1.
unsigned distinct_prime_count(std::uint64_t d);

/// 2^(p(d) - 1).
std::uint64_t fm_count_rho1(const PolarizationDegree& d);

/// The same count through the double-coset sum for the single genus member
/// ⟨2d⟩: O(A) from units with square one, O(⟨2d⟩) = {±1} and G = {±id}.
std::uint64_t fm_count_rho1_via_cosets(const PolarizationDegree& d);

struct GenusSumReport {
  std::uint64_t count = 0;
  std::vector<std::size_t> per_member;
  /// Entry bound used for the O(S_j) image generation, and whether every
  /// enumeration finished inside the node limit.
  long entry_bound = 0;
  bool saturated_within_budget = true;
};

/// Sum over the supplied genus members of |O(S_j) \ O(A_{S_j}) / G|. The
/// image of O(S_j) is generated from bounded self-isometry enumeration.
/// Throws RankUnsupported for members of rank above 2.
GenusSumReport fm_count_genus_sum(const std::vector<Lattice>& genus_members, const HodgeActionImage& g_image,
                                  const SearchBudget& budget = {});

/// Subgroup of O(A) generated by the given maps (closure under composition).
std::vector<ModuleIsometry> generated_subgroup(const FiniteQuadraticModule& a,
                                               const std::vector<ModuleIsometry>& generators);

}  // namespace latfm
