#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "latfm/finite_form.hpp"
#include "latfm/lattice.hpp"

namespace latfm {

/// Bounds for the exhaustive lattice isometry search. The defaults are
/// engineering choices; no effective bound on isometry entries is known for
/// the indefinite rank-2 families this is used on.
struct SearchBudget {
  long entry_bound = 50;
  std::uint64_t node_limit = 10'000'000;
};

/// B with |det B| = 1 and Bᵀ·G₁·B = G₂.
struct IsometryWitness {
  IntMatrix matrix;
};

enum class SearchOutcome {
  Found,
  /// Definitive: the invariant screen (rank, det, parity, signature) differs.
  NotIsometric,
  /// No witness within the budget. This is not a proof of non-isometry.
  BudgetExhausted,
};

std::string_view to_string(SearchOutcome outcome);

struct IsometrySearchResult {
  SearchOutcome outcome = SearchOutcome::BudgetExhausted;
  std::optional<IsometryWitness> witness;
  std::uint64_t nodes = 0;
  /// True when the node limit stopped the search; false when the entry box
  /// was searched completely without success.
  bool node_limit_hit = false;
  std::string detail;
};

/// First witness in shell order (columns by increasing max-entry, then
/// lexicographic). Throws InvalidArgument for a non-positive budget.
IsometrySearchResult find_isometry_bounded(const Lattice& l1, const Lattice& l2, const SearchBudget& budget = {});

struct IsometryEnumeration {
  std::vector<IsometryWitness> witnesses;
  bool complete = true;  ///< false if the node limit cut the enumeration short
  std::uint64_t nodes = 0;
};

/// Every isometry l1 → l2 whose entries lie within the budget's entry bound.
IsometryEnumeration enumerate_isometries_bounded(const Lattice& l1, const Lattice& l2,
                                                 const SearchBudget& budget = {});

/// All α in [1, 2d) with gcd(α, 2d) = 1 and α² ≡ 1 (mod 4d): the units that
/// preserve q on A_⟨2d⟩. `modulus` is 2d.
std::vector<Integer> units_with_square_one(const Integer& modulus);

/// Number of double cosets left \ full / right. left and right must be
/// subsets of full closed under composition; throws NotSubgroup otherwise.
std::size_t double_coset_count(const std::vector<ModuleIsometry>& left, const std::vector<ModuleIsometry>& full,
                               const std::vector<ModuleIsometry>& right);

}  // namespace latfm
