#pragma once

#include <optional>
#include <vector>

#include "latfm/matrix.hpp"

namespace latfm {

/// left · input · right == diag, with left and right unimodular and the
/// diagonal entries non-negative, each dividing the next.
struct SmithForm {
  IntMatrix left;
  IntMatrix diag;
  IntMatrix right;
  /// First `rank` diagonal entries, all positive.
  std::vector<Integer> invariants;
  std::size_t rank = 0;
};

SmithForm smith_normal_form(const IntMatrix& m);

/// Row Hermite normal form: rows in echelon order, positive pivots, entries
/// above each pivot reduced into [0, pivot). Zero rows are removed.
IntMatrix hermite_normal_form(const IntMatrix& m);

/// Saturated basis (one vector per column) of {x in Z^n : m·x = 0},
/// canonicalized by Hermite normal form.
IntMatrix integer_kernel(const IntMatrix& m);

/// Canonical basis for the column span of `basis`: the transpose of the
/// Hermite form of its transpose. Equal spans give equal results.
IntMatrix canonical_basis(const IntMatrix& basis);

/// Some integer x with m·x == b, if one exists.
std::optional<IntVector> solve_integer(const IntMatrix& m, const IntVector& b);

/// Column-wise solve_integer for every column of rhs with one factorization.
std::optional<IntMatrix> solve_integer_columns(const IntMatrix& m, const IntMatrix& rhs);

/// The unique rational x with m·x == b for m of full column rank, if b is in
/// the rational column span.
std::optional<RatVector> solve_rational(const IntMatrix& m, const RatVector& b);

/// Inverse of a unimodular matrix.
IntMatrix inverse_unimodular(const IntMatrix& m);

/// Completes a primitive vector c in Z^k to a unimodular k×k matrix whose first
/// column is c. Two independent constructions are offered so callers can
/// compare results across completion choices.
enum class CompletionStrategy { Smith, ExtendedGcd };
IntMatrix complete_to_unimodular(const IntVector& c, CompletionStrategy strategy);

}  // namespace latfm
