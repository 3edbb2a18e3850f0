#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "latfm/lattice.hpp"
#include "latfm/matrix.hpp"

namespace latfm {

/// An element of a finite abelian group in invariant-factor form, as residues
/// a_i in [0, d_i) with respect to the generators.
using ModuleElement = std::vector<Integer>;

/// Finite abelian group Z/d₁ ⊕ … ⊕ Z/d_k (d_i > 1, d_i | d_{i+1}) with a
/// bilinear form b into Q/Z and, for even lattices, a quadratic form q into
/// Q/2Z. Values are stored on generators, canonicalized to [0,1) and [0,2).
class FiniteQuadraticModule {
 public:
  FiniteQuadraticModule() = default;
  /// Abstract module from generator data. Validates factor divisibility and the
  /// compatibility of q and b with the generator orders.
  FiniteQuadraticModule(std::vector<Integer> factors, std::optional<std::vector<Rational>> q_values,
                        std::vector<std::vector<Rational>> b_values);

  [[nodiscard]] const std::vector<Integer>& factors() const noexcept { return factors_; }
  [[nodiscard]] std::size_t length() const noexcept { return factors_.size(); }
  [[nodiscard]] Integer order() const;
  [[nodiscard]] bool is_trivial() const noexcept { return factors_.empty(); }
  [[nodiscard]] bool is_cyclic() const noexcept { return factors_.size() <= 1; }
  [[nodiscard]] bool has_q() const noexcept { return q_values_.has_value(); }

  /// q on generators. Throws OddLatticeNoQ when the module carries no q.
  [[nodiscard]] const std::vector<Rational>& q_values() const;
  [[nodiscard]] const std::vector<std::vector<Rational>>& b_values() const noexcept { return b_values_; }

  [[nodiscard]] Rational q(const ModuleElement& x) const;
  [[nodiscard]] Rational b(const ModuleElement& x, const ModuleElement& y) const;
  [[nodiscard]] ModuleElement reduce(ModuleElement x) const;
  [[nodiscard]] ModuleElement generator(std::size_t i) const;
  [[nodiscard]] Integer element_order(const ModuleElement& x) const;

  /// Present only for modules computed from a lattice: generator
  /// representatives in L ⊗ Q (lattice coordinates).
  [[nodiscard]] const std::vector<RatVector>& generator_vectors() const noexcept { return generators_; }
  [[nodiscard]] bool has_lattice() const noexcept { return !lattice_gram_.empty(); }
  /// Class in A_L of a dual vector x (lattice coordinates). Throws
  /// InvalidArgument when x is not in L^∨ or the module is abstract.
  [[nodiscard]] ModuleElement element_of(const RatVector& x) const;

  friend bool operator==(const FiniteQuadraticModule& a, const FiniteQuadraticModule& b) {
    return a.factors_ == b.factors_ && a.q_values_ == b.q_values_ && a.b_values_ == b.b_values_;
  }

 private:
  friend FiniteQuadraticModule discriminant_from_gram(const IntMatrix& gram, bool with_q);

  std::vector<Integer> factors_;
  std::optional<std::vector<Rational>> q_values_;
  std::vector<std::vector<Rational>> b_values_;
  std::vector<RatVector> generators_;
  IntMatrix lattice_gram_;
  IntMatrix coordinate_map_;
};

/// Group homomorphism between finite modules: column j holds the residues of
/// the image of source generator j.
struct ModuleIsometry {
  std::vector<Integer> source_factors;
  std::vector<Integer> target_factors;
  IntMatrix matrix;

  [[nodiscard]] ModuleElement apply(const ModuleElement& x) const;
  /// (*this) ∘ inner
  [[nodiscard]] ModuleIsometry compose(const ModuleIsometry& inner) const;
  friend bool operator==(const ModuleIsometry&, const ModuleIsometry&) = default;
  friend auto operator<=>(const ModuleIsometry& a, const ModuleIsometry& b) {
    return a.matrix_key() <=> b.matrix_key();
  }
  [[nodiscard]] std::vector<Integer> matrix_key() const;
};

ModuleIsometry identity_isometry(const FiniteQuadraticModule& a);
/// x ↦ k·x on a module.
ModuleIsometry scalar_isometry(const FiniteQuadraticModule& a, const Integer& k);

/// True iff f is a well-defined bijective homomorphism source → target that
/// preserves b (and q when both carry it), up to the given sign: sign = -1
/// checks an anti-isometry.
bool is_module_isometry(const ModuleIsometry& f, const FiniteQuadraticModule& source,
                        const FiniteQuadraticModule& target, int sign = 1);

/// Discriminant module A_L = L^∨/L of an even lattice. Throws OddLatticeNoQ
/// for odd lattices.
FiniteQuadraticModule discriminant_module(const Lattice& l);
/// Discriminant group with b only; defined for every lattice.
FiniteQuadraticModule discriminant_bilinear_module(const Lattice& l);

struct ModuleSearchOptions {
  Integer order_bound = 1'000'000;
  /// Use unit arithmetic for cyclic modules instead of the generic search.
  bool cyclic_fast_path = true;
};

/// Lexicographically least isometry a → b (by generator images), or empty.
/// Throws SearchSpaceTooLarge when the order exceeds the bound.
std::optional<ModuleIsometry> is_isometric_modules(const FiniteQuadraticModule& a,
                                                   const FiniteQuadraticModule& b,
                                                   const ModuleSearchOptions& options = {});

/// Every isometry of a onto itself, in lexicographic order.
std::vector<ModuleIsometry> orthogonal_group_of_module(const FiniteQuadraticModule& a,
                                                       const ModuleSearchOptions& options = {});

/// Action on A_L induced by a lattice automorphism B (Bᵀ·G·B = G).
ModuleIsometry induced_isometry(const FiniteQuadraticModule& a, const IntMatrix& automorphism);

/// The natural correspondence A_V → A_{V^⊥} for a primitive non-degenerate
/// sublattice V of a unimodular lattice. It reverses q.
struct GammaMap {
  SublatticeEmbedding complement;
  FiniteQuadraticModule source;
  FiniteQuadraticModule target;
  ModuleIsometry map;
};

/// Throws NotUnimodular, NotPrimitive, Degenerate, or InvalidIsometry if the
/// computed map fails its anti-isometry check.
GammaMap gamma_complement_map(const SublatticeEmbedding& v);

}  // namespace latfm
