#pragma once

#include <cstddef>
#include <optional>

#include "latfm/matrix.hpp"
#include "latfm/normal_form.hpp"

namespace latfm {

struct Signature {
  std::size_t plus = 0;
  std::size_t minus = 0;

  friend bool operator==(const Signature&, const Signature&) = default;
};

/// Free Z-module of finite rank with a non-degenerate symmetric integer Gram
/// matrix. Immutable once constructed.
class Lattice {
 public:
  /// Throws NotSquare, NotSymmetric or Degenerate.
  explicit Lattice(IntMatrix gram);

  [[nodiscard]] std::size_t rank() const noexcept { return gram_.rows(); }
  [[nodiscard]] const IntMatrix& gram() const noexcept { return gram_; }
  [[nodiscard]] const Integer& determinant() const noexcept { return det_; }
  [[nodiscard]] bool is_even() const;
  [[nodiscard]] bool is_unimodular() const { return abs(det_) == 1; }
  [[nodiscard]] Signature signature() const;

  [[nodiscard]] Integer pair(std::span<const Integer> x, std::span<const Integer> y) const {
    return bilinear(gram_, x, y);
  }
  [[nodiscard]] Integer norm(std::span<const Integer> x) const { return bilinear(gram_, x, x); }

  friend bool operator==(const Lattice& a, const Lattice& b) { return a.gram_ == b.gram_; }

 private:
  IntMatrix gram_;
  Integer det_;
};

Lattice make_lattice(const IntMatrix& gram);
Integer determinant(const Lattice& l);
bool is_even(const Lattice& l);

/// Sylvester signature by exact rational symmetric elimination. A zero
/// diagonal with a nonzero off-diagonal partner is split off as a hyperbolic
/// 2×2 block contributing (1, 1). Works on any symmetric matrix; the zero
/// eigenvalues of a degenerate matrix are simply not counted.
Signature signature_of(const IntMatrix& symmetric);
Signature signature(const Lattice& l);

Lattice direct_sum(const Lattice& a, const Lattice& b);
/// L(k): Gram multiplied by k. Throws ZeroScale for k == 0.
Lattice rescale(const Lattice& l, const Integer& k);

// Built-in lattices.
Lattice hyperbolic_plane();        ///< U = [[0,1],[1,0]]
Lattice e8();                      ///< positive-definite E8 (Cartan matrix)
Lattice e8_negative();             ///< E8(-1)
Lattice k3_lattice();              ///< U³ ⊕ E8(-1)², rank 22
Lattice rank_one(const Integer& n);  ///< ⟨n⟩

/// Sublattice given by a basis of ambient-coordinate column vectors.
class SublatticeEmbedding {
 public:
  /// Throws DimensionMismatch, or Degenerate when the columns are dependent.
  SublatticeEmbedding(Lattice ambient, IntMatrix basis);

  [[nodiscard]] const Lattice& ambient() const noexcept { return ambient_; }
  [[nodiscard]] const IntMatrix& basis() const noexcept { return basis_; }
  [[nodiscard]] std::size_t rank() const noexcept { return basis_.cols(); }
  /// Induced Gram matrix Bᵀ·G·B (possibly degenerate).
  [[nodiscard]] IntMatrix induced_gram() const { return congruence(ambient_.gram(), basis_); }
  /// The sublattice as a lattice in its own right. Throws Degenerate.
  [[nodiscard]] Lattice as_lattice() const { return Lattice(induced_gram()); }
  /// Coordinates of an ambient vector in this basis, if it lies in the span over Z.
  [[nodiscard]] std::optional<IntVector> coordinates(const IntVector& ambient_vector) const;

 private:
  Lattice ambient_;
  IntMatrix basis_;
};

/// V^⊥ = {x : b(x, v) = 0 for all v in V}, as an HNF-canonical saturated basis.
SublatticeEmbedding orthogonal_complement(const SublatticeEmbedding& v);

/// True iff ambient / V is torsion-free.
bool is_primitive(const SublatticeEmbedding& v);

/// V/Zv with the induced form, where V = v^⊥ and v is a primitive isotropic
/// ambient vector contained in V.
struct QuotientLattice {
  Lattice lattice;
  SublatticeEmbedding sub;
  IntVector isotropic;
  /// Unimodular k×k change of basis of V whose first column is v in V-coordinates.
  IntMatrix completion;
  IntMatrix completion_inverse;
  /// Ambient lifts of the quotient basis (one per column).
  IntMatrix lifts;

  /// Quotient coordinates of an ambient vector lying in V. Throws InvalidArgument otherwise.
  [[nodiscard]] IntVector project(const IntVector& ambient_vector) const;
  /// project() applied to every column.
  [[nodiscard]] IntMatrix project_columns(const IntMatrix& ambient_vectors) const;
};

QuotientLattice quotient_by_isotropic(const SublatticeEmbedding& v_perp, const IntVector& v,
                                      CompletionStrategy strategy = CompletionStrategy::Smith);

}  // namespace latfm
