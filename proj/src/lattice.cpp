#include "latfm/lattice.hpp"

#include <utility>
#include <vector>

#include "latfm/error.hpp"

namespace latfm {

Lattice::Lattice(IntMatrix gram) : gram_(std::move(gram)) {
  if (!gram_.is_square()) throw Error(ErrorCode::NotSquare, "Gram matrix must be square");
  if (gram_.rows() == 0) throw Error(ErrorCode::Degenerate, "rank must be positive");
  if (!gram_.is_symmetric()) throw Error(ErrorCode::NotSymmetric, "Gram matrix " + to_string(gram_));
  det_ = latfm::determinant(gram_);
  if (det_ == 0) throw Error(ErrorCode::Degenerate, "Gram matrix has zero determinant");
}

bool Lattice::is_even() const {
  for (std::size_t i = 0; i < rank(); ++i)
    if (mpz_odd_p(gram_(i, i).get_mpz_t())) return false;
  return true;
}

Signature Lattice::signature() const { return signature_of(gram_); }

Lattice make_lattice(const IntMatrix& gram) { return Lattice(gram); }
Integer determinant(const Lattice& l) { return l.determinant(); }
bool is_even(const Lattice& l) { return l.is_even(); }
Signature signature(const Lattice& l) { return l.signature(); }

Signature signature_of(const IntMatrix& symmetric) {
  if (!symmetric.is_symmetric()) throw Error(ErrorCode::NotSymmetric, "signature needs a symmetric matrix");
  const std::size_t n = symmetric.rows();
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = symmetric(i, j);

  std::vector<bool> active(n, true);
  Signature sig;
  auto eliminate_single = [&](std::size_t i) {
    if (a[i][i] > 0) ++sig.plus; else ++sig.minus;
    active[i] = false;
    for (std::size_t p = 0; p < n; ++p) {
      if (!active[p] || a[p][i] == 0) continue;
      const Rational f = a[p][i] / a[i][i];
      for (std::size_t q = 0; q < n; ++q)
        if (active[q]) a[p][q] -= f * a[i][q];
    }
  };
  auto eliminate_hyperbolic = [&](std::size_t i, std::size_t j) {
    // Block [[0, h], [h, 0]] has one positive and one negative eigenvalue.
    ++sig.plus;
    ++sig.minus;
    active[i] = active[j] = false;
    const Rational h = a[i][j];
    std::vector<Rational> ci(n), cj(n);
    for (std::size_t p = 0; p < n; ++p) {
      ci[p] = a[p][i];
      cj[p] = a[p][j];
    }
    for (std::size_t p = 0; p < n; ++p) {
      if (!active[p]) continue;
      for (std::size_t q = 0; q < n; ++q)
        if (active[q]) a[p][q] -= (ci[p] * cj[q] + cj[p] * ci[q]) / h;
    }
  };

  for (;;) {
    std::size_t pivot = n;
    for (std::size_t i = 0; i < n && pivot == n; ++i)
      if (active[i] && a[i][i] != 0) pivot = i;
    if (pivot != n) {
      eliminate_single(pivot);
      continue;
    }
    std::size_t bi = n, bj = n;
    for (std::size_t i = 0; i < n && bi == n; ++i) {
      if (!active[i]) continue;
      for (std::size_t j = i + 1; j < n; ++j)
        if (active[j] && a[i][j] != 0) {
          bi = i;
          bj = j;
          break;
        }
    }
    if (bi == n) break;
    eliminate_hyperbolic(bi, bj);
  }
  return sig;
}

Lattice direct_sum(const Lattice& a, const Lattice& b) {
  return Lattice(block_diagonal(a.gram(), b.gram()));
}

Lattice rescale(const Lattice& l, const Integer& k) {
  if (k == 0) throw Error(ErrorCode::ZeroScale, "rescale factor must be nonzero");
  return Lattice(k * l.gram());
}

Lattice hyperbolic_plane() { return Lattice(IntMatrix{{0, 1}, {1, 0}}); }

Lattice e8() {
  IntMatrix g(8, 8);
  for (std::size_t i = 0; i < 8; ++i) g(i, i) = 2;
  constexpr std::pair<int, int> edges[] = {{0, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {1, 3}};
  for (auto [i, j] : edges) g(i, j) = g(j, i) = -1;
  return Lattice(std::move(g));
}

Lattice e8_negative() { return rescale(e8(), -1); }

Lattice k3_lattice() {
  const Lattice u = hyperbolic_plane();
  const Lattice e = e8_negative();
  return direct_sum(direct_sum(direct_sum(u, u), u), direct_sum(e, e));
}

Lattice rank_one(const Integer& n) {
  IntMatrix g(1, 1);
  g(0, 0) = n;
  return Lattice(std::move(g));
}

SublatticeEmbedding::SublatticeEmbedding(Lattice ambient, IntMatrix basis)
    : ambient_(std::move(ambient)), basis_(std::move(basis)) {
  if (basis_.rows() != ambient_.rank())
    throw Error(ErrorCode::DimensionMismatch, "basis vectors must live in the ambient lattice");
  if (smith_normal_form(basis_).rank != basis_.cols())
    throw Error(ErrorCode::Degenerate, "sublattice basis is linearly dependent");
}

std::optional<IntVector> SublatticeEmbedding::coordinates(const IntVector& ambient_vector) const {
  return solve_integer(basis_, ambient_vector);
}

SublatticeEmbedding orthogonal_complement(const SublatticeEmbedding& v) {
  const IntMatrix pairing = v.basis().transpose() * v.ambient().gram();
  return SublatticeEmbedding(v.ambient(), integer_kernel(pairing));
}

bool is_primitive(const SublatticeEmbedding& v) {
  const SmithForm s = smith_normal_form(v.basis());
  for (const auto& f : s.invariants)
    if (f != 1) return false;
  return s.rank == v.rank();
}

IntVector QuotientLattice::project(const IntVector& ambient_vector) const {
  auto y = sub.coordinates(ambient_vector);
  if (!y) throw Error(ErrorCode::InvalidArgument, "vector does not lie in v^perp");
  IntVector z = completion_inverse * std::span<const Integer>(*y);
  return {z.begin() + 1, z.end()};
}

IntMatrix QuotientLattice::project_columns(const IntMatrix& ambient_vectors) const {
  auto y = solve_integer_columns(sub.basis(), ambient_vectors);
  if (!y) throw Error(ErrorCode::InvalidArgument, "vectors do not lie in v^perp");
  const IntMatrix z = completion_inverse * *y;
  IntMatrix out(z.rows() - 1, z.cols());
  for (std::size_t i = 1; i < z.rows(); ++i)
    for (std::size_t j = 0; j < z.cols(); ++j) out(i - 1, j) = z(i, j);
  return out;
}

QuotientLattice quotient_by_isotropic(const SublatticeEmbedding& v_perp, const IntVector& v,
                                      CompletionStrategy strategy) {
  const Lattice& ambient = v_perp.ambient();
  if (v.size() != ambient.rank()) throw Error(ErrorCode::DimensionMismatch, "isotropic vector length");
  if (ambient.norm(v) != 0) throw Error(ErrorCode::NotIsotropic, "v·v = " + ambient.norm(v).get_str());
  if (gcd_of(v) != 1) throw Error(ErrorCode::NotPrimitive, "isotropic vector is not primitive");
  for (std::size_t j = 0; j < v_perp.rank(); ++j)
    if (ambient.pair(v_perp.basis().column(j), v) != 0)
      throw Error(ErrorCode::InvalidArgument, "sublattice is not orthogonal to v");
  auto c = v_perp.coordinates(v);
  if (!c) throw Error(ErrorCode::InvalidArgument, "v does not lie in the given sublattice");
  if (gcd_of(*c) != 1) throw Error(ErrorCode::NotPrimitive, "v is not primitive in the sublattice");

  IntMatrix p = complete_to_unimodular(*c, strategy);
  IntMatrix p_inv = inverse_unimodular(p);
  IntMatrix lifts = v_perp.basis() * p.columns(1, p.cols() - 1);
  Lattice quotient(congruence(ambient.gram(), lifts));
  return QuotientLattice{std::move(quotient), v_perp, v, std::move(p), std::move(p_inv), std::move(lifts)};
}

}  // namespace latfm
