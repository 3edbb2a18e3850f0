#include "latfm/mukai.hpp"

#include <algorithm>
#include <map>

#include "latfm/error.hpp"

namespace latfm {

Integer MukaiVector::square() const {
  return 2 * Integer(static_cast<unsigned long>(d)) * h_mult * h_mult - 2 * r * s;
}

bool MukaiVector::is_primitive() const {
  return gcd(gcd(r, h_mult), s) == 1;
}

Lattice mukai_lattice() {
  const Lattice k3 = k3_lattice();
  IntMatrix g(kMukaiRank, kMukaiRank);
  for (std::size_t i = 0; i < k3.rank(); ++i)
    for (std::size_t j = 0; j < k3.rank(); ++j) g(i + 1, j + 1) = k3.gram()(i, j);
  g(kMukaiH0, kMukaiH4) = g(kMukaiH4, kMukaiH0) = -1;
  return Lattice(std::move(g));
}

Integer mukai_pairing(const IntVector& a, const IntVector& b) {
  if (a.size() != kMukaiRank || b.size() != kMukaiRank)
    throw Error(ErrorCode::DimensionMismatch, "Mukai vectors have 24 coordinates");
  static const Lattice k3 = k3_lattice();
  const IntVector la(a.begin() + 1, a.end() - 1);
  const IntVector lb(b.begin() + 1, b.end() - 1);
  return -a[kMukaiH0] * b[kMukaiH4] + k3.pair(la, lb) - a[kMukaiH4] * b[kMukaiH0];
}

std::vector<MukaiVector> enumerate_mukai_vectors(const PolarizationDegree& d) {
  std::vector<Integer> blocks;
  for (auto [p, e] : factorize(d.d())) {
    Integer b = 1;
    for (unsigned i = 0; i < e; ++i) b *= static_cast<unsigned long>(p);
    blocks.push_back(b);
  }
  const std::size_t m = blocks.size();
  std::vector<MukaiVector> out;
  out.reserve(std::size_t{1} << m);
  for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
    MukaiVector v{1, 1, 1, d.d()};
    for (std::size_t i = 0; i < m; ++i) ((mask >> i) & 1 ? v.r : v.s) *= blocks[i];
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<MukaiClass> distinct_classes(const std::vector<MukaiVector>& vs) {
  std::map<std::pair<Integer, Integer>, MukaiClass> classes;
  for (const auto& v : vs) {
    MukaiVector rep = v;
    if (rep.s < rep.r) std::swap(rep.r, rep.s);
    auto key = std::make_pair(rep.r, rep.s);
    auto [it, inserted] = classes.try_emplace(key, MukaiClass{rep, {}});
    it->second.members.push_back(v);
  }
  std::vector<MukaiClass> out;
  for (auto& [key, c] : classes) out.push_back(std::move(c));
  return out;
}

bool swap_distinctness_check(const MukaiVector& v1, const MukaiVector& v2) {
  const bool same = (v1.r == v2.r && v1.s == v2.s) || (v1.r == v2.s && v1.s == v2.r);
  return !(same && v1.h_mult == v2.h_mult && v1.d == v2.d);
}

SublatticeEmbedding PolarizedEmbedding::h_line() const {
  IntMatrix b(k3.rank(), 1);
  b.set_column(0, h);
  return SublatticeEmbedding(k3, std::move(b));
}

SublatticeEmbedding PolarizedEmbedding::transcendental() const { return orthogonal_complement(h_line()); }

IntVector PolarizedEmbedding::assemble(const Integer& a, const IntVector& lambda, const Integer& c) const {
  if (lambda.size() != k3.rank()) throw Error(ErrorCode::DimensionMismatch, "H² part has 22 coordinates");
  IntVector out(kMukaiRank);
  out[kMukaiH0] = a;
  std::copy(lambda.begin(), lambda.end(), out.begin() + 1);
  out[kMukaiH4] = c;
  return out;
}

IntVector PolarizedEmbedding::to_vector(const MukaiVector& v) const {
  IntVector lambda = h;
  for (auto& x : lambda) x *= v.h_mult;
  return assemble(v.r, lambda, v.s);
}

PolarizedEmbedding embed_polarized(const PolarizationDegree& d) {
  Lattice k3 = k3_lattice();
  IntVector h(k3.rank());
  h[0] = 1;
  h[1] = static_cast<unsigned long>(d.d());
  return PolarizedEmbedding{std::move(k3), mukai_lattice(), std::move(h), d.d()};
}

ModuliShadow moduli_lattice_shadow(const MukaiVector& v, CompletionStrategy strategy) {
  if (v.square() != 0) throw Error(ErrorCode::NotIsotropic, "v·v = " + v.square().get_str());
  if (!v.is_primitive()) throw Error(ErrorCode::NotPrimitive, "Mukai vector is not primitive");
  const PolarizedEmbedding emb = embed_polarized(PolarizationDegree(v.d));
  const IntVector vec = emb.to_vector(v);

  IntMatrix line(kMukaiRank, 1);
  line.set_column(0, vec);
  const SublatticeEmbedding v_perp = orthogonal_complement(SublatticeEmbedding(emb.mukai, std::move(line)));
  QuotientLattice quotient = quotient_by_isotropic(v_perp, vec, strategy);

  // (0, h, 2s) lies in v^⊥ since h² = 2d = 2rs.
  const IntVector ns_ambient = emb.assemble(0, emb.h, 2 * v.s);
  IntVector ns = quotient.project(ns_ambient);
  const Integer ns_square = quotient.lattice.norm(ns);

  const SublatticeEmbedding tx = emb.transcendental();
  IntMatrix lifted(kMukaiRank, tx.rank());
  for (std::size_t j = 0; j < tx.rank(); ++j) lifted.set_column(j, emb.assemble(0, tx.basis().column(j), 0));
  const IntMatrix image = quotient.project_columns(lifted);
  const bool gram_match = congruence(quotient.lattice.gram(), image) == congruence(emb.k3.gram(), tx.basis());

  IntMatrix ns_col(ns.size(), 1);
  ns_col.set_column(0, ns);
  const SublatticeEmbedding ns_perp = orthogonal_complement(SublatticeEmbedding(quotient.lattice, std::move(ns_col)));
  IntMatrix canonical_image = canonical_basis(image);
  const bool complement_match = canonical_image == ns_perp.basis();

  SublatticeEmbedding transcendental(quotient.lattice, std::move(canonical_image));
  return ModuliShadow{std::move(quotient), std::move(ns), ns_square, std::move(transcendental), complement_match,
                      gram_match};
}

}  // namespace latfm
