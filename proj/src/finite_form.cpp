#include "latfm/finite_form.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

#include "latfm/error.hpp"
#include "latfm/normal_form.hpp"

namespace latfm {

namespace {

const Integer kTwo = 2;
const Integer kOne = 1;

Rational mod2(const Rational& x) { return mod_floor(x, kTwo); }
Rational mod1(const Rational& x) { return mod_floor(x, kOne); }

}  // namespace

// ---------------------------------------------------------------------------
// FiniteQuadraticModule

FiniteQuadraticModule::FiniteQuadraticModule(std::vector<Integer> factors,
                                             std::optional<std::vector<Rational>> q_values,
                                             std::vector<std::vector<Rational>> b_values)
    : factors_(std::move(factors)), q_values_(std::move(q_values)), b_values_(std::move(b_values)) {
  const std::size_t k = factors_.size();
  for (std::size_t i = 0; i < k; ++i) {
    if (factors_[i] <= 1) throw Error(ErrorCode::InvalidArgument, "invariant factors must exceed 1");
    if (i > 0 && !mpz_divisible_p(factors_[i].get_mpz_t(), factors_[i - 1].get_mpz_t()))
      throw Error(ErrorCode::InvalidArgument, "invariant factors must divide one another");
  }
  if (b_values_.size() != k) throw Error(ErrorCode::DimensionMismatch, "b table size");
  for (auto& row : b_values_) {
    if (row.size() != k) throw Error(ErrorCode::DimensionMismatch, "b table size");
    for (auto& x : row) x = mod1(x);
  }
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      if (b_values_[i][j] != b_values_[j][i]) throw Error(ErrorCode::InvalidArgument, "b is not symmetric");
      if (mod1(Rational(factors_[i]) * b_values_[i][j]) != 0)
        throw Error(ErrorCode::InvalidArgument, "b is incompatible with the generator orders");
    }
  if (q_values_) {
    if (q_values_->size() != k) throw Error(ErrorCode::DimensionMismatch, "q table size");
    for (std::size_t i = 0; i < k; ++i) {
      auto& q = (*q_values_)[i];
      q = mod2(q);
      if (mod1(q) != b_values_[i][i]) throw Error(ErrorCode::InvalidArgument, "q and b disagree on a generator");
      if (mod2(Rational(factors_[i]) * Rational(factors_[i]) * q) != 0)
        throw Error(ErrorCode::InvalidArgument, "q is incompatible with the generator orders");
    }
  }
}

Integer FiniteQuadraticModule::order() const {
  Integer o = 1;
  for (const auto& d : factors_) o *= d;
  return o;
}

const std::vector<Rational>& FiniteQuadraticModule::q_values() const {
  if (!q_values_) throw Error(ErrorCode::OddLatticeNoQ, "module carries no quadratic form");
  return *q_values_;
}

ModuleElement FiniteQuadraticModule::reduce(ModuleElement x) const {
  if (x.size() != factors_.size()) throw Error(ErrorCode::DimensionMismatch, "element length");
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = mod_floor(x[i], factors_[i]);
  return x;
}

ModuleElement FiniteQuadraticModule::generator(std::size_t i) const {
  ModuleElement g(factors_.size());
  g.at(i) = 1;
  return g;
}

Integer FiniteQuadraticModule::element_order(const ModuleElement& x) const {
  Integer o = 1;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    const Integer part = factors_[i] / gcd(x[i], factors_[i]);
    o = lcm(o, part);
  }
  return o;
}

Rational FiniteQuadraticModule::q(const ModuleElement& x) const {
  const auto& qv = q_values();
  if (x.size() != factors_.size()) throw Error(ErrorCode::DimensionMismatch, "element length");
  Rational s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    s += Rational(x[i] * x[i]) * qv[i];
    for (std::size_t j = i + 1; j < x.size(); ++j) s += Rational(2 * x[i] * x[j]) * b_values_[i][j];
  }
  return mod2(s);
}

Rational FiniteQuadraticModule::b(const ModuleElement& x, const ModuleElement& y) const {
  if (x.size() != factors_.size() || y.size() != factors_.size())
    throw Error(ErrorCode::DimensionMismatch, "element length");
  Rational s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < y.size(); ++j) s += Rational(x[i] * y[j]) * b_values_[i][j];
  }
  return mod1(s);
}

ModuleElement FiniteQuadraticModule::element_of(const RatVector& x) const {
  if (!has_lattice()) throw Error(ErrorCode::InvalidArgument, "module was not computed from a lattice");
  if (x.size() != lattice_gram_.cols()) throw Error(ErrorCode::DimensionMismatch, "dual vector length");
  IntVector y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    Rational s = 0;
    for (std::size_t j = 0; j < x.size(); ++j) s += Rational(lattice_gram_(i, j)) * x[j];
    if (s.get_den() != 1) throw Error(ErrorCode::InvalidArgument, "vector is not in the dual lattice");
    y[i] = s.get_num();
  }
  return reduce(coordinate_map_ * std::span<const Integer>(y));
}

FiniteQuadraticModule discriminant_from_gram(const IntMatrix& gram, bool with_q) {
  // left·G·right = D; generators are right-columns / d_i and the class of a
  // dual vector x has residues (left·G·x)_i mod d_i.
  const SmithForm s = smith_normal_form(gram);
  const std::size_t n = gram.rows();
  FiniteQuadraticModule m;
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < n; ++i)
    if (s.invariants[i] != 1) kept.push_back(i);
  const std::size_t k = kept.size();

  m.factors_.reserve(k);
  m.coordinate_map_ = IntMatrix(k, n);
  for (std::size_t a = 0; a < k; ++a) {
    const std::size_t i = kept[a];
    m.factors_.push_back(s.invariants[i]);
    RatVector g(n);
    for (std::size_t r = 0; r < n; ++r) g[r] = Rational(s.right(r, i), s.invariants[i]);
    for (auto& x : g) x.canonicalize();
    m.generators_.push_back(std::move(g));
    for (std::size_t c = 0; c < n; ++c) m.coordinate_map_(a, c) = s.left(i, c);
  }
  m.b_values_.assign(k, std::vector<Rational>(k));
  std::vector<Rational> q(k);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t c = a; c < k; ++c) {
      const Rational v = bilinear(gram, m.generators_[a], m.generators_[c]);
      m.b_values_[a][c] = m.b_values_[c][a] = mod1(v);
      if (a == c) q[a] = mod2(v);
    }
  if (with_q) m.q_values_ = std::move(q);
  m.lattice_gram_ = gram;
  return m;
}

FiniteQuadraticModule discriminant_module(const Lattice& l) {
  if (!l.is_even()) throw Error(ErrorCode::OddLatticeNoQ, "q_L is only defined for even lattices");
  return discriminant_from_gram(l.gram(), true);
}

FiniteQuadraticModule discriminant_bilinear_module(const Lattice& l) {
  return discriminant_from_gram(l.gram(), false);
}

// ---------------------------------------------------------------------------
// ModuleIsometry

ModuleElement ModuleIsometry::apply(const ModuleElement& x) const {
  if (x.size() != source_factors.size()) throw Error(ErrorCode::DimensionMismatch, "element length");
  ModuleElement y = matrix * std::span<const Integer>(x);
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = mod_floor(y[i], target_factors[i]);
  return y;
}

ModuleIsometry ModuleIsometry::compose(const ModuleIsometry& inner) const {
  if (inner.target_factors != source_factors) throw Error(ErrorCode::DimensionMismatch, "composition");
  ModuleIsometry out{inner.source_factors, target_factors, matrix * inner.matrix};
  for (std::size_t i = 0; i < out.matrix.rows(); ++i)
    for (std::size_t j = 0; j < out.matrix.cols(); ++j)
      out.matrix(i, j) = mod_floor(out.matrix(i, j), target_factors[i]);
  return out;
}

std::vector<Integer> ModuleIsometry::matrix_key() const {
  // Column-major: generator images in order.
  std::vector<Integer> key;
  key.reserve(matrix.rows() * matrix.cols());
  for (std::size_t j = 0; j < matrix.cols(); ++j)
    for (std::size_t i = 0; i < matrix.rows(); ++i) key.push_back(matrix(i, j));
  return key;
}

ModuleIsometry scalar_isometry(const FiniteQuadraticModule& a, const Integer& k) {
  const std::size_t n = a.length();
  ModuleIsometry f{a.factors(), a.factors(), IntMatrix(n, n)};
  for (std::size_t i = 0; i < n; ++i) f.matrix(i, i) = mod_floor(k, a.factors()[i]);
  return f;
}

ModuleIsometry identity_isometry(const FiniteQuadraticModule& a) { return scalar_isometry(a, 1); }

bool is_module_isometry(const ModuleIsometry& f, const FiniteQuadraticModule& source,
                        const FiniteQuadraticModule& target, int sign) {
  const std::size_t ks = source.length();
  const std::size_t kt = target.length();
  if (f.matrix.rows() != kt || f.matrix.cols() != ks) return false;
  if (source.order() != target.order()) return false;
  // Well defined: d_j · f(g_j) = 0.
  for (std::size_t j = 0; j < ks; ++j)
    for (std::size_t i = 0; i < kt; ++i)
      if (!mpz_divisible_p(Integer(source.factors()[j] * f.matrix(i, j)).get_mpz_t(),
                           target.factors()[i].get_mpz_t()))
        return false;
  // Surjective: the images together with the relations span Z^kt.
  if (kt > 0) {
    IntMatrix span(kt, ks + kt);
    for (std::size_t i = 0; i < kt; ++i) {
      for (std::size_t j = 0; j < ks; ++j) span(i, j) = f.matrix(i, j);
      span(i, ks + i) = target.factors()[i];
    }
    const SmithForm s = smith_normal_form(span);
    if (s.rank != kt || s.invariants.back() != 1) return false;
  }
  std::vector<ModuleElement> images;
  for (std::size_t j = 0; j < ks; ++j) images.push_back(f.apply(source.generator(j)));
  const Rational sg = sign;
  for (std::size_t i = 0; i < ks; ++i)
    for (std::size_t j = i; j < ks; ++j)
      if (target.b(images[i], images[j]) != mod1(sg * source.b_values()[i][j])) return false;
  if (source.has_q() && target.has_q())
    for (std::size_t i = 0; i < ks; ++i)
      if (target.q(images[i]) != mod2(sg * source.q_values()[i])) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Exhaustive search over generator images in fixed-width arithmetic.

namespace {

using i64 = std::int64_t;
using i128 = __int128;

i64 to_i64(const Integer& x) {
  if (!x.fits_slong_p()) throw Error(ErrorCode::SearchSpaceTooLarge, "value exceeds machine word");
  return x.get_si();
}

i64 mulmod(i64 a, i64 b, i64 m) { return static_cast<i64>((static_cast<i128>(a) * b) % m); }

// q scaled by N into [0, 2N), b scaled by N into [0, N).
struct Scaled {
  std::vector<i64> factors;
  bool has_q = false;
  std::vector<i64> q;
  std::vector<std::vector<i64>> b;
  i64 n = 1;

  [[nodiscard]] std::size_t k() const { return factors.size(); }

  [[nodiscard]] i64 qval(const i64* a) const {
    const i64 m = 2 * n;
    i128 s = 0;
    for (std::size_t i = 0; i < k(); ++i) {
      if (a[i] == 0) continue;
      s += mulmod(mulmod(a[i], a[i], m), q[i], m);
      for (std::size_t j = i + 1; j < k(); ++j) s += mulmod(mulmod(2 * a[i] % m, a[j], m), b[i][j], m);
      s %= m;
    }
    return static_cast<i64>(s % m);
  }
  [[nodiscard]] i64 bval(const i64* x, const i64* y) const {
    i128 s = 0;
    for (std::size_t i = 0; i < k(); ++i) {
      if (x[i] == 0) continue;
      for (std::size_t j = 0; j < k(); ++j) {
        if (y[j] == 0) continue;
        s += mulmod(mulmod(x[i], y[j], n), b[i][j], n);
      }
      s %= n;
    }
    return static_cast<i64>(s % n);
  }
};

Integer common_denominator(const FiniteQuadraticModule& m) {
  Integer n = 1;
  for (const auto& row : m.b_values())
    for (const auto& x : row) n = lcm(n, Integer(x.get_den()));
  if (m.has_q())
    for (const auto& x : m.q_values()) n = lcm(n, Integer(x.get_den()));
  return n;
}

Scaled scale(const FiniteQuadraticModule& m, const Integer& denom, bool use_q) {
  Scaled s;
  s.n = to_i64(denom);
  if (s.n > (i64{1} << 61)) throw Error(ErrorCode::SearchSpaceTooLarge, "form denominators too large");
  for (const auto& d : m.factors()) s.factors.push_back(to_i64(d));
  s.has_q = use_q;
  if (use_q) s.q.resize(m.length());
  for (const auto& row : m.b_values()) {
    std::vector<i64> r;
    for (const auto& x : row) {
      Rational v = x * Rational(denom);
      r.push_back(to_i64(v.get_num()));
    }
    s.b.push_back(std::move(r));
  }
  if (use_q)
    for (std::size_t i = 0; i < m.length(); ++i) {
      Rational v = m.q_values()[i] * Rational(denom);
      s.q[i] = to_i64(v.get_num());
    }
  return s;
}

void check_bound(const FiniteQuadraticModule& m, const ModuleSearchOptions& options) {
  if (m.order() > options.order_bound)
    throw Error(ErrorCode::SearchSpaceTooLarge,
                "module order " + m.order().get_str() + " exceeds bound " + options.order_bound.get_str());
}

i64 gcd64(i64 a, i64 b) { return std::gcd(a, b); }

// Cyclic case: all units α (ascending) with α²·q_t ≡ q_s and α²·b_t ≡ b_s.
std::vector<i64> cyclic_multipliers(const Scaled& src, const Scaled& dst, bool first_only) {
  std::vector<i64> out;
  const i64 m = src.factors[0];
  for (i64 a = 1; a < m; ++a) {
    if (gcd64(a, m) != 1) continue;
    const i64 a2q = mulmod(a, a, 2 * src.n);
    if (mulmod(a2q % src.n, dst.b[0][0], src.n) != src.b[0][0]) continue;
    if (src.has_q && mulmod(a2q, dst.q[0], 2 * src.n) != src.q[0]) continue;
    out.push_back(a);
    if (first_only) break;
  }
  return out;
}

class GenericSearch {
 public:
  GenericSearch(const FiniteQuadraticModule& source, const FiniteQuadraticModule& target, const Scaled& src,
                const Scaled& dst)
      : source_(source), target_(target), src_(src), dst_(dst) {
    enumerate_target();
  }

  std::vector<ModuleIsometry> run(bool first_only) {
    first_only_ = first_only;
    const std::size_t k = src_.k();
    candidates_.assign(k, {});
    for (std::size_t i = 0; i < k; ++i) {
      std::vector<i64> g(k, 0);
      g[i] = 1;
      const i64 qs = src_.has_q ? src_.qval(g.data()) : 0;
      for (std::size_t e = 0; e < count_; ++e) {
        if (orders_[e] != src_.factors[i]) continue;
        if (dst_.bval(elem(e), elem(e)) != src_.b[i][i]) continue;
        if (src_.has_q && qvals_[e] != qs) continue;
        candidates_[i].push_back(e);
      }
    }
    chosen_.assign(k, 0);
    found_.clear();
    recurse(0);
    return std::move(found_);
  }

 private:
  const i64* elem(std::size_t e) const { return residues_.data() + e * dst_.k(); }

  void enumerate_target() {
    const std::size_t k = dst_.k();
    count_ = 1;
    for (i64 d : dst_.factors) count_ *= static_cast<std::size_t>(d);
    residues_.assign(count_ * k, 0);
    orders_.assign(count_, 1);
    qvals_.assign(count_, 0);
    std::vector<i64> a(k, 0);
    for (std::size_t e = 0; e < count_; ++e) {
      i64 ord = 1;
      for (std::size_t i = 0; i < k; ++i) {
        residues_[e * k + i] = a[i];
        const i64 part = dst_.factors[i] / gcd64(a[i], dst_.factors[i]);
        ord = ord / gcd64(ord, part) * part;
      }
      orders_[e] = ord;
      if (dst_.has_q) qvals_[e] = dst_.qval(a.data());
      // Lexicographic successor, first coordinate most significant.
      for (std::size_t i = k; i-- > 0;) {
        if (++a[i] < dst_.factors[i]) break;
        a[i] = 0;
      }
    }
  }

  bool recurse(std::size_t i) {
    const std::size_t k = src_.k();
    if (i == k) {
      ModuleIsometry f{source_.factors(), target_.factors(), IntMatrix(dst_.k(), k)};
      for (std::size_t j = 0; j < k; ++j)
        for (std::size_t r = 0; r < dst_.k(); ++r) f.matrix(r, j) = elem(chosen_[j])[r];
      if (!is_module_isometry(f, source_, target_)) return false;
      found_.push_back(std::move(f));
      return first_only_;
    }
    for (std::size_t e : candidates_[i]) {
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j) ok = dst_.bval(elem(e), elem(chosen_[j])) == src_.b[i][j];
      if (!ok) continue;
      chosen_[i] = e;
      if (recurse(i + 1)) return true;
    }
    return false;
  }

  const FiniteQuadraticModule& source_;
  const FiniteQuadraticModule& target_;
  const Scaled& src_;
  const Scaled& dst_;
  std::size_t count_ = 0;
  std::vector<i64> residues_;
  std::vector<i64> orders_;
  std::vector<i64> qvals_;
  std::vector<std::vector<std::size_t>> candidates_;
  std::vector<std::size_t> chosen_;
  std::vector<ModuleIsometry> found_;
  bool first_only_ = true;
};

std::vector<ModuleIsometry> search(const FiniteQuadraticModule& a, const FiniteQuadraticModule& b,
                                   const ModuleSearchOptions& options, bool first_only) {
  if (a.has_q() != b.has_q())
    throw Error(ErrorCode::InvalidArgument, "cannot compare a quadratic module with a bilinear one");
  if (a.factors() != b.factors()) return {};
  check_bound(a, options);
  check_bound(b, options);
  if (a.is_trivial()) return {identity_isometry(a)};

  const Integer denom = lcm(common_denominator(a), common_denominator(b));
  const Scaled src = scale(a, denom, a.has_q());
  const Scaled dst = scale(b, denom, b.has_q());

  if (a.is_cyclic() && options.cyclic_fast_path) {
    std::vector<ModuleIsometry> out;
    for (i64 alpha : cyclic_multipliers(src, dst, first_only)) {
      ModuleIsometry f{a.factors(), b.factors(), IntMatrix(1, 1)};
      f.matrix(0, 0) = static_cast<long>(alpha);
      out.push_back(std::move(f));
    }
    return out;
  }
  GenericSearch engine(a, b, src, dst);
  return engine.run(first_only);
}

}  // namespace

std::optional<ModuleIsometry> is_isometric_modules(const FiniteQuadraticModule& a,
                                                   const FiniteQuadraticModule& b,
                                                   const ModuleSearchOptions& options) {
  auto found = search(a, b, options, true);
  if (found.empty()) return std::nullopt;
  return std::move(found.front());
}

std::vector<ModuleIsometry> orthogonal_group_of_module(const FiniteQuadraticModule& a,
                                                       const ModuleSearchOptions& options) {
  return search(a, a, options, false);
}

ModuleIsometry induced_isometry(const FiniteQuadraticModule& a, const IntMatrix& automorphism) {
  if (!a.has_lattice()) throw Error(ErrorCode::InvalidArgument, "module was not computed from a lattice");
  const std::size_t k = a.length();
  ModuleIsometry f{a.factors(), a.factors(), IntMatrix(k, k)};
  for (std::size_t j = 0; j < k; ++j) {
    const RatVector& g = a.generator_vectors()[j];
    RatVector image(g.size());
    for (std::size_t r = 0; r < g.size(); ++r)
      for (std::size_t c = 0; c < g.size(); ++c) image[r] += Rational(automorphism(r, c)) * g[c];
    const ModuleElement e = a.element_of(image);
    for (std::size_t r = 0; r < k; ++r) f.matrix(r, j) = e[r];
  }
  return f;
}

GammaMap gamma_complement_map(const SublatticeEmbedding& v) {
  const Lattice& ambient = v.ambient();
  if (!ambient.is_unimodular()) throw Error(ErrorCode::NotUnimodular, "ambient lattice must be unimodular");
  if (!is_primitive(v)) throw Error(ErrorCode::NotPrimitive, "sublattice must be primitive");
  const Lattice vl = v.as_lattice();
  SublatticeEmbedding w = orthogonal_complement(v);
  const Lattice wl = w.as_lattice();
  FiniteQuadraticModule source = ambient.is_even() ? discriminant_module(vl) : discriminant_bilinear_module(vl);
  FiniteQuadraticModule target = ambient.is_even() ? discriminant_module(wl) : discriminant_bilinear_module(wl);

  // Lift the functional b(-, x) on V to some y in L; then y - x lies in
  // (V^⊥)^∨ and represents γ(x).
  const IntMatrix pairing = v.basis().transpose() * ambient.gram();
  const std::size_t k = source.length();
  ModuleIsometry map{source.factors(), target.factors(), IntMatrix(target.length(), k)};
  for (std::size_t j = 0; j < k; ++j) {
    const RatVector& c = source.generator_vectors()[j];
    IntVector functional(v.rank());
    for (std::size_t r = 0; r < v.rank(); ++r) {
      Rational s = 0;
      for (std::size_t t = 0; t < v.rank(); ++t) s += Rational(vl.gram()(r, t)) * c[t];
      functional[r] = s.get_num();
    }
    auto y = solve_integer(pairing, functional);
    if (!y) throw Error(ErrorCode::NotUnimodular, "dual vector of V does not lift to the ambient lattice");
    RatVector z(ambient.rank());
    for (std::size_t r = 0; r < ambient.rank(); ++r) {
      Rational x = 0;
      for (std::size_t t = 0; t < v.rank(); ++t) x += Rational(v.basis()(r, t)) * c[t];
      z[r] = Rational((*y)[r]) - x;
    }
    auto wc = solve_rational(w.basis(), z);
    if (!wc) throw Error(ErrorCode::InvalidIsometry, "lift difference is not orthogonal to V");
    const ModuleElement e = target.element_of(*wc);
    for (std::size_t r = 0; r < target.length(); ++r) map.matrix(r, j) = e[r];
  }
  if (!is_module_isometry(map, source, target, -1))
    throw Error(ErrorCode::InvalidIsometry, "γ failed the anti-isometry check");
  return GammaMap{std::move(w), std::move(source), std::move(target), std::move(map)};
}

}  // namespace latfm
