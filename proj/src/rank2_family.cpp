#include "latfm/rank2_family.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "latfm/error.hpp"

namespace latfm {

namespace {

using u128 = unsigned __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

Integer big(std::uint64_t x) {
  Integer out;
  mpz_import(out.get_mpz_t(), 1, 1, sizeof(x), 0, 0, &x);
  return out;
}

IntMatrix member_gram(std::uint64_t d, std::uint64_t n) {
  IntMatrix g(2, 2);
  g(0, 0) = 2 * big(d);
  g(0, 1) = g(1, 0) = big(n);
  return g;
}

Lattice u_plus_u() { return direct_sum(hyperbolic_plane(), hyperbolic_plane()); }

IntMatrix member_basis(std::uint64_t d, std::uint64_t n, std::size_t ambient_rank) {
  IntMatrix b(ambient_rank, 2);
  b(0, 0) = 1;
  b(1, 0) = big(d);
  b(1, 1) = big(n);
  b(2, 1) = 1;
  return b;
}

bool closed_form_matches(const FamilyMember& m) {
  const FiniteQuadraticModule snf = discriminant_module(m.lattice);
  if (snf.order() != m.closed_form.order() || !snf.is_cyclic()) return false;
  // The generator pairs integrally with L, so it lies in L^∨.
  const IntMatrix& g = m.lattice.gram();
  for (std::size_t i = 0; i < 2; ++i) {
    const Rational v = Rational(g(i, 0)) * m.closed_form_generator[0] + Rational(g(i, 1)) * m.closed_form_generator[1];
    if (v.get_den() != 1) return false;
  }
  const ModuleElement x = snf.element_of(m.closed_form_generator);
  if (snf.element_order(x) != m.closed_form.order()) return false;
  if (m.closed_form.is_trivial()) return snf.is_trivial();
  if (snf.q(x) != m.closed_form.q_values()[0]) return false;
  return is_isometric_modules(m.closed_form, snf).has_value();
}

}  // namespace

FamilyMember make_member(std::uint64_t d, std::uint64_t n) {
  if (d == 0 || n == 0) throw Error(ErrorCode::InvalidArgument, "d and n must be positive");
  if (std::gcd(2 * d, n) != 1)
    throw Error(ErrorCode::NotCoprime, "gcd(2d, n) != 1 for d=" + std::to_string(d) + ", n=" + std::to_string(n));

  const Integer nn = big(n);
  const Integer n2 = nn * nn;
  RatVector gen{Rational(nn, n2), Rational(-2 * big(d), n2)};
  for (auto& x : gen) x.canonicalize();

  std::vector<Integer> factors;
  std::vector<Rational> q;
  std::vector<std::vector<Rational>> b;
  if (n > 1) {
    factors.push_back(n2);
    Rational v(-2 * big(d), n2);
    v.canonicalize();
    q.push_back(mod_floor(v, Integer(2)));
    b.push_back({mod_floor(v, Integer(1))});
  }

  const Lattice ambient = u_plus_u();
  FamilyMember m{d,
                 n,
                 Lattice(member_gram(d, n)),
                 SublatticeEmbedding(ambient, member_basis(d, n, ambient.rank())),
                 FiniteQuadraticModule(std::move(factors), std::move(q), std::move(b)),
                 std::move(gen),
                 false};
  m.matches_snf = closed_form_matches(m);
  return m;
}

std::optional<DiscIsoWitness> disc_groups_isomorphic(std::uint64_t d1, std::uint64_t n1, std::uint64_t d2,
                                                     std::uint64_t n2) {
  if (n1 != n2) return std::nullopt;
  const std::uint64_t n = n1;
  if (n == 1) return DiscIsoWitness{d1, d2, n, 1};
  const std::uint64_t m = n * n;
  const std::uint64_t a = d1 % m;
  const std::uint64_t target = d2 % m;
  for (std::uint64_t alpha = 1; alpha < m; ++alpha) {
    if (std::gcd(alpha, n) != 1) continue;
    if (mulmod(a, mulmod(alpha, alpha, m), m) == target) return DiscIsoWitness{d1, d2, n, alpha};
  }
  return std::nullopt;
}

NecessaryConditions isometry_necessary_conditions(std::uint64_t d1, std::uint64_t d2, std::uint64_t n) {
  NecessaryConditions out;
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "n must be positive");
  const std::uint64_t diff = (d1 % n + n - d2 % n) % n;
  const std::uint64_t prod = mulmod(d1 % n, d2 % n, n);
  out.a2 = diff == 0;
  out.b2 = prod == 1 % n;
  if (!out.a2 && !out.b2) out.certificate = NonIsometryCertificate{d1, d2, n, diff, prod};
  return out;
}

bool verify_certificate(const NonIsometryCertificate& c) {
  const Integer n = big(c.n);
  const Integer diff = mod_floor(Integer(big(c.d1) - big(c.d2)), n);
  const Integer prod = mod_floor(Integer(big(c.d1) * big(c.d2)), n);
  return diff != 0 && prod != mod_floor(Integer(1), n) && diff == big(c.difference_residue) &&
         prod == big(c.product_residue);
}

NikulinInput NikulinInput::from_lattice(const Lattice& t) {
  return NikulinInput{discriminant_module(t), t.signature(), t.rank()};
}

NikulinAttestation check_nikulin_hypotheses(const NikulinInput& t1, const NikulinInput& t2) {
  if (!(t1.signature == t2.signature) || t1.rank != t2.rank)
    throw Error(ErrorCode::HypothesisFailed, "signature");
  if (t1.signature.plus == 0 || t1.signature.minus == 0) throw Error(ErrorCode::HypothesisFailed, "indefinite");
  const std::size_t length = t1.module.length();
  if (t1.rank < 2 + length) throw Error(ErrorCode::HypothesisFailed, "rank");
  auto iso = is_isometric_modules(t1.module, t2.module);
  if (!iso) throw Error(ErrorCode::HypothesisFailed, "discriminant-form");
  return NikulinAttestation{t1.rank, t1.signature, length, std::move(*iso)};
}

std::string_view to_string(Ambient a) { return a == Ambient::K3 ? "k3" : "abelian"; }

std::uint64_t least_odd_prime_above(std::uint64_t x) {
  auto is_prime = [](std::uint64_t p) {
    if (p < 2) return false;
    if (p % 2 == 0) return p == 2;
    for (std::uint64_t f = 3; f <= p / f; f += 2)
      if (p % f == 0) return false;
    return true;
  };
  std::uint64_t p = x + 1;
  if (p < 3) p = 3;
  if (p % 2 == 0) ++p;
  while (!is_prime(p)) p += 2;
  return p;
}

FamilyBundle build_family(std::uint64_t count, std::uint64_t d, Ambient ambient) {
  if (count == 0 || d == 0) throw Error(ErrorCode::InvalidArgument, "N and d must be positive");
  const u128 bound = static_cast<u128>(d) * d * count * count * count * count;
  if (bound >> 62) throw Error(ErrorCode::InvalidArgument, "d²N⁴ is out of range");
  const std::uint64_t n = least_odd_prime_above(static_cast<std::uint64_t>(bound));

  FamilyBundle out{count, d, n, ambient, {}, {}, {}, {}, {}, false, {}};
  const Lattice big_ambient =
      ambient == Ambient::K3 ? k3_lattice() : direct_sum(u_plus_u(), hyperbolic_plane());

  std::vector<NikulinInput> inputs;
  for (std::uint64_t i = 1; i <= count; ++i) {
    FamilyMember m = make_member(d * i * i, n);
    const std::vector<Integer> zero{0, 1};
    out.represents_zero.push_back(m.lattice.norm(zero) == 0 && is_primitive(m.embedding));
    SublatticeEmbedding s(big_ambient, member_basis(m.d, n, big_ambient.rank()));
    SublatticeEmbedding t = orthogonal_complement(s);
    inputs.push_back(NikulinInput::from_lattice(t.as_lattice()));
    out.complements.push_back(std::move(t));
    out.members.push_back(std::move(m));
  }
  const std::vector<Integer> e{1, 0};
  out.has_degree_polarization = out.members.front().lattice.norm(e) == 2 * big(d);

  for (std::size_t i = 0; i < count; ++i)
    for (std::size_t j = i + 1; j < count; ++j) {
      const auto& a = out.members[i];
      const auto& b = out.members[j];
      if (auto w = disc_groups_isomorphic(a.d, n, b.d, n)) out.witnesses.push_back({i, j, *w});
      if (auto c = isometry_necessary_conditions(a.d, b.d, n).certificate) out.certificates.push_back({i, j, *c});
      out.attestations.push_back({i, j, check_nikulin_hypotheses(inputs[i], inputs[j])});
    }
  return out;
}

PolarizationOrbits polarization_orbits_in_U(std::uint64_t d) {
  if (d == 0) throw Error(ErrorCode::InvalidArgument, "d must be positive");
  using Vec = std::pair<Integer, Integer>;
  std::vector<Vec> vectors;
  for (std::uint64_t a = 1; a <= d; ++a) {
    if (d % a != 0 || std::gcd(a, d / a) != 1) continue;
    vectors.emplace_back(big(a), big(d / a));
    vectors.emplace_back(-big(a), -big(d / a));
  }
  std::set<Vec> seen;
  PolarizationOrbits out;
  for (const auto& v : vectors) {
    if (seen.count(v)) continue;
    const Vec images[] = {v, {-v.first, -v.second}, {v.second, v.first}, {-v.second, -v.first}};
    std::set<Vec> orbit(std::begin(images), std::end(images));
    seen.insert(orbit.begin(), orbit.end());
    Vec rep = v;
    for (const auto& w : orbit)
      if (w.first > 0 && w.first <= w.second) rep = w;
    out.representatives.push_back(rep);
    out.orbits.emplace_back(orbit.begin(), orbit.end());
  }
  std::vector<std::size_t> order(out.representatives.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t x, std::size_t y) { return out.representatives[x] < out.representatives[y]; });
  PolarizationOrbits sorted;
  for (auto k : order) {
    sorted.representatives.push_back(out.representatives[k]);
    sorted.orbits.push_back(out.orbits[k]);
  }
  sorted.count = sorted.representatives.size();
  return sorted;
}

}  // namespace latfm
