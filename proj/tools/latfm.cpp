// latfm: command-line front end.
#include <cstdint>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "latfm/error.hpp"
#include "latfm/fm_count.hpp"
#include "latfm/isometry_oracle.hpp"
#include "latfm/json_io.hpp"
#include "latfm/mukai.hpp"
#include "latfm/parallel.hpp"
#include "latfm/rank2_family.hpp"
#include "latfm/selftest.hpp"

using namespace latfm;

namespace {

constexpr int kOk = 0;
constexpr int kDomain = 1;
constexpr int kUsage = 2;
constexpr int kBudget = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

PolarizationDegree degree_arg(std::uint64_t two_d) {
  if (two_d < 2 || two_d % 2 != 0)
    throw UsageError("--degree is the geometric degree 2d and must be even and at least 2, got " +
                     std::to_string(two_d));
  return PolarizationDegree::from_degree(two_d);
}

std::pair<std::uint64_t, std::uint64_t> range_arg(const std::string& text) {
  std::string s = text;
  std::size_t sep = s.find("..");
  std::size_t skip = 2;
  if (sep == std::string::npos) {
    sep = s.find(':');
    skip = 1;
  }
  if (sep == std::string::npos) throw UsageError("--range expects a..b, got '" + text + "'");
  try {
    std::size_t pa = 0, pb = 0;
    const std::string a = s.substr(0, sep), b = s.substr(sep + skip);
    const auto lo = std::stoull(a, &pa);
    const auto hi = std::stoull(b, &pb);
    if (pa != a.size() || pb != b.size() || lo > hi) throw UsageError("");
    return {lo, hi};
  } catch (...) {
    throw UsageError("--range expects a..b with a <= b, got '" + text + "'");
  }
}

IntMatrix gram_arg(const std::string& text, const char* flag) {
  try {
    return parse_gram(text);
  } catch (const Error& e) {
    throw UsageError(std::string(flag) + ": " + e.what());
  }
}

void emit(const Json& j) { std::cout << j.dump(2) << '\n'; }

std::string sig_text(const Signature& s) {
  return "(" + std::to_string(s.plus) + "," + std::to_string(s.minus) + ")";
}

Json sig_json(const Signature& s) { return Json::array({s.plus, s.minus}); }

// ---- fm-count

struct FmRow {
  std::uint64_t degree = 0;
  std::uint64_t d = 0;
  unsigned p = 0;
  std::uint64_t count = 0;
  std::uint64_t via_cosets = 0;
};

int cmd_fm_count(std::optional<std::uint64_t> degree, const std::string& range, bool json) {
  std::vector<std::uint64_t> degrees;
  if (!range.empty()) {
    auto [lo, hi] = range_arg(range);
    for (std::uint64_t k = std::max<std::uint64_t>(lo, 2); k <= hi; ++k)
      if (k % 2 == 0) degrees.push_back(k);
  } else if (degree) {
    degrees.push_back(*degree);
  } else {
    throw UsageError("fm-count needs --degree or --range");
  }
  for (auto k : degrees) degree_arg(k);

  const auto rows = parallel_map<FmRow>(degrees.size(), [&](std::size_t i) {
    const PolarizationDegree pd = PolarizationDegree::from_degree(degrees[i]);
    return FmRow{pd.degree(), pd.d(), distinct_prime_count(pd.d()), fm_count_rho1(pd), fm_count_rho1_via_cosets(pd)};
  });

  if (json) {
    Json out = Json::array();
    for (const auto& r : rows)
      out.push_back({{"degree", r.degree}, {"d", r.d}, {"p", r.p}, {"fm_count", r.count}, {"via_cosets", r.via_cosets}});
    emit({{"rows", out}});
  } else {
    std::cout << std::setw(8) << "degree" << std::setw(8) << "d" << std::setw(4) << "p" << std::setw(8) << "|FM|"
              << std::setw(8) << "cosets" << '\n';
    for (const auto& r : rows)
      std::cout << std::setw(8) << r.degree << std::setw(8) << r.d << std::setw(4) << r.p << std::setw(8) << r.count
                << std::setw(8) << r.via_cosets << '\n';
  }
  for (const auto& r : rows)
    if (r.count != r.via_cosets) return kDomain;
  return kOk;
}

// ---- disc

int cmd_disc(const std::string& gram_text, bool json) {
  const Lattice l(gram_arg(gram_text, "--gram"));
  const FiniteQuadraticModule a = l.is_even() ? discriminant_module(l) : discriminant_bilinear_module(l);
  if (json) {
    emit({{"lattice", lattice_to_json(l)},
          {"even", l.is_even()},
          {"determinant", integer_to_json(l.determinant())},
          {"signature", sig_json(l.signature())},
          {"module", module_to_json(a)}});
    return kOk;
  }
  std::cout << "rank " << l.rank() << "  det " << l.determinant() << "  signature " << sig_text(l.signature())
            << (l.is_even() ? "  even" : "  odd") << '\n';
  std::cout << "A_L =";
  if (a.is_trivial()) std::cout << " 0";
  for (std::size_t i = 0; i < a.length(); ++i) std::cout << (i ? " + " : " ") << "Z/" << a.factors()[i];
  std::cout << '\n';
  for (std::size_t i = 0; i < a.length(); ++i) {
    std::cout << "  g" << i;
    if (a.has_q()) std::cout << "  q=" << rational_to_string(a.q_values()[i]);
    std::cout << "  b=[";
    for (std::size_t j = 0; j < a.length(); ++j) std::cout << (j ? " " : "") << rational_to_string(a.b_values()[i][j]);
    std::cout << "]\n";
  }
  return kOk;
}

// ---- mukai

Json mukai_json(const MukaiVector& v) {
  return {{"r", integer_to_json(v.r)}, {"h", integer_to_json(v.h_mult)}, {"s", integer_to_json(v.s)},
          {"square", integer_to_json(v.square())}, {"primitive", v.is_primitive()}};
}

int cmd_mukai(std::uint64_t degree, bool classes, bool shadow, bool json) {
  const PolarizationDegree pd = degree_arg(degree);
  const auto vs = enumerate_mukai_vectors(pd);
  const auto cls = distinct_classes(vs);
  std::vector<ModuliShadow> shadows;
  if (shadow) {
    auto computed = parallel_map<std::optional<ModuliShadow>>(
        vs.size(), [&](std::size_t i) { return std::optional<ModuliShadow>(moduli_lattice_shadow(vs[i])); });
    for (auto& s : computed) shadows.push_back(std::move(*s));
  }

  if (json) {
    Json out;
    out["degree"] = pd.degree();
    out["d"] = pd.d();
    out["p"] = distinct_prime_count(pd.d());
    Json vj = Json::array();
    for (const auto& v : vs) vj.push_back(mukai_json(v));
    out["vectors"] = std::move(vj);
    out["class_count"] = cls.size();
    if (classes) {
      Json cj = Json::array();
      for (const auto& c : cls) {
        Json members = Json::array();
        for (const auto& m : c.members) members.push_back(mukai_json(m));
        cj.push_back({{"representative", mukai_json(c.representative)}, {"members", members}});
      }
      out["classes"] = std::move(cj);
    }
    if (shadow) {
      Json sj = Json::array();
      for (std::size_t i = 0; i < vs.size(); ++i) {
        const auto& s = shadows[i];
        const Lattice& q = s.quotient.lattice;
        sj.push_back({{"vector", mukai_json(vs[i])},
                      {"rank", q.rank()},
                      {"even", q.is_even()},
                      {"determinant", integer_to_json(q.determinant())},
                      {"signature", sig_json(q.signature())},
                      {"ns_square", integer_to_json(s.ns_square)},
                      {"transcendental_is_ns_complement", s.transcendental_is_ns_complement},
                      {"transcendental_matches_tx", s.transcendental_matches_tx}});
      }
      out["shadow"] = std::move(sj);
    }
    emit(out);
    return kOk;
  }

  std::cout << "degree " << pd.degree() << "  d " << pd.d() << "  p(d) " << distinct_prime_count(pd.d())
            << "  classes " << cls.size() << '\n';
  std::cout << std::setw(12) << "r" << std::setw(6) << "h" << std::setw(12) << "s" << std::setw(8) << "v.v" << '\n';
  for (const auto& v : vs)
    std::cout << std::setw(12) << v.r << std::setw(6) << v.h_mult << std::setw(12) << v.s << std::setw(8) << v.square()
              << '\n';
  if (classes) {
    std::cout << "swap classes:\n";
    for (const auto& c : cls) {
      std::cout << "  (" << c.representative.r << ", h, " << c.representative.s << ") <-";
      for (const auto& m : c.members) std::cout << " (" << m.r << "," << m.s << ")";
      std::cout << '\n';
    }
  }
  if (shadow) {
    std::cout << "shadow:\n";
    for (std::size_t i = 0; i < vs.size(); ++i) {
      const auto& s = shadows[i];
      const Lattice& q = s.quotient.lattice;
      std::cout << "  (" << vs[i].r << "," << vs[i].s << ")  rank " << q.rank() << "  det " << q.determinant()
                << "  sig " << sig_text(q.signature()) << (q.is_even() ? "  even" : "  odd") << "  ns^2 "
                << s.ns_square << "  T " << (s.transcendental_is_ns_complement && s.transcendental_matches_tx ? "ok" : "MISMATCH")
                << '\n';
    }
  }
  return kOk;
}

// ---- family

int cmd_family(std::uint64_t count, std::uint64_t degree, const std::string& ambient, bool json) {
  const PolarizationDegree pd = degree_arg(degree);
  if (count == 0) throw UsageError("--count must be at least 1");
  Ambient amb;
  if (ambient == "k3") amb = Ambient::K3;
  else if (ambient == "abelian") amb = Ambient::Abelian;
  else throw UsageError("--ambient must be k3 or abelian");
  const FamilyBundle f = build_family(count, pd.d(), amb);
  if (json) {
    emit(family_to_json(f));
    return kOk;
  }
  std::cout << "N " << f.count << "  degree " << 2 * f.d << "  n " << f.n << "  ambient " << to_string(f.ambient)
            << '\n';
  for (std::size_t i = 0; i < f.members.size(); ++i)
    std::cout << "  L" << i << "  d=" << f.members[i].d << "  gram " << f.members[i].lattice.gram()
              << "  A=Z/" << f.members[i].closed_form.order() << (f.represents_zero[i] ? "  isotropic" : "") << '\n';
  for (const auto& w : f.witnesses)
    std::cout << "  witness (" << w.i << "," << w.j << ")  alpha=" << w.witness.alpha << '\n';
  for (const auto& c : f.certificates)
    std::cout << "  certificate (" << c.i << "," << c.j << ")  d1-d2=" << c.certificate.difference_residue
              << "  d1*d2=" << c.certificate.product_residue << " mod " << c.certificate.n << '\n';
  for (const auto& a : f.attestations)
    std::cout << "  attestation (" << a.i << "," << a.j << ")  rank " << a.attestation.rank << "  sig "
              << sig_text(a.attestation.signature) << "  l(A) " << a.attestation.length << '\n';
  std::cout << "  degree-" << 2 * f.d << " polarization on L0: " << (f.has_degree_polarization ? "yes" : "no") << '\n';
  return kOk;
}

// ---- isometry

int cmd_isometry(const std::string& g1, const std::string& g2, long entries, std::uint64_t nodes, bool json) {
  if (entries < 1) throw UsageError("--budget-entries must be positive");
  if (nodes < 1) throw UsageError("--budget-nodes must be positive");
  const Lattice l1(gram_arg(g1, "--gram1"));
  const Lattice l2(gram_arg(g2, "--gram2"));
  const IsometrySearchResult r = find_isometry_bounded(l1, l2, SearchBudget{entries, nodes});
  if (json) {
    Json out;
    out["outcome"] = std::string(to_string(r.outcome));
    out["witness"] = r.witness ? matrix_to_json(r.witness->matrix) : Json(nullptr);
    out["nodes"] = r.nodes;
    out["node_limit_hit"] = r.node_limit_hit;
    out["entry_bound"] = entries;
    out["detail"] = r.detail;
    emit(out);
  } else {
    std::cout << to_string(r.outcome);
    if (r.witness) std::cout << "  " << r.witness->matrix;
    std::cout << "  nodes " << r.nodes;
    if (!r.detail.empty()) std::cout << "  (" << r.detail << ")";
    std::cout << '\n';
  }
  return r.outcome == SearchOutcome::BudgetExhausted ? kBudget : kOk;
}

// ---- orbits

int cmd_orbits(std::uint64_t degree, bool json) {
  const PolarizationDegree pd = degree_arg(degree);
  const PolarizationOrbits o = polarization_orbits_in_U(pd.d());
  auto pair_json = [](const std::pair<Integer, Integer>& v) {
    return Json::array({integer_to_json(v.first), integer_to_json(v.second)});
  };
  if (json) {
    Json reps = Json::array(), orbs = Json::array();
    for (const auto& r : o.representatives) reps.push_back(pair_json(r));
    for (const auto& orb : o.orbits) {
      Json oj = Json::array();
      for (const auto& v : orb) oj.push_back(pair_json(v));
      orbs.push_back(std::move(oj));
    }
    emit({{"degree", pd.degree()},
          {"d", pd.d()},
          {"count", o.count},
          {"expected", fm_count_rho1(pd)},
          {"representatives", reps},
          {"orbits", orbs}});
    return kOk;
  }
  std::cout << "degree " << pd.degree() << "  orbits " << o.count << '\n';
  for (std::size_t i = 0; i < o.count; ++i) {
    std::cout << "  (" << o.representatives[i].first << "," << o.representatives[i].second << ") <-";
    for (const auto& v : o.orbits[i]) std::cout << " (" << v.first << "," << v.second << ")";
    std::cout << '\n';
  }
  return kOk;
}

// ---- selftest

int cmd_selftest(std::uint64_t range_d, bool corrupt, bool json) {
  if (range_d < 1) throw UsageError("--range-d must be positive");
  const auto results = run_selftest(SelftestOptions{range_d, corrupt});
  bool ok = true;
  for (const auto& r : results) ok = ok && r.passed;
  if (json) {
    Json claims = Json::array();
    for (const auto& r : results)
      claims.push_back({{"name", r.name}, {"anchor", r.anchor}, {"passed", r.passed}, {"detail", r.detail}});
    emit({{"passed", ok}, {"claims", claims}});
  } else {
    for (const auto& r : results) {
      std::cout << (r.passed ? "PASS " : "FAIL ") << std::left << std::setw(32) << r.name << std::right << r.anchor;
      if (!r.passed) std::cout << "  -- " << r.detail;
      std::cout << '\n';
    }
  }
  return ok ? kOk : kDomain;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lattice computations for Fourier-Mukai partners of K3 surfaces"};
  app.require_subcommand(1);
  bool json = false;
  app.add_flag("--json", json, "JSON output")->configurable(false);

  std::optional<std::uint64_t> fm_degree;
  std::string fm_range;
  auto* fm = app.add_subcommand("fm-count", "FM partner count for Picard number 1");
  fm->add_option("--degree", fm_degree, "geometric degree 2d");
  fm->add_option("--range", fm_range, "degrees a..b (odd degrees are skipped)");
  fm->add_flag("--json", json, "JSON output");

  std::string disc_gram;
  auto* disc = app.add_subcommand("disc", "discriminant module of a lattice");
  disc->add_option("--gram", disc_gram, "Gram matrix: [[..],..], lattice JSON, or 'a,b;c,d'")->required();
  disc->add_flag("--json", json, "JSON output");

  std::uint64_t degree = 0;
  bool classes = false, shadow = false;
  auto* mukai = app.add_subcommand("mukai", "isotropic Mukai vectors v = (r, h, s)");
  mukai->add_option("--degree", degree, "geometric degree 2d")->required();
  mukai->add_flag("--classes", classes, "group into swap classes");
  mukai->add_flag("--shadow", shadow, "lattice shadow of each moduli space");
  mukai->add_flag("--json", json, "JSON output");

  std::uint64_t count = 0;
  std::string ambient = "k3";
  auto* family = app.add_subcommand("family", "pairwise non-isometric L_{d,n} family");
  family->add_option("--count", count, "N")->required();
  family->add_option("--degree", degree, "geometric degree 2d")->required();
  family->add_option("--ambient", ambient, "k3 or abelian");
  family->add_flag("--json", json, "JSON output");

  std::string gram1, gram2;
  long entries = SearchBudget{}.entry_bound;
  std::uint64_t nodes = SearchBudget{}.node_limit;
  auto* iso = app.add_subcommand("isometry", "bounded lattice isometry search");
  iso->add_option("--gram1", gram1, "first Gram matrix")->required();
  iso->add_option("--gram2", gram2, "second Gram matrix")->required();
  iso->add_option("--budget-entries", entries, "largest absolute entry searched");
  iso->add_option("--budget-nodes", nodes, "search node limit");
  iso->add_flag("--json", json, "JSON output");

  auto* orbits = app.add_subcommand("orbits", "O(U)-orbits of primitive degree-2d vectors in U");
  orbits->add_option("--degree", degree, "geometric degree 2d")->required();
  orbits->add_flag("--json", json, "JSON output");

  std::uint64_t range_d = 200;
  bool corrupt = false;
  auto* self = app.add_subcommand("selftest", "check every invariant claim");
  self->add_option("--range-d", range_d, "upper end of the d-ranges");
  self->add_flag("--corrupt-builtin", corrupt)->group("");
  self->add_flag("--json", json, "JSON output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*fm) return cmd_fm_count(fm_degree, fm_range, json);
    if (*disc) return cmd_disc(disc_gram, json);
    if (*mukai) return cmd_mukai(degree, classes, shadow, json);
    if (*family) return cmd_family(count, degree, ambient, json);
    if (*iso) return cmd_isometry(gram1, gram2, entries, nodes, json);
    if (*orbits) return cmd_orbits(degree, json);
    if (*self) return cmd_selftest(range_d, corrupt, json);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDomain;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDomain;
  }
  return kUsage;
}
