#include "latfm/isometry_oracle.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>

#include "latfm/error.hpp"

namespace latfm {

std::string_view to_string(SearchOutcome outcome) {
  switch (outcome) {
    case SearchOutcome::Found: return "found";
    case SearchOutcome::NotIsometric: return "not-isometric";
    case SearchOutcome::BudgetExhausted: return "budget-exhausted";
  }
  return "unknown";
}

namespace {

using i64 = std::int64_t;
using i128 = __int128;

struct BoxSearch {
  std::size_t n = 0;
  std::vector<i64> g1;  // row-major
  std::vector<std::vector<i64>> box;  // shell-ordered coefficient vectors
  std::uint64_t nodes = 0;
  std::uint64_t limit = 0;
  bool limit_hit = false;

  i128 pair(const std::vector<i64>& x, const std::vector<i64>& y) const {
    i128 s = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (x[i] == 0) continue;
      for (std::size_t j = 0; j < n; ++j) s += static_cast<i128>(x[i]) * g1[i * n + j] * y[j];
    }
    return s;
  }

  bool tick() {
    if (++nodes > limit) {
      limit_hit = true;
      return false;
    }
    return true;
  }
};

std::vector<i64> to_words(const IntMatrix& m) {
  std::vector<i64> out;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (!m(i, j).fits_slong_p() || abs(m(i, j)) > Integer("1000000000000"))
        throw Error(ErrorCode::SearchSpaceTooLarge, "Gram entries too large for bounded search");
      out.push_back(m(i, j).get_si());
    }
  return out;
}

void validate(const SearchBudget& budget) {
  if (budget.entry_bound <= 0 || budget.node_limit == 0)
    throw Error(ErrorCode::InvalidArgument, "search budget must be positive");
  if (budget.entry_bound > 1'000'000) throw Error(ErrorCode::InvalidArgument, "entry bound too large");
}

// Candidate vectors by increasing max-entry, then lexicographic.
bool build_box(BoxSearch& s, long bound) {
  const std::size_t n = s.n;
  std::vector<i64> v(n, -bound);
  for (;;) {
    if (!s.tick()) return false;
    s.box.push_back(v);
    std::size_t i = n;
    while (i-- > 0) {
      if (v[i] < bound) {
        ++v[i];
        break;
      }
      v[i] = -bound;
    }
    if (i == static_cast<std::size_t>(-1)) break;
  }
  std::stable_sort(s.box.begin(), s.box.end(), [](const auto& a, const auto& b) {
    i64 ma = 0, mb = 0;
    for (i64 x : a) ma = std::max(ma, std::abs(x));
    for (i64 x : b) mb = std::max(mb, std::abs(x));
    return ma < mb;
  });
  return true;
}

struct Screen {
  bool differs = false;
  std::string detail;
};

Screen invariant_screen(const Lattice& a, const Lattice& b) {
  if (a.rank() != b.rank()) return {true, "ranks differ"};
  if (a.determinant() != b.determinant()) return {true, "determinants differ"};
  if (a.is_even() != b.is_even()) return {true, "parities differ"};
  if (!(a.signature() == b.signature())) return {true, "signatures differ"};
  return {};
}

// Column-by-column backtracking; calls `emit` for each completed witness
// and stops when it returns false.
template <typename Emit>
void backtrack(BoxSearch& s, const IntMatrix& g2, Emit&& emit) {
  const std::size_t n = s.n;
  std::vector<std::vector<std::size_t>> candidates(n);
  for (std::size_t j = 0; j < n; ++j) {
    const i128 target = g2(j, j).get_si();
    for (std::size_t e = 0; e < s.box.size(); ++e)
      if (s.pair(s.box[e], s.box[e]) == target) candidates[j].push_back(e);
  }
  std::vector<std::size_t> chosen(n);
  bool stop = false;
  auto rec = [&](auto&& self, std::size_t j) -> void {
    if (stop) return;
    if (j == n) {
      IntMatrix b(n, n);
      for (std::size_t c = 0; c < n; ++c)
        for (std::size_t r = 0; r < n; ++r) b(r, c) = static_cast<long>(s.box[chosen[c]][r]);
      if (abs(determinant(b)) != 1) return;
      if (!emit(std::move(b))) stop = true;
      return;
    }
    for (std::size_t e : candidates[j]) {
      if (!s.tick()) {
        stop = true;
        return;
      }
      bool ok = true;
      for (std::size_t i = 0; i < j && ok; ++i) ok = s.pair(s.box[chosen[i]], s.box[e]) == g2(i, j).get_si();
      if (!ok) continue;
      chosen[j] = e;
      self(self, j + 1);
      if (stop) return;
    }
  };
  rec(rec, 0);
}

}  // namespace

IsometrySearchResult find_isometry_bounded(const Lattice& l1, const Lattice& l2, const SearchBudget& budget) {
  validate(budget);
  IsometrySearchResult result;
  if (const Screen sc = invariant_screen(l1, l2); sc.differs) {
    result.outcome = SearchOutcome::NotIsometric;
    result.detail = sc.detail;
    return result;
  }
  if (l1.gram() == l2.gram()) {
    result.outcome = SearchOutcome::Found;
    result.witness = IsometryWitness{IntMatrix::identity(l1.rank())};
    return result;
  }
  BoxSearch s;
  s.n = l1.rank();
  s.g1 = to_words(l1.gram());
  to_words(l2.gram());
  s.limit = budget.node_limit;
  if (build_box(s, budget.entry_bound)) {
    backtrack(s, l2.gram(), [&](IntMatrix b) {
      result.witness = IsometryWitness{std::move(b)};
      return false;
    });
  }
  result.nodes = s.nodes;
  if (result.witness) {
    if (congruence(l1.gram(), result.witness->matrix) != l2.gram())
      throw Error(ErrorCode::InvalidIsometry, "search produced a non-witness");
    result.outcome = SearchOutcome::Found;
    return result;
  }
  result.outcome = SearchOutcome::BudgetExhausted;
  result.node_limit_hit = s.limit_hit;
  result.detail = s.limit_hit ? "node limit reached" : "no witness with entries within the bound";
  return result;
}

IsometryEnumeration enumerate_isometries_bounded(const Lattice& l1, const Lattice& l2, const SearchBudget& budget) {
  validate(budget);
  IsometryEnumeration out;
  if (invariant_screen(l1, l2).differs) return out;
  BoxSearch s;
  s.n = l1.rank();
  s.g1 = to_words(l1.gram());
  to_words(l2.gram());
  s.limit = budget.node_limit;
  if (build_box(s, budget.entry_bound)) {
    backtrack(s, l2.gram(), [&](IntMatrix b) {
      out.witnesses.push_back(IsometryWitness{std::move(b)});
      return true;
    });
  }
  out.complete = !s.limit_hit;
  out.nodes = s.nodes;
  return out;
}

std::vector<Integer> units_with_square_one(const Integer& modulus) {
  if (modulus < 2) throw Error(ErrorCode::InvalidArgument, "modulus must be at least 2");
  const Integer twice = 2 * modulus;
  std::vector<Integer> out;
  for (Integer a = 1; a < modulus; ++a) {
    if (gcd(a, modulus) != 1) continue;
    if (mod_floor(Integer(a * a - 1), twice) == 0) out.push_back(a);
  }
  return out;
}

std::size_t double_coset_count(const std::vector<ModuleIsometry>& left, const std::vector<ModuleIsometry>& full,
                               const std::vector<ModuleIsometry>& right) {
  if (full.empty() || left.empty() || right.empty())
    throw Error(ErrorCode::NotSubgroup, "groups must be non-empty");
  std::map<std::vector<Integer>, std::size_t> index;
  for (std::size_t i = 0; i < full.size(); ++i) index.emplace(full[i].matrix_key(), i);
  auto lookup = [&](const ModuleIsometry& f) -> std::size_t {
    auto it = index.find(f.matrix_key());
    if (it == index.end()) throw Error(ErrorCode::NotSubgroup, "element outside the full group");
    return it->second;
  };
  auto check_closed = [&](const std::vector<ModuleIsometry>& sub) {
    std::map<std::vector<Integer>, bool> members;
    for (const auto& f : sub) {
      lookup(f);
      members[f.matrix_key()] = true;
    }
    for (const auto& a : sub)
      for (const auto& b : sub)
        if (!members.count(a.compose(b).matrix_key()))
          throw Error(ErrorCode::NotSubgroup, "subset is not closed under composition");
  };
  check_closed(left);
  check_closed(right);

  std::vector<std::size_t> parent(full.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto unite = [&](std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  };
  for (std::size_t i = 0; i < full.size(); ++i) {
    for (const auto& l : left) unite(i, lookup(l.compose(full[i])));
    for (const auto& r : right) unite(i, lookup(full[i].compose(r)));
  }
  std::size_t count = 0;
  for (std::size_t i = 0; i < full.size(); ++i)
    if (find(i) == i) ++count;
  return count;
}

}  // namespace latfm
