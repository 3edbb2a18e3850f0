#pragma once
// Independent reference computations used to check the library. None of
// these call into the code under test.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

namespace oracle {

using Z = mpz_class;
using Q = mpq_class;
using Mat = std::vector<std::vector<Z>>;

inline Z leibniz_det(const Mat& m) {
  const std::size_t n = m.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Z total = 0;
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    Z term = inversions % 2 ? -1 : 1;
    for (std::size_t i = 0; i < n; ++i) term *= m[i][perm[i]];
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

// Coefficients c[0..n] of det(xI - A) = sum c[k] x^k, by Faddeev-LeVerrier.
inline std::vector<Q> charpoly(const Mat& a) {
  const std::size_t n = a.size();
  std::vector<std::vector<Q>> A(n, std::vector<Q>(n)), M(n, std::vector<Q>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) A[i][j] = a[i][j];
  std::vector<Q> c(n + 1);
  c[n] = 1;
  for (std::size_t k = 1; k <= n; ++k) {
    // M_k = A*M_{k-1} + c_{n-k+1} I, with M_0 = 0
    std::vector<std::vector<Q>> next(n, std::vector<Q>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        Q s = 0;
        for (std::size_t t = 0; t < n; ++t) s += A[i][t] * M[t][j];
        next[i][j] = s;
      }
    for (std::size_t i = 0; i < n; ++i) next[i][i] += c[n - k + 1];
    M = next;
    Q tr = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t t = 0; t < n; ++t) tr += A[i][t] * M[t][i];
    c[n - k] = -tr / Q(static_cast<long>(k));
  }
  return c;
}

inline int sign_changes(const std::vector<Q>& coeffs) {
  int changes = 0, last = 0;
  for (const auto& c : coeffs) {
    const int s = sgn(c);
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

// For a real symmetric matrix all roots are real, so Descartes' rule is exact.
inline std::pair<int, int> descartes_signature(const Mat& a) {
  std::vector<Q> c = charpoly(a);
  const int plus = sign_changes(c);
  for (std::size_t k = 1; k < c.size(); k += 2) c[k] = -c[k];
  return {plus, sign_changes(c)};
}

inline Z minor(const Mat& m, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) {
  Mat sub(rows.size(), std::vector<Z>(cols.size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) sub[i][j] = m[rows[i]][cols[j]];
  return leibniz_det(sub);
}

inline void subsets(std::size_t n, std::size_t k, std::vector<std::vector<std::size_t>>& out) {
  std::vector<bool> pick(n, false);
  std::fill(pick.begin(), pick.begin() + k, true);
  do {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < n; ++i)
      if (pick[i]) s.push_back(i);
    out.push_back(s);
  } while (std::prev_permutation(pick.begin(), pick.end()));
}

// Invariant factors d_k / d_{k-1} where d_k is the gcd of all k-minors.
inline std::vector<Z> determinantal_invariants(const Mat& m) {
  const std::size_t r = m.size(), c = m.empty() ? 0 : m[0].size();
  std::vector<Z> out;
  Z prev = 1;
  for (std::size_t k = 1; k <= std::min(r, c); ++k) {
    std::vector<std::vector<std::size_t>> rs, cs;
    subsets(r, k, rs);
    subsets(c, k, cs);
    Z g = 0;
    for (const auto& a : rs)
      for (const auto& b : cs) g = gcd(g, minor(m, a, b));
    if (g == 0) break;
    out.push_back(g / prev);
    prev = g;
  }
  return out;
}

inline unsigned prime_count_trial(std::uint64_t d) {
  if (d == 1) return 1;
  unsigned p = 0;
  for (std::uint64_t q = 2; q <= d; ++q) {
    if (d % q != 0) continue;
    bool prime = true;
    for (std::uint64_t f = 2; f * f <= q; ++f)
      if (q % f == 0) prime = false;
    if (prime) ++p;
  }
  return p;
}

inline std::uint64_t units_square_one_count(std::uint64_t d) {
  std::uint64_t count = 0;
  for (std::uint64_t a = 0; a < 2 * d; ++a)
    if (std::gcd(a, 2 * d) == 1 && (a * a) % (4 * d) == 1 % (4 * d)) ++count;
  return count;
}

inline Mat random_matrix(std::mt19937& rng, std::size_t r, std::size_t c, int lo, int hi) {
  std::uniform_int_distribution<int> dist(lo, hi);
  Mat m(r, std::vector<Z>(c));
  for (auto& row : m)
    for (auto& x : row) x = dist(rng);
  return m;
}

inline Mat random_symmetric(std::mt19937& rng, std::size_t n, int lo, int hi) {
  Mat m = random_matrix(rng, n, n, lo, hi);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) m[i][j] = m[j][i];
  return m;
}

}  // namespace oracle
