#include "latfm/normal_form.hpp"

#include <algorithm>
#include <utility>

#include "latfm/error.hpp"

namespace latfm {

namespace {

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

// Locates the nonzero entry of least absolute value in d[t.., t..].
bool find_pivot(const IntMatrix& d, std::size_t t, std::size_t& pi, std::size_t& pj) {
  bool found = false;
  Integer best;
  for (std::size_t i = t; i < d.rows(); ++i)
    for (std::size_t j = t; j < d.cols(); ++j) {
      if (d(i, j) == 0) continue;
      Integer a = abs(d(i, j));
      if (!found || a < best) {
        best = a;
        pi = i;
        pj = j;
        found = true;
        if (best == 1) return true;
      }
    }
  return found;
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& m) {
  SmithForm out;
  IntMatrix d = m;
  IntMatrix u = IntMatrix::identity(m.rows());
  IntMatrix v = IntMatrix::identity(m.cols());
  const std::size_t limit = std::min(m.rows(), m.cols());

  std::size_t t = 0;
  for (; t < limit; ++t) {
    std::size_t pi = 0, pj = 0;
    if (!find_pivot(d, t, pi, pj)) break;
    d.swap_rows(t, pi);
    u.swap_rows(t, pi);
    d.swap_cols(t, pj);
    v.swap_cols(t, pj);

    for (;;) {
      bool dirty = false;
      // Clear column t below the pivot.
      for (std::size_t i = t + 1; i < d.rows(); ++i) {
        if (d(i, t) == 0) continue;
        Integer q = floor_div(d(i, t), d(t, t));
        d.add_row_multiple(i, t, -q);
        u.add_row_multiple(i, t, -q);
        if (d(i, t) != 0) {
          d.swap_rows(t, i);
          u.swap_rows(t, i);
          dirty = true;
        }
      }
      // Clear row t right of the pivot.
      for (std::size_t j = t + 1; j < d.cols(); ++j) {
        if (d(t, j) == 0) continue;
        Integer q = floor_div(d(t, j), d(t, t));
        d.add_col_multiple(j, t, -q);
        v.add_col_multiple(j, t, -q);
        if (d(t, j) != 0) {
          d.swap_cols(t, j);
          v.swap_cols(t, j);
          dirty = true;
        }
      }
      if (dirty) continue;
      // Enforce divisibility of the remaining block by the pivot.
      bool divides = true;
      for (std::size_t i = t + 1; i < d.rows() && divides; ++i)
        for (std::size_t j = t + 1; j < d.cols(); ++j)
          if (!mpz_divisible_p(d(i, j).get_mpz_t(), d(t, t).get_mpz_t())) {
            d.add_row_multiple(t, i, 1);
            u.add_row_multiple(t, i, 1);
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (d(t, t) < 0) {
      d.negate_row(t);
      u.negate_row(t);
    }
  }

  out.rank = t;
  out.invariants.reserve(t);
  for (std::size_t i = 0; i < t; ++i) out.invariants.push_back(d(i, i));
  out.left = std::move(u);
  out.diag = std::move(d);
  out.right = std::move(v);
  return out;
}

IntMatrix hermite_normal_form(const IntMatrix& m) {
  IntMatrix h = m;
  std::size_t row = 0;
  for (std::size_t col = 0; col < h.cols() && row < h.rows(); ++col) {
    // Euclid on column `col` among rows row.. until a single nonzero remains.
    for (;;) {
      std::size_t best = h.rows();
      for (std::size_t i = row; i < h.rows(); ++i)
        if (h(i, col) != 0 && (best == h.rows() || abs(h(i, col)) < abs(h(best, col)))) best = i;
      if (best == h.rows()) break;
      h.swap_rows(row, best);
      bool done = true;
      for (std::size_t i = row + 1; i < h.rows(); ++i) {
        if (h(i, col) == 0) continue;
        h.add_row_multiple(i, row, -floor_div(h(i, col), h(row, col)));
        if (h(i, col) != 0) done = false;
      }
      if (done) break;
    }
    if (row >= h.rows() || h(row, col) == 0) continue;
    if (h(row, col) < 0) h.negate_row(row);
    for (std::size_t i = 0; i < row; ++i) h.add_row_multiple(i, row, -floor_div(h(i, col), h(row, col)));
    ++row;
  }
  IntMatrix out(row, h.cols());
  for (std::size_t i = 0; i < row; ++i)
    for (std::size_t j = 0; j < h.cols(); ++j) out(i, j) = h(i, j);
  return out;
}

IntMatrix canonical_basis(const IntMatrix& basis) {
  return hermite_normal_form(basis.transpose()).transpose();
}

IntMatrix integer_kernel(const IntMatrix& m) {
  const SmithForm s = smith_normal_form(m);
  const std::size_t n = m.cols();
  IntMatrix k = s.right.columns(s.rank, n - s.rank);
  if (k.cols() == 0) return k;
  return canonical_basis(k);
}

std::optional<IntVector> solve_integer(const IntMatrix& m, const IntVector& b) {
  if (b.size() != m.rows()) throw Error(ErrorCode::DimensionMismatch, "solve_integer rhs");
  const SmithForm s = smith_normal_form(m);
  const IntVector ub = s.left * std::span<const Integer>(b);
  IntVector y(m.cols());
  for (std::size_t i = 0; i < ub.size(); ++i) {
    if (i < s.rank) {
      if (!mpz_divisible_p(ub[i].get_mpz_t(), s.invariants[i].get_mpz_t())) return std::nullopt;
      y[i] = ub[i] / s.invariants[i];
    } else if (ub[i] != 0) {
      return std::nullopt;
    }
  }
  return s.right * std::span<const Integer>(y);
}

std::optional<IntMatrix> solve_integer_columns(const IntMatrix& m, const IntMatrix& rhs) {
  if (rhs.rows() != m.rows()) throw Error(ErrorCode::DimensionMismatch, "solve_integer_columns rhs");
  const SmithForm s = smith_normal_form(m);
  const IntMatrix ub = s.left * rhs;
  IntMatrix y(m.cols(), rhs.cols());
  for (std::size_t c = 0; c < rhs.cols(); ++c)
    for (std::size_t i = 0; i < ub.rows(); ++i) {
      if (i < s.rank) {
        if (!mpz_divisible_p(ub(i, c).get_mpz_t(), s.invariants[i].get_mpz_t())) return std::nullopt;
        y(i, c) = ub(i, c) / s.invariants[i];
      } else if (ub(i, c) != 0) {
        return std::nullopt;
      }
    }
  return s.right * y;
}

std::optional<RatVector> solve_rational(const IntMatrix& m, const RatVector& b) {
  if (b.size() != m.rows()) throw Error(ErrorCode::DimensionMismatch, "solve_rational rhs");
  const SmithForm s = smith_normal_form(m);
  if (s.rank != m.cols()) throw Error(ErrorCode::Degenerate, "solve_rational needs full column rank");
  RatVector ub(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.rows(); ++j) ub[i] += Rational(s.left(i, j)) * b[j];
  for (std::size_t i = s.rank; i < ub.size(); ++i)
    if (ub[i] != 0) return std::nullopt;
  RatVector y(m.cols());
  for (std::size_t i = 0; i < s.rank; ++i) y[i] = ub[i] / Rational(s.invariants[i]);
  RatVector x(m.cols());
  for (std::size_t i = 0; i < m.cols(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) x[i] += Rational(s.right(i, j)) * y[j];
  return x;
}

IntMatrix inverse_unimodular(const IntMatrix& m) {
  if (!m.is_square()) throw Error(ErrorCode::NotSquare, "inverse of non-square matrix");
  const SmithForm s = smith_normal_form(m);
  if (s.rank != m.rows() || (s.rank > 0 && s.invariants.back() != 1))
    throw Error(ErrorCode::NotUnimodular, "matrix is not invertible over Z");
  // left·m·right = I  =>  m⁻¹ = right·left
  return s.right * s.left;
}

IntMatrix complete_to_unimodular(const IntVector& c, CompletionStrategy strategy) {
  const std::size_t k = c.size();
  if (k == 0 || gcd_of(c) != 1) throw Error(ErrorCode::NotPrimitive, "vector is not primitive");

  if (strategy == CompletionStrategy::Smith) {
    IntMatrix col(k, 1);
    col.set_column(0, c);
    const SmithForm s = smith_normal_form(col);
    // left·c·right(0,0) = e1, so c = right(0,0)·left⁻¹·e1.
    IntMatrix p = inverse_unimodular(s.left);
    if (s.right(0, 0) < 0) p.negate_col(0);
    return p;
  }

  // Pairwise extended-gcd sweep from the bottom entry upwards: W·c = ±e1, and
  // the inverse W⁻¹ is accumulated directly by column operations.
  IntVector w = c;
  IntMatrix p = IntMatrix::identity(k);
  for (std::size_t i = k - 1; i >= 1; --i) {
    const Integer a = w[i - 1];
    const Integer b = w[i];
    if (b == 0) continue;
    Integer g, x, y;
    mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    const Integer ag = a / g;
    const Integer bg = b / g;
    // E = [[x, y], [-b/g, a/g]] on rows (i-1, i); E⁻¹ = [[a/g, -y], [b/g, x]].
    for (std::size_t r = 0; r < k; ++r) {
      const Integer p0 = p(r, i - 1);
      const Integer p1 = p(r, i);
      p(r, i - 1) = p0 * ag + p1 * bg;
      p(r, i) = -p0 * y + p1 * x;
    }
    w[i - 1] = g;
    w[i] = 0;
  }
  if (w[0] < 0) p.negate_col(0);
  return p;
}

}  // namespace latfm
