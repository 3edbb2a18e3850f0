#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace latfm {

using Integer = mpz_class;
using Rational = mpq_class;

using IntVector = std::vector<Integer>;
using RatVector = std::vector<Rational>;

/// Dense row-major integer matrix with arbitrary-precision entries.
/// Vectors are columns throughout; a basis is stored one vector per column.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<IntVector>& rows);
  static IntMatrix from_columns(const std::vector<IntVector>& cols);

  [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
  [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
  [[nodiscard]] bool is_square() const noexcept { return rows_ == cols_; }
  [[nodiscard]] bool empty() const noexcept { return data_.empty(); }

  Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  [[nodiscard]] IntVector row(std::size_t i) const;
  [[nodiscard]] IntVector column(std::size_t j) const;
  void set_column(std::size_t j, std::span<const Integer> v);

  [[nodiscard]] IntMatrix transpose() const;
  [[nodiscard]] IntMatrix columns(std::size_t first, std::size_t count) const;
  [[nodiscard]] bool is_symmetric() const;

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  /// row[dst] += k * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, const Integer& k);
  /// col[dst] += k * col[src]
  void add_col_multiple(std::size_t dst, std::size_t src, const Integer& k);
  void negate_row(std::size_t i);
  void negate_col(std::size_t j);

  friend bool operator==(const IntMatrix& a, const IntMatrix& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
IntVector operator*(const IntMatrix& a, std::span<const Integer> v);
IntMatrix operator*(const Integer& k, const IntMatrix& a);

/// Block-diagonal matrix diag(a, b).
IntMatrix block_diagonal(const IntMatrix& a, const IntMatrix& b);

/// Bᵀ·G·B, the Gram matrix of the columns of B under G.
IntMatrix congruence(const IntMatrix& gram, const IntMatrix& basis);

/// xᵀ·G·y.
Integer bilinear(const IntMatrix& gram, std::span<const Integer> x, std::span<const Integer> y);
Rational bilinear(const IntMatrix& gram, std::span<const Rational> x, std::span<const Rational> y);

/// Exact determinant (fraction-free Bareiss elimination).
Integer determinant(const IntMatrix& m);

Integer gcd_of(std::span<const Integer> v);

/// Canonical residue of x in [0, m).
Integer mod_floor(const Integer& x, const Integer& m);
/// Canonical representative of x in [0, m) for rational x and positive integer m.
Rational mod_floor(const Rational& x, const Integer& m);

std::string to_string(const IntMatrix& m);
std::string to_string(const Rational& q);
std::ostream& operator<<(std::ostream& os, const IntMatrix& m);

}  // namespace latfm
