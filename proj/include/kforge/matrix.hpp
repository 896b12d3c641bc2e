#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace kforge {

using Integer = mpz_class;
using IntVector = std::vector<Integer>;

// Dense row-major integer matrix. Zero-row and zero-column shapes are
// legitimate values (maps from or to the zero group).
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_columns(std::size_t rows, const std::vector<IntVector>& columns);
  static IntMatrix from_rows(std::size_t cols, const std::vector<IntVector>& rows);
  static IntMatrix column_vector(const IntVector& v);
  static IntMatrix row_vector(const IntVector& v);
  static IntMatrix hcat(const IntMatrix& left, const IntMatrix& right);
  static IntMatrix vcat(const IntMatrix& top, const IntMatrix& bottom);
  // [[a, y], [0, b]]
  static IntMatrix block_upper(const IntMatrix& a, const IntMatrix& y, const IntMatrix& b);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  IntVector column(std::size_t c) const;
  IntVector row(std::size_t r) const;
  void set_column(std::size_t c, const IntVector& v);
  IntMatrix transpose() const;
  IntMatrix block(std::size_t r0, std::size_t nr, std::size_t c0, std::size_t nc) const;
  IntMatrix select_columns(std::span<const std::size_t> index) const;
  IntMatrix select_rows(std::span<const std::size_t> index) const;
  IntMatrix abs() const;

  bool is_zero() const;
  bool is_nonnegative() const;
  bool is_square() const { return rows_ == cols_; }
  // entrywise >= other
  bool dominates(const IntMatrix& other) const;

  IntVector apply(const IntVector& x) const;

  void swap_rows(std::size_t i, std::size_t j);
  void swap_cols(std::size_t i, std::size_t j);
  // row dst += k * row src
  void add_row_multiple(std::size_t dst, std::size_t src, const Integer& k);
  // col dst += k * col src
  void add_col_multiple(std::size_t dst, std::size_t src, const Integer& k);
  void negate_row(std::size_t r);
  void negate_col(std::size_t c);

  std::string to_string() const;

  bool operator==(const IntMatrix& other) const = default;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator-(const IntMatrix& a);
  friend IntMatrix operator*(const Integer& k, const IntMatrix& a);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

std::ostream& operator<<(std::ostream& os, const IntMatrix& m);

IntVector zero_vector(std::size_t n);
IntVector unit_vector(std::size_t n, std::size_t i);
IntVector ones_vector(std::size_t n);
bool is_zero(const IntVector& v);
IntVector add(const IntVector& a, const IntVector& b);
IntVector subtract(const IntVector& a, const IntVector& b);
IntVector scale(const Integer& k, const IntVector& v);
IntVector concat(const IntVector& a, const IntVector& b);
IntVector slice(const IntVector& v, std::size_t begin, std::size_t count);

Integer floor_div(const Integer& a, const Integer& b);
Integer ceil_div(const Integer& a, const Integer& b);
// least non-negative residue; m == 0 leaves a unchanged
Integer mod_floor(const Integer& a, const Integer& m);

}  // namespace kforge
