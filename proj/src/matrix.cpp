#include "kforge/matrix.hpp"

#include <ostream>
#include <sstream>

#include "kforge/error.hpp"

namespace kforge {

namespace {

void require_same_shape(const IntMatrix& a, const IntMatrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::ShapeMismatch, std::string(what) + ": " + std::to_string(a.rows()) + "x" +
                                              std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) +
                                              "x" + std::to_string(b.cols()));
  }
}

}  // namespace

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw Error(ErrorCode::ShapeMismatch, "ragged matrix literal");
    for (long x : r) data_.emplace_back(x);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_columns(std::size_t rows, const std::vector<IntVector>& columns) {
  IntMatrix m(rows, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) m.set_column(c, columns[c]);
  return m;
}

IntMatrix IntMatrix::from_rows(std::size_t cols, const std::vector<IntVector>& rows) {
  IntMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw Error(ErrorCode::ShapeMismatch, "row length");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

IntMatrix IntMatrix::column_vector(const IntVector& v) { return from_columns(v.size(), {v}); }

IntMatrix IntMatrix::row_vector(const IntVector& v) { return from_rows(v.size(), {v}); }

IntMatrix IntMatrix::hcat(const IntMatrix& left, const IntMatrix& right) {
  if (left.rows_ != right.rows_) throw Error(ErrorCode::ShapeMismatch, "hcat row counts differ");
  IntMatrix m(left.rows_, left.cols_ + right.cols_);
  for (std::size_t r = 0; r < m.rows_; ++r) {
    for (std::size_t c = 0; c < left.cols_; ++c) m(r, c) = left(r, c);
    for (std::size_t c = 0; c < right.cols_; ++c) m(r, left.cols_ + c) = right(r, c);
  }
  return m;
}

IntMatrix IntMatrix::vcat(const IntMatrix& top, const IntMatrix& bottom) {
  if (top.cols_ != bottom.cols_) throw Error(ErrorCode::ShapeMismatch, "vcat column counts differ");
  IntMatrix m(top.rows_ + bottom.rows_, top.cols_);
  for (std::size_t r = 0; r < top.rows_; ++r)
    for (std::size_t c = 0; c < top.cols_; ++c) m(r, c) = top(r, c);
  for (std::size_t r = 0; r < bottom.rows_; ++r)
    for (std::size_t c = 0; c < top.cols_; ++c) m(top.rows_ + r, c) = bottom(r, c);
  return m;
}

IntMatrix IntMatrix::block_upper(const IntMatrix& a, const IntMatrix& y, const IntMatrix& b) {
  if (y.rows_ != a.rows_ || y.cols_ != b.cols_)
    throw Error(ErrorCode::ShapeMismatch, "off-diagonal block has shape " + std::to_string(y.rows_) + "x" +
                                              std::to_string(y.cols_));
  return vcat(hcat(a, y), hcat(IntMatrix(b.rows_, a.cols_), b));
}

IntVector IntMatrix::column(std::size_t c) const {
  IntVector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

IntVector IntMatrix::row(std::size_t r) const {
  return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                   data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

void IntMatrix::set_column(std::size_t c, const IntVector& v) {
  if (v.size() != rows_) throw Error(ErrorCode::ShapeMismatch, "column length");
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = v[r];
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

IntMatrix IntMatrix::block(std::size_t r0, std::size_t nr, std::size_t c0, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw Error(ErrorCode::ShapeMismatch, "block out of range");
  IntMatrix m(nr, nc);
  for (std::size_t r = 0; r < nr; ++r)
    for (std::size_t c = 0; c < nc; ++c) m(r, c) = (*this)(r0 + r, c0 + c);
  return m;
}

IntMatrix IntMatrix::select_columns(std::span<const std::size_t> index) const {
  IntMatrix m(rows_, index.size());
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < index.size(); ++c) m(r, c) = (*this)(r, index[c]);
  return m;
}

IntMatrix IntMatrix::select_rows(std::span<const std::size_t> index) const {
  IntMatrix m(index.size(), cols_);
  for (std::size_t r = 0; r < index.size(); ++r)
    for (std::size_t c = 0; c < cols_; ++c) m(r, c) = (*this)(index[r], c);
  return m;
}

IntMatrix IntMatrix::abs() const {
  IntMatrix m = *this;
  for (auto& x : m.data_) x = ::abs(x);
  return m;
}

bool IntMatrix::is_zero() const {
  for (const auto& x : data_)
    if (x != 0) return false;
  return true;
}

bool IntMatrix::is_nonnegative() const {
  for (const auto& x : data_)
    if (x < 0) return false;
  return true;
}

bool IntMatrix::dominates(const IntMatrix& other) const {
  require_same_shape(*this, other, "dominates");
  for (std::size_t i = 0; i < data_.size(); ++i)
    if (data_[i] < other.data_[i]) return false;
  return true;
}

IntVector IntMatrix::apply(const IntVector& x) const {
  if (x.size() != cols_) throw Error(ErrorCode::ShapeMismatch, "vector length " + std::to_string(x.size()) +
                                                                   " for matrix with " + std::to_string(cols_) +
                                                                   " columns");
  IntVector y(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    Integer s = 0;
    for (std::size_t c = 0; c < cols_; ++c)
      if (x[c] != 0) s += (*this)(r, c) * x[c];
    y[r] = s;
  }
  return y;
}

void IntMatrix::swap_rows(std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(i, c), (*this)(j, c));
}

void IntMatrix::swap_cols(std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, i), (*this)(r, j));
}

void IntMatrix::add_row_multiple(std::size_t dst, std::size_t src, const Integer& k) {
  if (k == 0) return;
  for (std::size_t c = 0; c < cols_; ++c)
    if ((*this)(src, c) != 0) (*this)(dst, c) += k * (*this)(src, c);
}

void IntMatrix::add_col_multiple(std::size_t dst, std::size_t src, const Integer& k) {
  if (k == 0) return;
  for (std::size_t r = 0; r < rows_; ++r)
    if ((*this)(r, src) != 0) (*this)(r, dst) += k * (*this)(r, src);
}

void IntMatrix::negate_row(std::size_t r) {
  for (std::size_t c = 0; c < cols_; ++c) (*this)(r, c) = -(*this)(r, c);
}

void IntMatrix::negate_col(std::size_t c) {
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = -(*this)(r, c);
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << *this;
  return os.str();
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_)
    throw Error(ErrorCode::ShapeMismatch, "product of " + std::to_string(a.rows_) + "x" + std::to_string(a.cols_) +
                                              " and " + std::to_string(b.rows_) + "x" + std::to_string(b.cols_));
  IntMatrix m(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Integer& x = a(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j)
        if (b(k, j) != 0) m(i, j) += x * b(k, j);
    }
  return m;
}

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
  require_same_shape(a, b, "sum");
  IntMatrix m = a;
  for (std::size_t i = 0; i < m.data_.size(); ++i) m.data_[i] += b.data_[i];
  return m;
}

IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
  require_same_shape(a, b, "difference");
  IntMatrix m = a;
  for (std::size_t i = 0; i < m.data_.size(); ++i) m.data_[i] -= b.data_[i];
  return m;
}

IntMatrix operator-(const IntMatrix& a) {
  IntMatrix m = a;
  for (auto& x : m.data_) x = -x;
  return m;
}

IntMatrix operator*(const Integer& k, const IntMatrix& a) {
  IntMatrix m = a;
  for (auto& x : m.data_) x *= k;
  return m;
}

std::ostream& operator<<(std::ostream& os, const IntMatrix& m) {
  os << '[';
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (r) os << ", ";
    os << '[';
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c) os << ", ";
      os << m(r, c);
    }
    os << ']';
  }
  if (m.rows() == 0 || m.cols() == 0) os << "(" << m.rows() << "x" << m.cols() << ")";
  return os << ']';
}

IntVector zero_vector(std::size_t n) { return IntVector(n); }

IntVector unit_vector(std::size_t n, std::size_t i) {
  IntVector v(n);
  v.at(i) = 1;
  return v;
}

IntVector ones_vector(std::size_t n) { return IntVector(n, Integer(1)); }

bool is_zero(const IntVector& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

IntVector add(const IntVector& a, const IntVector& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::ShapeMismatch, "vector sum");
  IntVector v(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) v[i] = a[i] + b[i];
  return v;
}

IntVector subtract(const IntVector& a, const IntVector& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::ShapeMismatch, "vector difference");
  IntVector v(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) v[i] = a[i] - b[i];
  return v;
}

IntVector scale(const Integer& k, const IntVector& v) {
  IntVector w(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) w[i] = k * v[i];
  return w;
}

IntVector concat(const IntVector& a, const IntVector& b) {
  IntVector v = a;
  v.insert(v.end(), b.begin(), b.end());
  return v;
}

IntVector slice(const IntVector& v, std::size_t begin, std::size_t count) {
  if (begin + count > v.size()) throw Error(ErrorCode::ShapeMismatch, "slice out of range");
  return IntVector(v.begin() + static_cast<std::ptrdiff_t>(begin),
                   v.begin() + static_cast<std::ptrdiff_t>(begin + count));
}

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Integer ceil_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Integer mod_floor(const Integer& a, const Integer& m) {
  if (m == 0) return a;
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  if (r < 0) r += ::abs(m);
  return r;
}

std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::IllDefined: return "IllDefined";
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::NotHereditary: return "NotHereditary";
    case ErrorCode::NotSaturated: return "NotSaturated";
    case ErrorCode::HasBreakingVertices: return "HasBreakingVertices";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::RankViolation: return "RankViolation";
    case ErrorCode::TargetNotExact: return "TargetNotExact";
    case ErrorCode::EndMapsNotIso: return "EndMapsNotIso";
    case ErrorCode::NoWitness: return "NoWitness";
    case ErrorCode::NotAdhesive: return "NotAdhesive";
    case ErrorCode::NoDominatedRow: return "NoDominatedRow";
    case ErrorCode::NeedsTwoQuotientVertices: return "NeedsTwoQuotientVertices";
    case ErrorCode::NoSplitting: return "NoSplitting";
    case ErrorCode::UnitMismatch: return "UnitMismatch";
    case ErrorCode::UnsupportedRieszInput: return "UnsupportedRieszInput";
    case ErrorCode::UnsupportedOrderTag: return "UnsupportedOrderTag";
    case ErrorCode::HypothesesNotEvidenced: return "HypothesesNotEvidenced";
    case ErrorCode::VerificationFailed: return "VerificationFailed";
  }
  return "Unknown";
}

}  // namespace kforge
