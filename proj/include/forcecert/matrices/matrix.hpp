#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "forcecert/errors.hpp"
#include "forcecert/fields/field.hpp"

namespace forcecert {

/// Dense row-major matrix over one field instance. Every entry belongs to
/// `field()`; entries from another instance are rejected on construction and
/// on assignment through `set`.
template <Field F>
class Matrix {
 public:
  using field_type = typename F::field_type;

  Matrix(std::size_t rows, std::size_t cols, const field_type& field)
      : rows_(rows), cols_(cols), field_(field), data_(rows * cols, F::zero(field)) {}

  static Matrix identity(std::size_t n, const field_type& field) {
    Matrix m(n, n, field);
    for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = F::one(field);
    return m;
  }

  static Matrix from_rows(const field_type& field, const std::vector<std::vector<F>>& rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r == 0 ? 0 : rows.front().size();
    Matrix m(r, c, field);
    for (std::size_t i = 0; i < r; ++i) {
      if (rows[i].size() != c) throw PreconditionError("ragged matrix rows");
      for (std::size_t j = 0; j < c; ++j) m.set(i, j, rows[i][j]);
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const field_type& field() const { return field_; }

  const F& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  void set(std::size_t i, std::size_t j, F value) {
    if (!(value.field() == field_)) throw FieldMismatch("matrix over " + describe(field_) + " got an entry from another field");
    data_.at(i * cols_ + j) = std::move(value);
  }

  bool is_nonzero(std::size_t i, std::size_t j) const { return !data_[i * cols_ + j].is_zero(); }

  bool is_zero() const {
    for (const F& x : data_) {
      if (!x.is_zero()) return false;
    }
    return true;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_, field_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t.data_[j * rows_ + i] = data_[i * cols_ + j];
    return t;
  }

  Matrix scaled(const F& s) const {
    Matrix m = *this;
    for (F& x : m.data_) x = x * s;
    return m;
  }

  Matrix block(std::size_t r0, std::size_t c0, std::size_t h, std::size_t w) const {
    if (r0 + h > rows_ || c0 + w > cols_) throw PreconditionError("block out of range");
    Matrix b(h, w, field_);
    for (std::size_t i = 0; i < h; ++i)
      for (std::size_t j = 0; j < w; ++j) b.data_[i * w + j] = data_[(r0 + i) * cols_ + c0 + j];
    return b;
  }

  void set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
    check_same_field(b);
    if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_) throw PreconditionError("block out of range");
    for (std::size_t i = 0; i < b.rows_; ++i)
      for (std::size_t j = 0; j < b.cols_; ++j) data_[(r0 + i) * cols_ + c0 + j] = b.data_[i * b.cols_ + j];
  }

  /// Rows listed in `keep`, in that order.
  Matrix select_rows(const std::vector<std::size_t>& keep) const {
    Matrix m(keep.size(), cols_, field_);
    for (std::size_t i = 0; i < keep.size(); ++i)
      for (std::size_t j = 0; j < cols_; ++j) m.data_[i * cols_ + j] = data_.at(keep[i] * cols_ + j);
    return m;
  }

  Matrix select_cols(const std::vector<std::size_t>& keep) const { return transpose().select_rows(keep).transpose(); }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    a.check_same_field(b);
    if (a.cols_ != b.rows_) throw PreconditionError("matrix product dimension mismatch");
    Matrix c(a.rows_, b.cols_, a.field_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const F& aik = a.data_[i * a.cols_ + k];
        if (aik.is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          const F& bkj = b.data_[k * b.cols_ + j];
          if (!bkj.is_zero()) c.data_[i * c.cols_ + j] = c.data_[i * c.cols_ + j] + aik * bkj;
        }
      }
    }
    return c;
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) { return combine(a, b, 1); }
  friend Matrix operator-(const Matrix& a, const Matrix& b) { return combine(a, b, -1); }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.field_ == b.field_ && a.data_ == b.data_;
  }

  bool is_identity() const { return rows_ == cols_ && *this == identity(rows_, field_); }

  /// First (row, col) where the entries differ, scanning row-major.
  std::optional<std::pair<std::size_t, std::size_t>> first_difference(const Matrix& o) const {
    check_same_field(o);
    if (rows_ != o.rows_ || cols_ != o.cols_) throw PreconditionError("shape mismatch");
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if (!(data_[i * cols_ + j] == o.data_[i * cols_ + j])) return std::make_pair(i, j);
    return std::nullopt;
  }

  /// Same zero/nonzero pattern.
  bool same_support(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) return false;
    for (std::size_t k = 0; k < data_.size(); ++k) {
      if (data_[k].is_zero() != o.data_[k].is_zero()) return false;
    }
    return true;
  }

 private:
  void check_same_field(const Matrix& o) const {
    if (!(field_ == o.field_)) throw FieldMismatch("matrices over " + describe(field_) + " and " + describe(o.field_));
  }

  static Matrix combine(const Matrix& a, const Matrix& b, int sign) {
    a.check_same_field(b);
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw PreconditionError("matrix sum shape mismatch");
    Matrix c = a;
    for (std::size_t k = 0; k < c.data_.size(); ++k) c.data_[k] = sign > 0 ? c.data_[k] + b.data_[k] : c.data_[k] - b.data_[k];
    return c;
  }

  std::size_t rows_;
  std::size_t cols_;
  field_type field_;
  std::vector<F> data_;
};

/// Gauss-Jordan inverse; nullopt when singular.
template <Field F>
std::optional<Matrix<F>> inverse(const Matrix<F>& m) {
  if (m.rows() != m.cols()) throw PreconditionError("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  Matrix<F> a = m;
  Matrix<F> inv = Matrix<F>::identity(n, m.field());
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a(pivot, col).is_zero()) ++pivot;
    if (pivot == n) return std::nullopt;
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) {
        F t = a(col, j);
        a.set(col, j, a(pivot, j));
        a.set(pivot, j, t);
        F u = inv(col, j);
        inv.set(col, j, inv(pivot, j));
        inv.set(pivot, j, u);
      }
    }
    const F scale = a(col, col).inverse();
    for (std::size_t j = 0; j < n; ++j) {
      a.set(col, j, a(col, j) * scale);
      inv.set(col, j, inv(col, j) * scale);
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || a(i, col).is_zero()) continue;
      const F factor = a(i, col);
      for (std::size_t j = 0; j < n; ++j) {
        a.set(i, j, a(i, j) - factor * a(col, j));
        inv.set(i, j, inv(i, j) - factor * inv(col, j));
      }
    }
  }
  return inv;
}

/// Entrywise image of a rational matrix in another field.
template <Field F>
Matrix<F> convert(const Matrix<Rational>& m, const typename F::field_type& field) {
  Matrix<F> out(m.rows(), m.cols(), field);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out.set(i, j, F::from_rational(field, m(i, j)));
  return out;
}

}  // namespace forcecert
