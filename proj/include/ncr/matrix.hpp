#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ncr/error.hpp"
#include "ncr/field.hpp"

namespace ncr {

// Dense row-major matrix over an exact field.
template <Field F>
class Matrix {
 public:
  using field_type = F;
  using value_type = typename F::value_type;

  Matrix(F field, std::size_t rows, std::size_t cols)
      : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, field_.zero()) {}

  Matrix(F field, std::size_t rows, std::size_t cols, std::vector<value_type> entries)
      : field_(std::move(field)), rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_) {
      throw DimensionError("matrix entry count " + std::to_string(data_.size()) + " != " +
                           std::to_string(rows_) + "x" + std::to_string(cols_));
    }
  }

  static Matrix identity(const F& field, std::size_t n) {
    Matrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = field.one();
    return m;
  }

  // Builds from small signed integers, reduced into the field.
  static Matrix from_ints(const F& field, std::size_t rows, std::size_t cols,
                          std::span<const std::int64_t> entries) {
    if (entries.size() != rows * cols) throw DimensionError("from_ints: entry count mismatch");
    std::vector<value_type> data;
    data.reserve(entries.size());
    for (auto e : entries) data.push_back(field.from_int(e));
    return Matrix(field, rows, cols, std::move(data));
  }
  static Matrix from_ints(const F& field, std::size_t rows, std::size_t cols,
                          std::initializer_list<std::int64_t> entries) {
    return from_ints(field, rows, cols, std::span<const std::int64_t>(entries.begin(), entries.size()));
  }

  // Single-entry matrix unit E_{ij}.
  static Matrix unit(const F& field, std::size_t rows, std::size_t cols, std::size_t i, std::size_t j) {
    Matrix m(field, rows, cols);
    m(i, j) = field.one();
    return m;
  }

  const F& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  value_type& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const value_type& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const value_type> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  std::span<value_type> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  const std::vector<value_type>& entries() const { return data_; }

  bool is_zero() const {
    for (const auto& e : data_) {
      if (!field_.is_zero(e)) return false;
    }
    return true;
  }

  Matrix transpose() const {
    Matrix t(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    }
    return t;
  }

  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) throw DimensionError("block out of range");
    Matrix b(field_, nr, nc);
    for (std::size_t i = 0; i < nr; ++i) {
      for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    }
    return b;
  }

  void set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
    if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_) throw DimensionError("set_block out of range");
    for (std::size_t i = 0; i < b.rows_; ++i) {
      for (std::size_t j = 0; j < b.cols_; ++j) (*this)(r0 + i, c0 + j) = b(i, j);
    }
  }

  Matrix select_rows(std::span<const std::size_t> idx) const {
    Matrix s(field_, idx.size(), cols_);
    for (std::size_t k = 0; k < idx.size(); ++k) {
      for (std::size_t j = 0; j < cols_; ++j) s(k, j) = (*this)(idx[k], j);
    }
    return s;
  }

  Matrix select_cols(std::span<const std::size_t> idx) const {
    Matrix s(field_, rows_, idx.size());
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t k = 0; k < idx.size(); ++k) s(i, k) = (*this)(i, idx[k]);
    }
    return s;
  }

  Matrix& operator+=(const Matrix& o) {
    check_same_shape(o, "+");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] = field_.add(data_[k], o.data_[k]);
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    check_same_shape(o, "-");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] = field_.sub(data_[k], o.data_[k]);
    return *this;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }

  Matrix scaled(const value_type& s) const {
    Matrix r = *this;
    for (auto& e : r.data_) e = field_.mul(e, s);
    return r;
  }

  // Adds s * o in place.
  void axpy(const value_type& s, const Matrix& o) {
    check_same_shape(o, "axpy");
    if (field_.is_zero(s)) return;
    for (std::size_t k = 0; k < data_.size(); ++k) {
      if (!field_.is_zero(o.data_[k])) data_[k] = field_.add(data_[k], field_.mul(s, o.data_[k]));
    }
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) {
      throw DimensionError("product of " + a.shape() + " and " + b.shape());
    }
    const F& f = a.field_;
    Matrix c(f, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const auto& aik = a(i, k);
        if (f.is_zero(aik)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          if (!f.is_zero(b(k, j))) c(i, j) = f.add(c(i, j), f.mul(aik, b(k, j)));
        }
      }
    }
    return c;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  std::string shape() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

 private:
  void check_same_shape(const Matrix& o, const char* op) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) {
      throw DimensionError(std::string("operator ") + op + " on " + shape() + " and " + o.shape());
    }
  }

  F field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<value_type> data_;
};

// Kronecker product; block (k, l) of the result is a(k, l) * b.
template <Field F>
Matrix<F> kronecker(const Matrix<F>& a, const Matrix<F>& b) {
  const F& f = a.field();
  Matrix<F> r(f, a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t k = 0; k < a.rows(); ++k) {
    for (std::size_t l = 0; l < a.cols(); ++l) {
      const auto& s = a(k, l);
      if (f.is_zero(s)) continue;
      for (std::size_t i = 0; i < b.rows(); ++i) {
        for (std::size_t j = 0; j < b.cols(); ++j) {
          r(k * b.rows() + i, l * b.cols() + j) = f.mul(s, b(i, j));
        }
      }
    }
  }
  return r;
}

template <Field F>
Matrix<F> vstack(const Matrix<F>& top, const Matrix<F>& bottom) {
  if (top.cols() != bottom.cols()) throw DimensionError("vstack: column mismatch");
  Matrix<F> r(top.field(), top.rows() + bottom.rows(), top.cols());
  r.set_block(0, 0, top);
  r.set_block(top.rows(), 0, bottom);
  return r;
}

template <Field F>
struct RrefResult {
  Matrix<F> reduced;
  std::size_t rank;
  std::vector<std::size_t> pivots;
};

// Reduced row echelon form by Gauss-Jordan elimination.
template <Field F>
RrefResult<F> rref(Matrix<F> m);

template <Field F>
std::size_t rank(const Matrix<F>& m) {
  return rref(m).rank;
}

// Moore-Penrose-style generalized inverse from the full-rank factorization
// m = C R (C = pivot columns of m, R = nonzero rows of rref(m)). The result
// maps Im(m) back onto the span of the pivot coordinates and satisfies
// m B m = m and B m B = B.
template <Field F>
Matrix<F> pseudo_inverse(const Matrix<F>& m);

}  // namespace ncr
