#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ncr/matrix.hpp"

namespace ncr {

// Linear subspace of F^n stored as the RREF of a row basis. The canonical
// form is unique, so equal subspaces compare equal bit for bit.
template <Field F>
class Subspace {
 public:
  using value_type = typename F::value_type;

  static Subspace zero(const F& field, std::size_t n) { return Subspace(Matrix<F>(field, 0, n)); }
  static Subspace full(const F& field, std::size_t n) { return Subspace(Matrix<F>::identity(field, n)); }

  // Row span of an arbitrary generating matrix.
  static Subspace row_span(const Matrix<F>& generators);
  // Column span of an arbitrary generating matrix.
  static Subspace column_span(const Matrix<F>& generators) { return row_span(generators.transpose()); }

  const F& field() const { return basis_.field(); }
  std::size_t ambient_dim() const { return basis_.cols(); }
  std::size_t dim() const { return basis_.rows(); }
  bool is_zero() const { return dim() == 0; }
  bool is_full() const { return dim() == ambient_dim(); }

  // Rows are the basis vectors, in RREF with strictly increasing pivots.
  const Matrix<F>& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  bool contains(std::span<const value_type> v) const;
  bool contains(const Subspace& other) const;

  friend bool operator==(const Subspace& a, const Subspace& b) { return a.basis_ == b.basis_; }

 private:
  explicit Subspace(Matrix<F> canonical_rows);
  Subspace(Matrix<F> canonical_rows, std::vector<std::size_t> pivots)
      : basis_(std::move(canonical_rows)), pivots_(std::move(pivots)) {}

  Matrix<F> basis_;
  std::vector<std::size_t> pivots_;
};

// {v : m v = 0} as a subspace of F^cols.
template <Field F>
Subspace<F> kernel(const Matrix<F>& m);

// Orthogonal complement under the standard bilinear form; dim = n - dim(u),
// and annihilator(annihilator(u)) == u over every field.
template <Field F>
Subspace<F> annihilator(const Subspace<F>& u);

template <Field F>
Subspace<F> subspace_sum(const Subspace<F>& u, const Subspace<F>& v);

template <Field F>
Subspace<F> subspace_intersect(const Subspace<F>& u, const Subspace<F>& v);

// m(u) for u inside F^cols.
template <Field F>
Subspace<F> apply_image(const Matrix<F>& m, const Subspace<F>& u);

// {v : m v in w} for w inside F^rows. Always contains kernel(m).
template <Field F>
Subspace<F> preimage(const Matrix<F>& m, const Subspace<F>& w);

// Column space of m.
template <Field F>
Subspace<F> image(const Matrix<F>& m) {
  return Subspace<F>::column_span(m);
}

}  // namespace ncr
