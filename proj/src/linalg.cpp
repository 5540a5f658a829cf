#include <algorithm>

#include "ncr/matrix.hpp"
#include "ncr/subspace.hpp"

namespace ncr {

template <Field F>
RrefResult<F> rref(Matrix<F> m) {
  const F& f = m.field();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && f.is_zero(m(p, c))) ++p;
    if (p == m.rows()) continue;
    if (p != r) {
      for (std::size_t j = c; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    }
    const auto scale = f.inv(m(r, c));
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) = f.mul(m(r, j), scale);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || f.is_zero(m(i, c))) continue;
      const auto factor = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) {
        if (!f.is_zero(m(r, j))) m(i, j) = f.sub(m(i, j), f.mul(factor, m(r, j)));
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return RrefResult<F>{std::move(m), r, std::move(pivots)};
}

template <Field F>
Matrix<F> pseudo_inverse(const Matrix<F>& m) {
  const F& f = m.field();
  const auto col_form = rref(m);
  const std::size_t r = col_form.rank;
  Matrix<F> result(f, m.cols(), m.rows());
  if (r == 0) return result;

  // m restricted to the pivot coordinates has full column rank; invert it on
  // r independent rows and embed the inverse back.
  const Matrix<F> c = m.select_cols(col_form.pivots);
  const auto row_form = rref(c.transpose());
  const std::vector<std::size_t>& rows = row_form.pivots;
  const Matrix<F> square = c.select_rows(rows);

  Matrix<F> augmented(f, r, 2 * r);
  augmented.set_block(0, 0, square);
  augmented.set_block(0, r, Matrix<F>::identity(f, r));
  const auto inv_form = rref(std::move(augmented));
  if (inv_form.rank != r || inv_form.pivots.back() != r - 1) {
    throw InvariantViolation("pseudo_inverse: selected minor is singular");
  }
  const Matrix<F> square_inv = inv_form.reduced.block(0, r, r, r);
  for (std::size_t k = 0; k < r; ++k) {
    for (std::size_t l = 0; l < r; ++l) result(col_form.pivots[k], rows[l]) = square_inv(k, l);
  }
  return result;
}

template <Field F>
Subspace<F>::Subspace(Matrix<F> canonical_rows) : basis_(std::move(canonical_rows)) {
  const F& f = basis_.field();
  for (std::size_t i = 0; i < basis_.rows(); ++i) {
    std::size_t j = 0;
    while (j < basis_.cols() && f.is_zero(basis_(i, j))) ++j;
    pivots_.push_back(j);
  }
}

template <Field F>
Subspace<F> Subspace<F>::row_span(const Matrix<F>& generators) {
  auto form = rref(generators);
  return Subspace(form.reduced.block(0, 0, form.rank, generators.cols()), std::move(form.pivots));
}

template <Field F>
bool Subspace<F>::contains(std::span<const value_type> v) const {
  if (v.size() != ambient_dim()) throw DimensionError("contains: vector length mismatch");
  const F& f = field();
  std::vector<value_type> rest(v.begin(), v.end());
  for (std::size_t i = 0; i < dim(); ++i) {
    const auto coeff = rest[pivots_[i]];
    if (f.is_zero(coeff)) continue;
    for (std::size_t j = pivots_[i]; j < ambient_dim(); ++j) {
      rest[j] = f.sub(rest[j], f.mul(coeff, basis_(i, j)));
    }
  }
  return std::all_of(rest.begin(), rest.end(), [&](const value_type& e) { return f.is_zero(e); });
}

template <Field F>
bool Subspace<F>::contains(const Subspace& other) const {
  if (other.ambient_dim() != ambient_dim()) throw DimensionError("contains: ambient mismatch");
  if (other.dim() > dim()) return false;
  for (std::size_t i = 0; i < other.dim(); ++i) {
    if (!contains(other.basis_.row(i))) return false;
  }
  return true;
}

template <Field F>
Subspace<F> kernel(const Matrix<F>& m) {
  const F& f = m.field();
  const auto form = rref(m);
  const std::size_t n = m.cols();
  std::vector<bool> is_pivot(n, false);
  for (auto p : form.pivots) is_pivot[p] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t j = 0; j < n; ++j) {
    if (!is_pivot[j]) free_cols.push_back(j);
  }
  // One generator per free column.
  Matrix<F> gens(f, free_cols.size(), n);
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    const std::size_t fc = free_cols[k];
    gens(k, fc) = f.one();
    for (std::size_t i = 0; i < form.rank; ++i) gens(k, form.pivots[i]) = f.neg(form.reduced(i, fc));
  }
  return Subspace<F>::row_span(gens);
}

template <Field F>
Subspace<F> annihilator(const Subspace<F>& u) {
  return kernel(u.basis());
}

template <Field F>
Subspace<F> subspace_sum(const Subspace<F>& u, const Subspace<F>& v) {
  if (u.ambient_dim() != v.ambient_dim()) {
    throw DimensionError("subspace_sum: ambient " + std::to_string(u.ambient_dim()) + " vs " +
                         std::to_string(v.ambient_dim()));
  }
  if (v.is_zero() || u.is_full()) return u;
  if (u.is_zero() || v.is_full()) return v;
  return Subspace<F>::row_span(vstack(u.basis(), v.basis()));
}

template <Field F>
Subspace<F> subspace_intersect(const Subspace<F>& u, const Subspace<F>& v) {
  if (u.ambient_dim() != v.ambient_dim()) {
    throw DimensionError("subspace_intersect: ambient " + std::to_string(u.ambient_dim()) + " vs " +
                         std::to_string(v.ambient_dim()));
  }
  if (u.is_zero() || v.is_full()) return u;
  if (v.is_zero() || u.is_full()) return v;
  return annihilator(subspace_sum(annihilator(u), annihilator(v)));
}

template <Field F>
Subspace<F> apply_image(const Matrix<F>& m, const Subspace<F>& u) {
  if (u.ambient_dim() != m.cols()) {
    throw DimensionError("apply_image: subspace in F^" + std::to_string(u.ambient_dim()) +
                         " but matrix is " + m.shape());
  }
  if (u.is_zero()) return Subspace<F>::zero(m.field(), m.rows());
  return Subspace<F>::row_span(u.basis() * m.transpose());
}

template <Field F>
Subspace<F> preimage(const Matrix<F>& m, const Subspace<F>& w) {
  if (w.ambient_dim() != m.rows()) {
    throw DimensionError("preimage: subspace in F^" + std::to_string(w.ambient_dim()) +
                         " but matrix is " + m.shape());
  }
  if (w.is_full()) return Subspace<F>::full(m.field(), m.cols());
  return kernel(annihilator(w).basis() * m);
}

#define NCR_INSTANTIATE_LINALG(F)                                            \
  template RrefResult<F> rref<F>(Matrix<F>);                                 \
  template Matrix<F> pseudo_inverse<F>(const Matrix<F>&);                    \
  template class Subspace<F>;                                                \
  template Subspace<F> kernel<F>(const Matrix<F>&);                          \
  template Subspace<F> annihilator<F>(const Subspace<F>&);                   \
  template Subspace<F> subspace_sum<F>(const Subspace<F>&, const Subspace<F>&); \
  template Subspace<F> subspace_intersect<F>(const Subspace<F>&, const Subspace<F>&); \
  template Subspace<F> apply_image<F>(const Matrix<F>&, const Subspace<F>&); \
  template Subspace<F> preimage<F>(const Matrix<F>&, const Subspace<F>&);

NCR_INSTANTIATE_LINALG(PrimeField)
NCR_INSTANTIATE_LINALG(RationalField)

}  // namespace ncr
