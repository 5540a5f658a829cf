#pragma once

#include <cstddef>
#include <cstdint>

#include "ncr/matspace.hpp"
#include "ncr/quiver.hpp"
#include "ncr/reduction.hpp"

namespace ncr {

// Span of the maps f(V): phi -> (phi(ha) V(a) - W(a) phi(ta))_a over V in
// Rep_alpha. Domain slots are (vertex x, column i < alpha(x)) of size beta(x);
// codomain slots are (arrow a, column i < alpha(ta)) of size beta(ha), with
// Slot::vertex holding the arrow index.
template <Field F>
struct HomMapSpace {
  DimensionVector alpha;
  MatrixSpace<F> space;
  std::size_t unit_generators;  // the first ones are the V(a) = E_kl parts, then one fixed part per arrow
};

template <Field F>
HomMapSpace<F> build_hom_space(const DimensionVector& alpha, const Representation<F>& w);

template <Field F>
struct HomExtResult {
  std::int64_t nchom;
  std::int64_t ncext;
  std::int64_t euler;              // <alpha, beta>
  Subrepresentation<F> sub;        // W' (target fixed) or V' (source fixed) attaining ncext
  DimensionVector factor_dims;     // dim W/W' (target fixed only; empty otherwise)
  ShrunkCertificate<F> certificate;
  NcrkTrace trace;
};

// Target-fixed orientation. nchom = sum alpha beta - ncrk(f_alpha); ncext
// is computed both as nchom - <alpha, beta> and as -<alpha, dim W''> for the
// factor read off the minimal shrunk subspace, and the two are asserted equal.
template <Field F>
HomExtResult<F> nchom_ncext(const DimensionVector& alpha, const Representation<F>& w, const NcrkConfig& cfg = {});

template <Field F>
std::int64_t nchom(const DimensionVector& alpha, const Representation<F>& w, const NcrkConfig& cfg = {}) {
  return nchom_ncext(alpha, w, cfg).nchom;
}

template <Field F>
std::int64_t ncext(const DimensionVector& alpha, const Representation<F>& w, const NcrkConfig& cfg = {}) {
  return nchom_ncext(alpha, w, cfg).ncext;
}

// sigma_beta(x) = sum_{a: ta = x} beta(ha) - beta(x).
Weight source_weight(const Quiver& q, const DimensionVector& beta);

// Source-fixed orientation: ncext = discrepancy of v under sigma_beta, nchom
// = ncext + <dim V, beta>.
template <Field F>
HomExtResult<F> ncext_fixed_source_full(const Representation<F>& v, const DimensionVector& beta,
                                        const NcrkConfig& cfg = {});

template <Field F>
std::int64_t ncext_fixed_source(const Representation<F>& v, const DimensionVector& beta, const NcrkConfig& cfg = {}) {
  return ncext_fixed_source_full(v, beta, cfg).ncext;
}

template <Field F>
std::int64_t nchom_fixed_source(const Representation<F>& v, const DimensionVector& beta, const NcrkConfig& cfg = {}) {
  return ncext_fixed_source_full(v, beta, cfg).nchom;
}

struct HomSample {
  std::size_t hom;
  std::size_t ext;
  std::size_t trials;
  bool certified;  // every trial missing the generic value has probability < 2^-20 overall
};

// Samples V in Rep_alpha and keeps the smallest dim ker f(V) (with its
// cokernel dimension).
template <Field F>
HomSample generic_hom_sample(const DimensionVector& alpha, const Representation<F>& w, std::size_t trials,
                             std::uint64_t seed);

}  // namespace ncr
