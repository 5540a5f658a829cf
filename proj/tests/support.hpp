#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ncr/field.hpp"
#include "ncr/homext.hpp"
#include "ncr/matrix.hpp"
#include "ncr/matspace.hpp"
#include "ncr/oracle.hpp"
#include "ncr/quiver.hpp"
#include "ncr/reduction.hpp"
#include "ncr/rng.hpp"
#include "ncr/subspace.hpp"

namespace testing {

using ncr::Matrix;
using ncr::MatrixSpace;
using ncr::PrimeField;
using ncr::Representation;
using ncr::Subspace;

using FM = Matrix<PrimeField>;
using FS = Subspace<PrimeField>;

// The three coefficient matrices of the skew-symmetric 3x3 pencil T.
inline std::vector<FM> skew_generators(const PrimeField& f) {
  return {FM::from_ints(f, 3, 3, {0, 1, 0, -1, 0, 0, 0, 0, 0}),
          FM::from_ints(f, 3, 3, {0, 0, 1, 0, 0, 0, -1, 0, 0}),
          FM::from_ints(f, 3, 3, {0, 0, 0, 0, 0, 1, 0, -1, 0})};
}

inline MatrixSpace<PrimeField> skew_space(const PrimeField& f) { return MatrixSpace<PrimeField>(f, 3, 3, skew_generators(f)); }

inline ncr::Quiver kronecker_quiver(std::size_t m) {
  std::vector<ncr::ArrowSpec> arrows;
  for (std::size_t i = 0; i < m; ++i) arrows.push_back({"a" + std::to_string(i + 1), "x", "y"});
  return ncr::Quiver({"x", "y"}, arrows);
}

template <ncr::Field F>
Representation<F> kronecker_rep(const F& f, std::size_t n, std::vector<Matrix<F>> maps) {
  auto q = kronecker_quiver(maps.size());
  return Representation<F>(f, std::move(q), ncr::DimensionVector({n, n}), std::move(maps));
}

inline Representation<PrimeField> skew_rep(const PrimeField& f) { return kronecker_rep(f, 3, skew_generators(f)); }

// One arrow x -> y carrying E_11 on F^2.
inline Representation<PrimeField> e11_rep(const PrimeField& f) {
  return kronecker_rep(f, 2, {FM::unit(f, 2, 2, 0, 0)});
}

inline FS span(const PrimeField& f, std::size_t n, std::vector<std::vector<std::int64_t>> vectors) {
  FM m(f, vectors.size(), n);
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    for (std::size_t j = 0; j < n; ++j) m(i, j) = f.from_int(vectors[i][j]);
  }
  return FS::row_span(m);
}

template <ncr::Field F>
Matrix<F> random_matrix(const F& f, std::size_t r, std::size_t c, ncr::Rng& rng) {
  Matrix<F> m(f, r, c);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) m(i, j) = f.sample(rng);
  }
  return m;
}

// Sparse-ish random matrix: each entry nonzero with probability 1/2, so
// that small instances are often degenerate.
inline FM sparse_matrix(const PrimeField& f, std::size_t r, std::size_t c, ncr::Rng& rng) {
  FM m(f, r, c);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) {
      if (rng.below(2) == 0) m(i, j) = f.sample(rng);
    }
  }
  return m;
}

inline MatrixSpace<PrimeField> random_space(const PrimeField& f, std::size_t rows, std::size_t cols, std::size_t m,
                                            ncr::Rng& rng) {
  std::vector<FM> gens;
  for (std::size_t i = 0; i < m; ++i) gens.push_back(sparse_matrix(f, rows, cols, rng));
  return MatrixSpace<PrimeField>(f, rows, cols, std::move(gens));
}

// Random acyclic quiver on the given number of vertices (arrows only go
// from lower to higher index) with a random representation.
inline Representation<PrimeField> random_acyclic_rep(const PrimeField& f, std::size_t vertices, std::size_t max_dim,
                                                     std::size_t max_arrows_per_pair, ncr::Rng& rng) {
  std::vector<std::string> ids;
  for (std::size_t v = 0; v < vertices; ++v) ids.push_back("v" + std::to_string(v));
  std::vector<ncr::ArrowSpec> arrows;
  for (std::size_t i = 0; i < vertices; ++i) {
    for (std::size_t j = i + 1; j < vertices; ++j) {
      const auto k = rng.below(max_arrows_per_pair + 1);
      for (std::size_t a = 0; a < k; ++a) arrows.push_back({"a" + std::to_string(arrows.size()), ids[i], ids[j]});
    }
  }
  ncr::Quiver q(ids, arrows);
  std::vector<std::size_t> dims;
  for (std::size_t v = 0; v < vertices; ++v) dims.push_back(rng.below(max_dim + 1));
  std::vector<FM> maps;
  for (const auto& a : q.arrows()) maps.push_back(sparse_matrix(f, dims[a.head], dims[a.tail], rng));
  return Representation<PrimeField>(f, q, ncr::DimensionVector(dims), std::move(maps));
}

inline ncr::Weight random_weight(std::size_t vertices, std::int64_t bound, ncr::Rng& rng) {
  std::vector<std::int64_t> w;
  for (std::size_t v = 0; v < vertices; ++v) {
    w.push_back(static_cast<std::int64_t>(rng.below(2 * bound + 1)) - bound);
  }
  return ncr::Weight(w);
}

}  // namespace testing
