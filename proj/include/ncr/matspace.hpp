#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "ncr/blocks.hpp"
#include "ncr/matrix.hpp"
#include "ncr/subspace.hpp"

namespace ncr {

// Span of base generator matrices A_1..A_m, optionally tensor-blown-up:
// with blow-up factor d the space is M(d, F) (x) span{A_i}, laid out so that
// block (k, l) of an element holds a combination of the A_i. The blow-up is
// kept implicit; basis() materializes the d^2 m matrices E_kl (x) A_i.
template <Field F>
class MatrixSpace {
 public:
  MatrixSpace(F field, std::size_t rows, std::size_t cols, std::vector<Matrix<F>> generators);

  static MatrixSpace zero(const F& field, std::size_t rows, std::size_t cols) {
    return MatrixSpace(field, rows, cols, {});
  }

  const F& field() const { return field_; }
  std::size_t rows() const { return factor_ * base_rows_; }
  std::size_t cols() const { return factor_ * base_cols_; }
  std::size_t base_rows() const { return base_rows_; }
  std::size_t base_cols() const { return base_cols_; }
  std::size_t blowup_factor() const { return factor_; }
  const std::vector<Matrix<F>>& generators() const { return gens_; }
  std::size_t basis_size() const { return factor_ * factor_ * gens_.size(); }
  std::vector<Matrix<F>> basis() const;

  // Block layout of the base space, if it came out of a quiver reduction.
  const std::optional<BlockStructure<F>>& block() const { return block_; }
  // Layout of this (possibly blown-up) space.
  std::optional<BlockStructure<F>> effective_block() const;
  MatrixSpace with_block(BlockStructure<F> bs) const;

  // sum_i X_i (x) A_i with X_i of size factor x factor.
  Matrix<F> element(const std::vector<Matrix<F>>& coefficients) const;

  MatrixSpace blown_up(std::size_t d) const;

 private:
  F field_;
  std::size_t base_rows_;
  std::size_t base_cols_;
  std::size_t factor_ = 1;
  std::vector<Matrix<F>> gens_;
  std::optional<BlockStructure<F>> block_;
};

// U (domain side) together with A(U) and c = dim U - dim A(U).
template <Field F>
struct ShrunkCertificate {
  Subspace<F> u;
  Subspace<F> image;
  std::int64_t c;
  bool minimal;
};

// A(u) = sum_i A_i(u) over the whole (blown-up) space.
template <Field F>
Subspace<F> space_image(const MatrixSpace<F>& s, const Subspace<F>& u);

template <Field F>
MatrixSpace<F> blow_up(const MatrixSpace<F>& s, std::size_t d);

// Uniform random element, reproducible for a fixed seed.
template <Field F>
Matrix<F> random_element(const MatrixSpace<F>& s, std::uint64_t seed);

// As random_element, but with lift > 1 each lift x lift block of the
// coefficient matrices is a uniform element of F_{q^lift}, embedded through
// the companion matrix of an irreducible polynomial. lift must divide the
// blow-up factor; the rank of the result is lift times a rank over F_{q^lift}.
template <Field F>
Matrix<F> random_element(const MatrixSpace<F>& s, std::uint64_t seed, std::size_t lift);

// Companion matrix of the lexicographically first monic irreducible
// polynomial of degree k over F_p.
Matrix<PrimeField> extension_generator(const PrimeField& f, std::size_t k);

// F^d (x) y inside F^{d * ambient}, Kronecker order.
template <Field F>
Subspace<F> tensor_up(std::size_t d, const Subspace<F>& y);

// Sum of the d coordinate-block projections of u (block size ambient / d).
template <Field F>
Subspace<F> project_blocks(std::size_t d, const Subspace<F>& u);

template <Field F>
struct WongTrace {
  Subspace<F> limit;
  std::vector<std::size_t> dims;  // dim W_0, dim W_1, ..., dim W* (last repeated once)
};

// Second Wong sequence W_0 = 0, W_{i+1} = A(a^{-1}(W_i)) until it repeats.
template <Field F>
WongTrace<F> wong_sequence(const MatrixSpace<F>& s, const Matrix<F>& a);

template <Field F>
Subspace<F> wong_limit(const MatrixSpace<F>& s, const Matrix<F>& a) {
  return wong_sequence(s, a).limit;
}

// If the Wong limit lies in Im(a), the minimal shrunk subspace a^{-1}(W*)
// with c = cols - rank(a); otherwise nullopt (a is not of maximal rank).
template <Field F>
std::optional<ShrunkCertificate<F>> shrunk_from_wong(const MatrixSpace<F>& s, const Matrix<F>& a);

// Recomputes the image and c of a certificate against the space.
template <Field F>
bool certificate_holds(const MatrixSpace<F>& s, const ShrunkCertificate<F>& cert);

enum class Mode { randomized, oracle };

struct NcrkConfig {
  std::uint64_t seed = 0;
  std::size_t max_retries = 8;
  Mode mode = Mode::randomized;
  std::optional<std::size_t> blowup_d;  // expert override
  std::size_t trials = 32;              // samples for rank_of_space
};

struct NcrkTrace {
  std::size_t d = 1;              // blow-up factor actually used
  std::size_t base_d = 1;         // min(rows, cols) - 1, or the override
  std::size_t field_lift = 1;     // extra factor compensating for a small field
  std::vector<std::uint64_t> seeds;
  std::size_t attempts = 0;
  Mode mode = Mode::randomized;
};

template <Field F>
struct NcrkResult {
  std::size_t rank;
  ShrunkCertificate<F> certificate;                        // in the space's own domain
  std::optional<ShrunkCertificate<F>> blown_certificate;   // in blow_up(s, trace.d)
  std::optional<Matrix<F>> witness;                        // element of rank d * rank
  NcrkTrace trace;
};

// Blow-up factor used by the randomized search: d = max(1, min(rows, cols) - 1),
// multiplied by the smallest k with |S|^k > 2 min(rows, cols) when the sample
// set S of the field is too small.
NcrkTrace plan_blowup(std::size_t rows, std::size_t cols, std::uint64_t sample_set_size,
                      std::optional<std::size_t> override_d);

// Non-commutative rank cols - max c with a minimal shrunk-subspace
// certificate. Randomized mode blows up, samples, and runs the Wong
// sequence; every answer it returns is certified (the sampled element has
// rank d * r and the certificate shrinks by d * (cols - r)).
template <Field F>
NcrkResult<F> ncrk(const MatrixSpace<F>& s, const NcrkConfig& cfg = {});

template <Field F>
struct RankResult {
  std::size_t rank;
  std::size_t trials;
  std::optional<Matrix<F>> element;  // an element achieving `rank`
};

// Maximal rank of an element; sampled (cfg.trials draws, early exit at
// min(rows, cols)) or exhaustive in oracle mode.
template <Field F>
RankResult<F> rank_of_space(const MatrixSpace<F>& s, const NcrkConfig& cfg = {});

}  // namespace ncr
