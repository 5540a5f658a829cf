#include "ncr/matspace.hpp"

#include <algorithm>
#include <type_traits>

#include "ncr/oracle.hpp"
#include "ncr/rng.hpp"

namespace ncr {

template <Field F>
MatrixSpace<F>::MatrixSpace(F field, std::size_t rows, std::size_t cols, std::vector<Matrix<F>> generators)
    : field_(std::move(field)), base_rows_(rows), base_cols_(cols), gens_(std::move(generators)) {
  for (const auto& g : gens_) {
    if (g.rows() != rows || g.cols() != cols) {
      throw DimensionError("matrix space generator is " + g.shape() + ", expected " + std::to_string(rows) + "x" +
                           std::to_string(cols));
    }
    if (!(g.field() == field_)) throw ValidationError("matrix space generators use different fields");
  }
}

template <Field F>
std::vector<Matrix<F>> MatrixSpace<F>::basis() const {
  std::vector<Matrix<F>> out;
  out.reserve(basis_size());
  for (const auto& g : gens_) {
    for (std::size_t k = 0; k < factor_; ++k) {
      for (std::size_t l = 0; l < factor_; ++l) {
        out.push_back(kronecker(Matrix<F>::unit(field_, factor_, factor_, k, l), g));
      }
    }
  }
  return out;
}

template <Field F>
std::optional<BlockStructure<F>> MatrixSpace<F>::effective_block() const {
  if (!block_ || factor_ == 1) return block_;
  return block_->blown_up(factor_);
}

template <Field F>
MatrixSpace<F> MatrixSpace<F>::with_block(BlockStructure<F> bs) const {
  if (bs.domain_dim() != base_cols_ || bs.codomain_dim() != base_rows_) {
    throw DimensionError("block structure does not partition the space's shape");
  }
  MatrixSpace r = *this;
  r.block_ = std::move(bs);
  return r;
}

template <Field F>
Matrix<F> MatrixSpace<F>::element(const std::vector<Matrix<F>>& coefficients) const {
  if (coefficients.size() != gens_.size()) throw DimensionError("element: one coefficient matrix per generator");
  Matrix<F> out(field_, rows(), cols());
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    const auto& x = coefficients[i];
    if (x.rows() != factor_ || x.cols() != factor_) throw DimensionError("element: coefficient must be d x d");
    for (std::size_t k = 0; k < factor_; ++k) {
      for (std::size_t l = 0; l < factor_; ++l) {
        const auto& s = x(k, l);
        if (field_.is_zero(s)) continue;
        for (std::size_t r = 0; r < base_rows_; ++r) {
          for (std::size_t c = 0; c < base_cols_; ++c) {
            const auto& g = gens_[i](r, c);
            if (field_.is_zero(g)) continue;
            auto& e = out(k * base_rows_ + r, l * base_cols_ + c);
            e = field_.add(e, field_.mul(s, g));
          }
        }
      }
    }
  }
  return out;
}

template <Field F>
MatrixSpace<F> MatrixSpace<F>::blown_up(std::size_t d) const {
  if (d == 0) throw PreconditionError("blow-up factor must be at least 1");
  MatrixSpace r = *this;
  r.factor_ *= d;
  return r;
}

template <Field F>
MatrixSpace<F> blow_up(const MatrixSpace<F>& s, std::size_t d) {
  return s.blown_up(d);
}

template <Field F>
Matrix<F> random_element(const MatrixSpace<F>& s, std::uint64_t seed) {
  Rng rng(seed);
  const std::size_t d = s.blowup_factor();
  std::vector<Matrix<F>> coeffs;
  coeffs.reserve(s.generators().size());
  for (std::size_t i = 0; i < s.generators().size(); ++i) {
    Matrix<F> x(s.field(), d, d);
    for (std::size_t k = 0; k < d; ++k) {
      for (std::size_t l = 0; l < d; ++l) x(k, l) = s.field().sample(rng);
    }
    coeffs.push_back(std::move(x));
  }
  return s.element(coeffs);
}

namespace {

using Poly = std::vector<std::uint64_t>;  // low degree first, no trailing zeros

Poly poly_mod(Poly a, const Poly& m, const PrimeField& f) {
  const auto inv = f.inv(m.back());
  while (!a.empty() && a.size() >= m.size()) {
    const auto c = f.mul(a.back(), inv);
    const std::size_t shift = a.size() - m.size();
    for (std::size_t i = 0; i < m.size(); ++i) a[shift + i] = f.sub(a[shift + i], f.mul(c, m[i]));
    while (!a.empty() && a.back() == 0) a.pop_back();
  }
  return a;
}

// Monic polynomial of degree `deg` whose lower coefficients are the base-p
// digits of `index`.
Poly monic(std::size_t deg, std::uint64_t index, std::uint64_t p) {
  Poly f(deg + 1, 0);
  f[deg] = 1;
  for (std::size_t i = 0; i < deg; ++i, index /= p) f[i] = index % p;
  return f;
}

bool irreducible(const Poly& f, const PrimeField& field) {
  const std::size_t k = f.size() - 1;
  const std::uint64_t p = field.modulus();
  for (std::size_t deg = 1; 2 * deg <= k; ++deg) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < deg; ++i) count *= p;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      if (poly_mod(f, monic(deg, idx, p), field).empty()) return false;
    }
  }
  return true;
}

}  // namespace

Matrix<PrimeField> extension_generator(const PrimeField& f, std::size_t k) {
  if (k == 0) throw PreconditionError("extension degree must be at least 1");
  const std::uint64_t p = f.modulus();
  for (std::uint64_t idx = 0;; ++idx) {
    auto poly = monic(k, idx, p);
    if (k > 1 && poly[0] == 0) continue;
    if (!irreducible(poly, f)) continue;
    Matrix<PrimeField> c(f, k, k);
    for (std::size_t i = 0; i + 1 < k; ++i) c(i + 1, i) = 1;
    for (std::size_t i = 0; i < k; ++i) c(i, k - 1) = f.sub(0, poly[i]);
    return c;
  }
}

template <Field F>
Matrix<F> random_element(const MatrixSpace<F>& s, std::uint64_t seed, std::size_t lift) {
  if (lift <= 1) return random_element(s, seed);
  const std::size_t d = s.blowup_factor();
  if (d % lift != 0) throw PreconditionError("field lift must divide the blow-up factor");
  if constexpr (!std::is_same_v<F, PrimeField>) {
    return random_element(s, seed);
  } else {
    const auto& f = s.field();
    std::vector<Matrix<F>> powers{Matrix<F>::identity(f, lift)};
    const auto c = extension_generator(f, lift);
    while (powers.size() < lift) powers.push_back(powers.back() * c);
    Rng rng(seed);
    std::vector<Matrix<F>> coeffs;
    coeffs.reserve(s.generators().size());
    for (std::size_t i = 0; i < s.generators().size(); ++i) {
      Matrix<F> x(f, d, d);
      for (std::size_t bk = 0; bk < d / lift; ++bk) {
        for (std::size_t bl = 0; bl < d / lift; ++bl) {
          Matrix<F> e(f, lift, lift);
          for (const auto& pw : powers) e += pw.scaled(f.sample(rng));
          x.set_block(bk * lift, bl * lift, e);
        }
      }
      coeffs.push_back(std::move(x));
    }
    return s.element(coeffs);
  }
}

template <Field F>
Subspace<F> tensor_up(std::size_t d, const Subspace<F>& y) {
  const std::size_t n = y.ambient_dim();
  Matrix<F> rows(y.field(), d * y.dim(), d * n);
  for (std::size_t k = 0; k < d; ++k) rows.set_block(k * y.dim(), k * n, y.basis());
  return Subspace<F>::row_span(rows);
}

template <Field F>
Subspace<F> project_blocks(std::size_t d, const Subspace<F>& u) {
  if (d == 0 || u.ambient_dim() % d != 0) throw DimensionError("project_blocks: ambient not divisible by d");
  const std::size_t n = u.ambient_dim() / d;
  Matrix<F> slices(u.field(), u.dim() * d, n);
  for (std::size_t i = 0; i < u.dim(); ++i) {
    for (std::size_t k = 0; k < d; ++k) slices.set_block(i * d + k, 0, u.basis().block(i, k * n, 1, n));
  }
  return Subspace<F>::row_span(slices);
}

template <Field F>
Subspace<F> space_image(const MatrixSpace<F>& s, const Subspace<F>& u) {
  if (u.ambient_dim() != s.cols()) {
    throw DimensionError("space_image: subspace in F^" + std::to_string(u.ambient_dim()) + " but space has " +
                         std::to_string(s.cols()) + " columns");
  }
  const std::size_t d = s.blowup_factor();
  if (u.is_zero() || s.generators().empty()) return Subspace<F>::zero(s.field(), s.rows());
  // M(d) (x) A applied to u equals F^d (x) A(sum_l pi_l(u)).
  const Subspace<F> base_u = d == 1 ? u : project_blocks(d, u);
  const Matrix<F> ut = base_u.basis();
  Matrix<F> images(s.field(), ut.rows() * s.generators().size(), s.base_rows());
  for (std::size_t i = 0; i < s.generators().size(); ++i) {
    images.set_block(i * ut.rows(), 0, ut * s.generators()[i].transpose());
  }
  const auto y = Subspace<F>::row_span(images);
  return d == 1 ? y : tensor_up(d, y);
}

template <Field F>
WongTrace<F> wong_sequence(const MatrixSpace<F>& s, const Matrix<F>& a) {
  if (a.rows() != s.rows() || a.cols() != s.cols()) {
    throw DimensionError("wong_sequence: element is " + a.shape() + " but space is " + std::to_string(s.rows()) +
                         "x" + std::to_string(s.cols()));
  }
  WongTrace<F> trace{Subspace<F>::zero(s.field(), s.rows()), {0}};
  for (std::size_t step = 0; step <= s.rows(); ++step) {
    auto next = space_image(s, preimage(a, trace.limit));
    trace.dims.push_back(next.dim());
    if (next == trace.limit) return trace;
    trace.limit = std::move(next);
  }
  throw InvariantViolation("Wong sequence did not stabilize within rows + 1 steps");
}

template <Field F>
std::optional<ShrunkCertificate<F>> shrunk_from_wong(const MatrixSpace<F>& s, const Matrix<F>& a) {
  const auto limit = wong_limit(s, a);
  if (!image(a).contains(limit)) return std::nullopt;
  auto u = preimage(a, limit);
  auto img = space_image(s, u);
  const auto c = static_cast<std::int64_t>(u.dim()) - static_cast<std::int64_t>(img.dim());
  if (c != static_cast<std::int64_t>(s.cols() - rank(a))) {
    throw InvariantViolation("Wong certificate shrinks by " + std::to_string(c) + ", expected nullity of a");
  }
  return ShrunkCertificate<F>{std::move(u), std::move(img), c, true};
}

template <Field F>
bool certificate_holds(const MatrixSpace<F>& s, const ShrunkCertificate<F>& cert) {
  if (cert.u.ambient_dim() != s.cols() || cert.image.ambient_dim() != s.rows()) return false;
  const auto img = space_image(s, cert.u);
  return img == cert.image &&
         cert.c == static_cast<std::int64_t>(cert.u.dim()) - static_cast<std::int64_t>(cert.image.dim());
}

NcrkTrace plan_blowup(std::size_t rows, std::size_t cols, std::uint64_t sample_set_size,
                      std::optional<std::size_t> override_d) {
  NcrkTrace t;
  const std::size_t n = std::min(rows, cols);
  if (override_d) {
    if (*override_d == 0) throw PreconditionError("blow-up factor must be at least 1");
    t.base_d = *override_d;
    t.d = *override_d;
    return t;
  }
  t.base_d = n > 1 ? n - 1 : 1;
  // M(dk, F_q) contains M(d, F_{q^k}); lifting by k puts the sampled
  // coefficients in a field with more than 2n elements.
  const unsigned __int128 need = 2 * static_cast<unsigned __int128>(n);
  unsigned __int128 size = sample_set_size;
  while (size <= need) {
    size *= sample_set_size;
    ++t.field_lift;
  }
  t.d = t.base_d * t.field_lift;
  return t;
}

namespace {

template <Field F>
NcrkResult<F> trivial_ncrk(const MatrixSpace<F>& s) {
  auto u = Subspace<F>::full(s.field(), s.cols());
  auto img = space_image(s, u);
  const auto c = static_cast<std::int64_t>(u.dim()) - static_cast<std::int64_t>(img.dim());
  NcrkResult<F> r{0, ShrunkCertificate<F>{std::move(u), std::move(img), c, true}, std::nullopt,
                  Matrix<F>(s.field(), s.rows(), s.cols()), NcrkTrace{}};
  return r;
}

}  // namespace

template <Field F>
NcrkResult<F> ncrk(const MatrixSpace<F>& s, const NcrkConfig& cfg) {
  const bool all_zero = std::all_of(s.generators().begin(), s.generators().end(),
                                    [](const Matrix<F>& g) { return g.is_zero(); });
  if (s.rows() == 0 || s.cols() == 0 || all_zero) return trivial_ncrk(s);

  if (cfg.mode == Mode::oracle) {
    if constexpr (std::is_same_v<F, PrimeField>) {
      auto brute = oracle::brute_ncrk(s);
      auto img = space_image(s, brute.minimal_u);
      NcrkResult<F> r{brute.rank, ShrunkCertificate<F>{brute.minimal_u, std::move(img), brute.max_c, true},
                      std::nullopt, std::nullopt, NcrkTrace{}};
      r.trace.mode = Mode::oracle;
      return r;
    } else {
      throw OracleInfeasible("oracle mode requires a prime field");
    }
  }

  NcrkTrace trace = plan_blowup(s.rows(), s.cols(), s.field().sample_set_size(), cfg.blowup_d);
  const std::size_t d = trace.d;
  const auto big = blow_up(s, d);
  std::size_t best_lower = 0;
  const std::size_t attempts = std::max<std::size_t>(1, cfg.max_retries);
  for (std::size_t attempt = 0; attempt < attempts; ++attempt) {
    const std::uint64_t seed = derive_seed(cfg.seed, attempt);
    trace.seeds.push_back(seed);
    trace.attempts = attempt + 1;
    auto a = random_element(big, seed, trace.field_lift);
    auto cert = shrunk_from_wong(big, a);
    if (!cert) {
      best_lower = std::max(best_lower, (rank(a) + d - 1) / d);
      continue;
    }
    if (cert->c % static_cast<std::int64_t>(d) != 0) {
      throw ThresholdError("blow-up shrink " + std::to_string(cert->c) + " is not divisible by d = " +
                           std::to_string(d) + "; field too small");
    }
    const std::int64_t c = cert->c / static_cast<std::int64_t>(d);
    auto u = project_blocks(d, cert->u);
    if (!(tensor_up(d, u) == cert->u)) {
      throw InvariantViolation("minimal shrunk subspace of the blow-up is not of the form F^d (x) U");
    }
    auto img = space_image(s, u);
    ShrunkCertificate<F> base{std::move(u), std::move(img), c, true};
    if (base.c != static_cast<std::int64_t>(base.u.dim()) - static_cast<std::int64_t>(base.image.dim())) {
      throw InvariantViolation("pulled-back certificate does not shrink by c");
    }
    const auto r = static_cast<std::size_t>(static_cast<std::int64_t>(s.cols()) - c);
    return NcrkResult<F>{r, std::move(base), std::move(cert), std::move(a), std::move(trace)};
  }
  throw ProbabilisticFailure("no maximal-rank element found in " + std::to_string(attempts) +
                                 " attempts at blow-up d = " + std::to_string(d),
                             best_lower);
}

template <Field F>
RankResult<F> rank_of_space(const MatrixSpace<F>& s, const NcrkConfig& cfg) {
  if (cfg.mode == Mode::oracle) {
    if constexpr (std::is_same_v<F, PrimeField>) {
      MatrixSpace<F> base(s.field(), s.base_rows(), s.base_cols(), s.generators());
      return RankResult<F>{oracle::brute_rank_blowup(base, s.blowup_factor()), 0, std::nullopt};
    } else {
      throw OracleInfeasible("oracle mode requires a prime field");
    }
  }
  const std::size_t limit = std::min(s.rows(), s.cols());
  RankResult<F> best{0, 0, std::nullopt};
  for (std::size_t t = 0; t < std::max<std::size_t>(1, cfg.trials); ++t) {
    auto a = random_element(s, derive_seed(cfg.seed, t));
    const auto r = rank(a);
    best.trials = t + 1;
    if (!best.element || r > best.rank) {
      best.rank = r;
      best.element = std::move(a);
    }
    if (best.rank == limit) break;
  }
  return best;
}

#define NCR_INSTANTIATE_MATSPACE(F)                                                               \
  template class MatrixSpace<F>;                                                                  \
  template Subspace<F> space_image<F>(const MatrixSpace<F>&, const Subspace<F>&);                 \
  template MatrixSpace<F> blow_up<F>(const MatrixSpace<F>&, std::size_t);                         \
  template Matrix<F> random_element<F>(const MatrixSpace<F>&, std::uint64_t);                     \
  template Matrix<F> random_element<F>(const MatrixSpace<F>&, std::uint64_t, std::size_t);                     \
  template Subspace<F> tensor_up<F>(std::size_t, const Subspace<F>&);                             \
  template Subspace<F> project_blocks<F>(std::size_t, const Subspace<F>&);                        \
  template WongTrace<F> wong_sequence<F>(const MatrixSpace<F>&, const Matrix<F>&);                \
  template std::optional<ShrunkCertificate<F>> shrunk_from_wong<F>(const MatrixSpace<F>&, const Matrix<F>&); \
  template bool certificate_holds<F>(const MatrixSpace<F>&, const ShrunkCertificate<F>&);         \
  template NcrkResult<F> ncrk<F>(const MatrixSpace<F>&, const NcrkConfig&);                       \
  template RankResult<F> rank_of_space<F>(const MatrixSpace<F>&, const NcrkConfig&);

NCR_INSTANTIATE_MATSPACE(PrimeField)
NCR_INSTANTIATE_MATSPACE(RationalField)

}  // namespace ncr
