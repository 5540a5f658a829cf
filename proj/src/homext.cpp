#include "ncr/homext.hpp"

#include <algorithm>
#include <cmath>

#include "ncr/rng.hpp"

namespace ncr {

namespace {

void check_alpha(const DimensionVector& alpha, const Quiver& q) {
  if (alpha.size() != q.vertex_count()) {
    throw DimensionError("dimension vector has " + std::to_string(alpha.size()) + " entries, quiver has " +
                         std::to_string(q.vertex_count()) + " vertices");
  }
}

}  // namespace

template <Field F>
HomMapSpace<F> build_hom_space(const DimensionVector& alpha, const Representation<F>& w) {
  const Quiver& q = w.quiver();
  check_alpha(alpha, q);
  q.topological_order();
  const auto& beta = w.dims();
  const F& field = w.field();

  BlockStructure<F> bs;
  std::vector<std::size_t> dom_start(q.vertex_count());
  std::size_t off = 0;
  for (std::size_t x = 0; x < q.vertex_count(); ++x) {
    dom_start[x] = bs.domain.size();
    for (std::size_t i = 0; i < alpha[x]; ++i) {
      bs.domain.push_back(Slot{x, i, off, beta[x]});
      off += beta[x];
    }
  }
  std::vector<std::size_t> cod_start(q.arrow_count());
  off = 0;
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    cod_start[a] = bs.codomain.size();
    const auto& arrow = q.arrow(a);
    for (std::size_t i = 0; i < alpha[arrow.tail]; ++i) {
      bs.codomain.push_back(Slot{a, i, off, beta[arrow.head]});
      off += beta[arrow.head];
    }
  }
  const std::size_t rows = bs.codomain_dim();
  const std::size_t cols = bs.domain_dim();

  std::vector<Matrix<F>> gens;
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    const auto& arrow = q.arrow(a);
    const auto id = Matrix<F>::identity(field, beta[arrow.head]);
    // V(a) = E_kl: column l of phi(ha) V(a) is column k of phi(ha).
    for (std::size_t k = 0; k < alpha[arrow.head]; ++k) {
      for (std::size_t l = 0; l < alpha[arrow.tail]; ++l) {
        Matrix<F> g(field, rows, cols);
        const auto& cs = bs.codomain[cod_start[a] + l];
        const auto& ds = bs.domain[dom_start[arrow.head] + k];
        g.set_block(cs.offset, ds.offset, id);
        gens.push_back(std::move(g));
        bs.generators.push_back(GeneratorLabel{cod_start[a] + l, dom_start[arrow.head] + k, std::nullopt,
                                               arrow.name + ": E_" + std::to_string(k) + std::to_string(l)});
      }
    }
  }
  const std::size_t units = gens.size();
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    const auto& arrow = q.arrow(a);
    if (alpha[arrow.tail] == 0) continue;
    const auto neg = w.map(a).scaled(field.from_int(-1));
    Matrix<F> g(field, rows, cols);
    for (std::size_t i = 0; i < alpha[arrow.tail]; ++i) {
      g.set_block(bs.codomain[cod_start[a] + i].offset, bs.domain[dom_start[arrow.tail] + i].offset, neg);
    }
    gens.push_back(std::move(g));
    bs.generators.push_back(GeneratorLabel{std::nullopt, std::nullopt, std::nullopt, arrow.name + ": -W(a) phi(ta)"});
  }
  return HomMapSpace<F>{alpha, MatrixSpace<F>(field, rows, cols, std::move(gens)).with_block(std::move(bs)), units};
}

template <Field F>
HomExtResult<F> nchom_ncext(const DimensionVector& alpha, const Representation<F>& w, const NcrkConfig& cfg) {
  const auto hs = build_hom_space(alpha, w);
  const auto& space = hs.space;
  const auto res = ncrk(space, cfg);
  const auto total = static_cast<std::int64_t>(space.cols());
  const std::int64_t hom = total - static_cast<std::int64_t>(res.rank);
  const std::int64_t euler = euler_form(w.quiver(), alpha, w.dims());
  const std::int64_t ext = hom - euler;

  // W'(x) for alpha(x) > 0 from the column slots of the minimal shrunk
  // subspace, closed up at the remaining vertices.
  const auto spaces = res.blown_certificate ? saturate_shrunk(res.blown_certificate->u, *space.block(), res.trace.d)
                                            : saturate_shrunk(res.certificate.u, *space.block(), 1);
  std::vector<Subspace<F>> seeds;
  for (std::size_t x = 0; x < w.quiver().vertex_count(); ++x) {
    const auto it = spaces.find(x);
    seeds.push_back(it != spaces.end() ? it->second : Subspace<F>::zero(w.field(), w.dims()[x]));
  }
  auto sub = subrep_closure(w, seeds);
  for (const auto& [x, s] : spaces) {
    if (!(sub.spaces[x] == s)) throw InvariantViolation("hom-space witness is not closed at a vertex with alpha > 0");
  }
  auto factor = factor_dims(w, sub);
  const std::int64_t via_factor = -euler_form(w.quiver(), alpha, factor);
  if (via_factor != ext) {
    throw InvariantViolation("ncext " + std::to_string(ext) + " from the rank disagrees with " +
                             std::to_string(via_factor) + " from the factor representation");
  }
  if (euler_form(w.quiver(), alpha, sub.dims()) != hom) {
    throw InvariantViolation("subrepresentation read off the shrunk subspace does not attain nchom");
  }
  return HomExtResult<F>{hom, ext, euler, std::move(sub), std::move(factor), res.certificate, res.trace};
}

Weight source_weight(const Quiver& q, const DimensionVector& beta) {
  check_alpha(beta, q);
  std::vector<std::int64_t> s(q.vertex_count(), 0);
  for (std::size_t x = 0; x < q.vertex_count(); ++x) s[x] = -static_cast<std::int64_t>(beta[x]);
  for (const auto& a : q.arrows()) s[a.tail] += static_cast<std::int64_t>(beta[a.head]);
  return Weight(std::move(s));
}

template <Field F>
HomExtResult<F> ncext_fixed_source_full(const Representation<F>& v, const DimensionVector& beta,
                                        const NcrkConfig& cfg) {
  const auto sigma = source_weight(v.quiver(), beta);
  auto report = optimal_witness(v, sigma, cfg);
  const std::int64_t euler = euler_form(v.quiver(), v.dims(), beta);
  const std::int64_t ext = report.discrepancy;
  if (-euler_form(v.quiver(), report.witness.dims(), beta) != ext) {
    throw InvariantViolation("source-fixed witness does not attain the discrepancy");
  }
  return HomExtResult<F>{ext + euler, ext, euler, std::move(report.witness), DimensionVector{},
                         std::move(report.certificate), std::move(report.trace.ncrk)};
}

template <Field F>
HomSample generic_hom_sample(const DimensionVector& alpha, const Representation<F>& w, std::size_t trials,
                             std::uint64_t seed) {
  const auto hs = build_hom_space(alpha, w);
  const auto& space = hs.space;
  const F& field = w.field();
  const std::size_t n = space.generators().size();
  const std::size_t bound = std::min(space.rows(), space.cols());
  trials = std::max<std::size_t>(1, trials);

  HomSample best{space.cols(), space.rows(), 0, false};
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng(derive_seed(seed, t));
    std::vector<Matrix<F>> coeffs;
    for (std::size_t i = 0; i < n; ++i) {
      // Fixed parts always enter with coefficient 1.
      coeffs.push_back(Matrix<F>(field, 1, 1, {i < hs.unit_generators ? field.sample(rng) : field.one()}));
    }
    const auto r = rank(space.element(coeffs));
    best.trials = t + 1;
    const std::size_t hom = space.cols() - r;
    if (hom < best.hom) {
      best.hom = hom;
      best.ext = space.rows() - r;
    }
    if (r == bound) break;
  }
  // A non-generic V is a zero of a nonzero minor of degree <= bound, so each
  // trial misses with probability <= bound / |S|.
  const double miss = static_cast<double>(bound) / static_cast<double>(field.sample_set_size());
  best.certified = space.cols() - best.hom == bound ||
                   std::pow(miss, static_cast<double>(best.trials)) < std::ldexp(1.0, -20);
  return best;
}

#define NCR_INSTANTIATE_HOMEXT(F)                                                                              \
  template HomMapSpace<F> build_hom_space<F>(const DimensionVector&, const Representation<F>&);               \
  template HomExtResult<F> nchom_ncext<F>(const DimensionVector&, const Representation<F>&, const NcrkConfig&); \
  template HomExtResult<F> ncext_fixed_source_full<F>(const Representation<F>&, const DimensionVector&,       \
                                                      const NcrkConfig&);                                     \
  template HomSample generic_hom_sample<F>(const DimensionVector&, const Representation<F>&, std::size_t,      \
                                           std::uint64_t);

NCR_INSTANTIATE_HOMEXT(PrimeField)
NCR_INSTANTIATE_HOMEXT(RationalField)

}  // namespace ncr
