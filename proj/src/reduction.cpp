#include "ncr/reduction.hpp"

#include <algorithm>
#include <functional>

#include "ncr/rng.hpp"

namespace ncr {

namespace {

template <Field F>
std::map<std::size_t, std::vector<Slot>> slots_by_vertex(const std::vector<Slot>& slots) {
  std::map<std::size_t, std::vector<Slot>> out;
  for (const auto& s : slots) out[s.vertex].push_back(s);
  for (auto& [x, list] : out) {
    std::sort(list.begin(), list.end(), [](const Slot& a, const Slot& b) { return a.copy < b.copy; });
  }
  return out;
}

// Column operations on a row basis; each is an invertible map of the domain.
template <Field F>
using Action = std::function<void(Matrix<F>&)>;

template <Field F>
Action<F> swap_action(Slot a, Slot b) {
  return [a, b](Matrix<F>& m) {
    for (std::size_t r = 0; r < m.rows(); ++r) {
      for (std::size_t t = 0; t < a.size; ++t) std::swap(m(r, a.offset + t), m(r, b.offset + t));
    }
  };
}

template <Field F>
Action<F> add_action(Slot from, Slot to) {
  return [from, to](Matrix<F>& m) {
    const auto& f = m.field();
    for (std::size_t r = 0; r < m.rows(); ++r) {
      for (std::size_t t = 0; t < from.size; ++t) m(r, to.offset + t) = f.add(m(r, to.offset + t), m(r, from.offset + t));
    }
  };
}

template <Field F>
Action<F> scale_action(std::vector<Slot> slots, typename F::value_type s) {
  return [slots = std::move(slots), s](Matrix<F>& m) {
    const auto& f = m.field();
    for (const auto& slot : slots) {
      for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t t = 0; t < slot.size; ++t) m(r, slot.offset + t) = f.mul(m(r, slot.offset + t), s);
      }
    }
  };
}

// Component in `to` gains map * (component in `from`); rows are vectors, so
// the update is v_to += v_from * map^T.
template <Field F>
Action<F> transfer_action(Slot from, Slot to, Matrix<F> map) {
  return [from, to, mt = map.transpose()](Matrix<F>& m) {
    if (m.rows() == 0) return;
    const auto moved = m.block(0, from.offset, m.rows(), from.size) * mt;
    auto target = m.block(0, to.offset, m.rows(), to.size);
    target += moved;
    m.set_block(0, to.offset, target);
  };
}

template <Field F>
Subspace<F> apply_action(const Action<F>& act, const Subspace<F>& u) {
  Matrix<F> b = u.basis();
  act(b);
  return Subspace<F>::row_span(b);
}

template <Field F>
std::vector<Action<F>> saturation_actions(const F& field, const std::vector<Slot>& slots,
                                          const std::vector<SlotTransfer<F>>& transfers) {
  std::vector<Action<F>> acts;
  const auto by_vertex = slots_by_vertex<F>(slots);
  // Adjacent swaps and one transvection generate GL of the copies up to
  // scalars; dilations supply the scalars and split vertices apart.
  for (const auto& [x, list] : by_vertex) {
    for (std::size_t i = 0; i + 1 < list.size(); ++i) acts.push_back(swap_action<F>(list[i], list[i + 1]));
    if (list.size() >= 2) acts.push_back(add_action<F>(list[0], list[1]));
  }
  const auto order = field.order();
  if (!order || *order > 2) {
    for (const auto& [x, list] : by_vertex) acts.push_back(scale_action<F>(list, field.from_int(2)));
  }
  for (const auto& t : transfers) {
    const auto from = by_vertex.find(t.from_vertex);
    const auto to = by_vertex.find(t.to_vertex);
    if (from == by_vertex.end() || to == by_vertex.end()) continue;
    acts.push_back(transfer_action<F>(from->second.front(), to->second.front(), t.map));
  }
  return acts;
}

}  // namespace

template <Field F>
MatrixSpace<F> build_sigma_space(const Representation<F>& w, const Weight& sigma) {
  const Quiver& q = w.quiver();
  if (sigma.size() != q.vertex_count()) {
    throw DimensionError("weight has " + std::to_string(sigma.size()) + " entries, quiver has " +
                         std::to_string(q.vertex_count()) + " vertices");
  }
  q.topological_order();  // throws on cycles
  const auto& dims = w.dims();
  BlockStructure<F> bs;
  std::size_t off = 0;
  for (std::size_t x = 0; x < q.vertex_count(); ++x) {
    for (std::size_t i = 0; i < sigma.plus(x); ++i) {
      bs.domain.push_back(Slot{x, i, off, dims[x]});
      off += dims[x];
    }
  }
  off = 0;
  for (std::size_t y = 0; y < q.vertex_count(); ++y) {
    for (std::size_t j = 0; j < sigma.minus(y); ++j) {
      bs.codomain.push_back(Slot{y, j, off, dims[y]});
      off += dims[y];
    }
  }
  const std::size_t rows = bs.codomain_dim();
  const std::size_t cols = bs.domain_dim();

  std::vector<Matrix<F>> gens;
  for (std::size_t si = 0; si < bs.domain.size(); ++si) {
    const auto& s = bs.domain[si];
    for (std::size_t ti = 0; ti < bs.codomain.size(); ++ti) {
      const auto& t = bs.codomain[ti];
      for (auto& [path, m] : path_matrices(w, s.vertex, t.vertex)) {
        Matrix<F> g(w.field(), rows, cols);
        g.set_block(t.offset, s.offset, m);
        gens.push_back(std::move(g));
        std::string desc = q.vertices()[s.vertex] + "#" + std::to_string(s.copy) + " -> " + q.vertices()[t.vertex] +
                           "#" + std::to_string(t.copy) + " via ";
        if (path.arrows.empty()) {
          desc += "e_" + q.vertices()[s.vertex];
        } else {
          for (std::size_t k = 0; k < path.arrows.size(); ++k) desc += (k ? "." : "") + q.arrow(path.arrows[k]).name;
        }
        bs.generators.push_back(GeneratorLabel{si, ti, path, std::move(desc)});
      }
    }
  }
  for (std::size_t x = 0; x < q.vertex_count(); ++x) {
    if (sigma.plus(x) == 0 || dims[x] == 0) continue;
    for (std::size_t y = 0; y < q.vertex_count(); ++y) {
      if (y == x || sigma.plus(y) == 0 || dims[y] == 0) continue;
      for (auto& [path, m] : path_matrices(w, x, y)) bs.domain_transfers.push_back(SlotTransfer<F>{x, y, m});
    }
  }
  return MatrixSpace<F>(w.field(), rows, cols, std::move(gens)).with_block(std::move(bs));
}

template <Field F>
Subspace<F> slot_product(const F& field, const std::vector<Slot>& slots,
                         const std::map<std::size_t, Subspace<F>>& spaces) {
  const std::size_t n = BlockStructure<F>::total(slots);
  std::size_t count = 0;
  for (const auto& s : slots) {
    const auto it = spaces.find(s.vertex);
    if (it != spaces.end()) count += it->second.dim();
  }
  Matrix<F> rows(field, count, n);
  std::size_t r = 0;
  for (const auto& s : slots) {
    const auto it = spaces.find(s.vertex);
    if (it == spaces.end()) continue;
    if (it->second.ambient_dim() != s.size) throw DimensionError("slot_product: vertex space has wrong ambient");
    rows.set_block(r, s.offset, it->second.basis());
    r += it->second.dim();
  }
  return Subspace<F>::row_span(rows);
}

template <Field F>
std::map<std::size_t, Subspace<F>> slot_projections(const Subspace<F>& u, const std::vector<Slot>& slots) {
  if (u.ambient_dim() != BlockStructure<F>::total(slots)) throw DimensionError("slot_projections: ambient mismatch");
  std::map<std::size_t, Subspace<F>> out;
  for (const auto& [x, list] : slots_by_vertex<F>(slots)) {
    Matrix<F> rows(u.field(), u.dim() * list.size(), list.front().size);
    for (std::size_t i = 0; i < list.size(); ++i) {
      rows.set_block(i * u.dim(), 0, u.basis().block(0, list[i].offset, u.dim(), list[i].size));
    }
    out.emplace(x, Subspace<F>::row_span(rows));
  }
  return out;
}

template <Field F>
std::map<std::size_t, Subspace<F>> saturate_shrunk(const Subspace<F>& u0, const BlockStructure<F>& bs, std::size_t d,
                                                   SaturationStats* stats) {
  const BlockStructure<F> layout = d == 1 ? bs : bs.blown_up(d);
  const auto& slots = layout.domain;
  if (u0.ambient_dim() != layout.domain_dim()) {
    throw DimensionError("saturate_shrunk: subspace lives in F^" + std::to_string(u0.ambient_dim()) +
                         ", layout has dimension " + std::to_string(layout.domain_dim()));
  }
  const F& field = u0.field();
  const auto acts = saturation_actions(field, slots, layout.domain_transfers);
  Subspace<F> u = u0;
  std::size_t passes = 0;
  while (true) {
    auto spaces = slot_projections(u, slots);
    if (slot_product(field, slots, spaces) == u) {
      if (stats) stats->passes = passes;
      return spaces;
    }
    const auto before = u.dim();
    for (const auto& act : acts) u = subspace_intersect(u, apply_action(act, u));
    ++passes;
    if (u.dim() == before) {
      throw InvariantViolation("shrunk subspace is stable under the copy actions but is not a direct sum of copies");
    }
  }
}

NcrkTrace plan_augmented_blowup(std::size_t total_dim, std::uint64_t sample_set_size,
                                std::optional<std::size_t> override_d) {
  return plan_blowup(total_dim, total_dim, sample_set_size, override_d);
}

template <Field F>
bool is_sigma_witness(const Representation<F>& w, const Weight& sigma, const Subrepresentation<F>& sub,
                      std::int64_t c) {
  if (sub.spaces.size() != w.quiver().vertex_count()) return false;
  for (std::size_t x = 0; x < sub.spaces.size(); ++x) {
    if (sub.spaces[x].ambient_dim() != w.dims()[x]) return false;
  }
  return is_subrep(w, sub.spaces) && sigma_value(sigma, sub.dims()) == c;
}

namespace {

template <Field F>
std::vector<Subspace<F>> seeds_from(const Representation<F>& w, const std::map<std::size_t, Subspace<F>>& spaces) {
  std::vector<Subspace<F>> seeds;
  for (std::size_t x = 0; x < w.quiver().vertex_count(); ++x) {
    const auto it = spaces.find(x);
    seeds.push_back(it != spaces.end() ? it->second : Subspace<F>::zero(w.field(), w.dims()[x]));
  }
  return seeds;
}

template <Field F>
void check_positive_unchanged(const Subrepresentation<F>& closed, const std::map<std::size_t, Subspace<F>>& seeds) {
  for (const auto& [x, s] : seeds) {
    if (!(closed.spaces[x] == s)) {
      throw InvariantViolation("closure enlarged the witness at a positive vertex");
    }
  }
}

template <Field F>
ShrunkCertificate<F> reduced_certificate(const MatrixSpace<F>& space, const Subrepresentation<F>& witness) {
  const auto& bs = *space.block();
  std::map<std::size_t, Subspace<F>> spaces;
  for (const auto& s : bs.domain) spaces.emplace(s.vertex, witness.spaces[s.vertex]);
  auto u = slot_product(space.field(), bs.domain, spaces);
  auto img = space_image(space, u);
  const auto c = static_cast<std::int64_t>(u.dim()) - static_cast<std::int64_t>(img.dim());
  return ShrunkCertificate<F>{std::move(u), std::move(img), c, true};
}

}  // namespace

template <Field F>
WitnessReport<F> optimal_witness(const Representation<F>& w, const Weight& sigma, const NcrkConfig& cfg) {
  const auto space = build_sigma_space(w, sigma);
  const auto res = ncrk(space, cfg);
  WitnessTrace trace;
  trace.algorithm = "reduced";
  trace.ncrk = res.trace;

  SaturationStats sat;
  const auto spaces = res.blown_certificate ? saturate_shrunk(res.blown_certificate->u, *space.block(), res.trace.d, &sat)
                                            : saturate_shrunk(res.certificate.u, *space.block(), 1, &sat);
  trace.saturation_passes = sat.passes;

  ClosureStats cs;
  auto witness = subrep_closure(w, seeds_from(w, spaces), &cs);
  trace.closure_sweeps = cs.sweeps;
  check_positive_unchanged(witness, spaces);

  const auto disc = sigma_value(sigma, witness.dims());
  if (disc != res.certificate.c) {
    throw InvariantViolation("witness discrepancy " + std::to_string(disc) + " differs from the shrink " +
                             std::to_string(res.certificate.c));
  }
  auto cert = reduced_certificate(space, witness);
  if (cert.c != disc) throw InvariantViolation("witness does not reproduce the shrunk certificate");
  const bool semistable = sigma_value(sigma, w.dims()) == 0 && disc == 0;
  return WitnessReport<F>{disc, std::move(witness), true, std::move(cert), semistable, std::move(trace)};
}

template <Field F>
WitnessReport<F> augmented_witness(const Representation<F>& w, const Weight& sigma, const NcrkConfig& cfg) {
  const auto space = build_sigma_space(w, sigma);
  const auto& bs = *space.block();
  NcrkTrace plan = plan_augmented_blowup(w.dims().total(), w.field().sample_set_size(), cfg.blowup_d);
  const std::size_t d = plan.d;
  const auto big = blow_up(space, d);
  const auto layout = bs.blown_up(d);
  const Quiver& q = w.quiver();

  const std::size_t attempts = std::max<std::size_t>(1, cfg.max_retries);
  for (std::size_t attempt = 0; attempt < attempts; ++attempt) {
    const std::uint64_t seed = derive_seed(cfg.seed, attempt);
    plan.seeds.push_back(seed);
    plan.attempts = attempt + 1;
    const auto a = random_element(big, seed, plan.field_lift);
    const auto b = pseudo_inverse(a);
    const auto ker = kernel(a);

    // Block (x-slot, y-slot) of the pseudo-inverse becomes an arrow y -> x.
    std::vector<Arrow> extra;
    std::vector<Matrix<F>> maps = w.maps();
    for (const auto& t : layout.codomain) {
      for (const auto& s : layout.domain) {
        auto blk = b.block(s.offset, t.offset, s.size, t.size);
        if (blk.is_zero()) continue;
        extra.push_back(Arrow{"b" + std::to_string(extra.size()), t.vertex, s.vertex});
        maps.push_back(std::move(blk));
      }
    }
    const Representation<F> augmented(w.field(), q.with_extra_arrows(extra), w.dims(), std::move(maps));

    const auto kspaces = slot_projections(ker, layout.domain);
    ClosureStats cs;
    auto closed = subrep_closure(augmented, seeds_from(w, kspaces), &cs);
    Subrepresentation<F> witness{closed.spaces};

    std::map<std::size_t, Subspace<F>> positive;
    for (const auto& [x, s] : kspaces) positive.emplace(x, witness.spaces[x]);
    const auto u = slot_product(w.field(), layout.domain, positive);
    const auto img = space_image(big, u);
    const auto cd = static_cast<std::int64_t>(u.dim()) - static_cast<std::int64_t>(img.dim());
    if (cd != static_cast<std::int64_t>(ker.dim())) continue;  // a was not of maximal rank

    const auto disc = sigma_value(sigma, witness.dims());
    if (disc * static_cast<std::int64_t>(d) != cd || !is_subrep(w, witness.spaces)) {
      throw InvariantViolation("augmented witness does not match the blow-up shrink");
    }
    auto cert = reduced_certificate(space, witness);
    if (cert.c != disc) throw InvariantViolation("augmented witness does not reproduce its discrepancy");

    WitnessTrace trace;
    trace.algorithm = "augmented";
    trace.ncrk = plan;
    trace.closure_sweeps = cs.sweeps;
    trace.augmented_arrows = extra.size();
    const bool semistable = sigma_value(sigma, w.dims()) == 0 && disc == 0;
    return WitnessReport<F>{disc, std::move(witness), true, std::move(cert), semistable, std::move(trace)};
  }
  throw ProbabilisticFailure("augmented pipeline found no maximal-rank element in " + std::to_string(attempts) +
                                 " attempts at blow-up d = " + std::to_string(d),
                             0);
}

template <Field F>
WitnessLattice<F> witness_lattice_ops(const Representation<F>& w, const Weight& sigma, const WitnessReport<F>& a,
                                      const WitnessReport<F>& b) {
  if (a.discrepancy != b.discrepancy) {
    throw PreconditionError("witnesses have different discrepancies (" + std::to_string(a.discrepancy) + " vs " +
                            std::to_string(b.discrepancy) + ")");
  }
  WitnessLattice<F> out{subrep_meet(a.witness, b.witness), subrep_join(a.witness, b.witness)};
  if (!is_sigma_witness(w, sigma, out.meet, a.discrepancy) || !is_sigma_witness(w, sigma, out.join, a.discrepancy)) {
    throw InvariantViolation("meet or join of optimal witnesses is not optimal");
  }
  return out;
}

#define NCR_INSTANTIATE_REDUCTION(F)                                                                              \
  template MatrixSpace<F> build_sigma_space<F>(const Representation<F>&, const Weight&);                          \
  template Subspace<F> slot_product<F>(const F&, const std::vector<Slot>&, const std::map<std::size_t, Subspace<F>>&); \
  template std::map<std::size_t, Subspace<F>> slot_projections<F>(const Subspace<F>&, const std::vector<Slot>&);  \
  template std::map<std::size_t, Subspace<F>> saturate_shrunk<F>(const Subspace<F>&, const BlockStructure<F>&,    \
                                                                 std::size_t, SaturationStats*);                  \
  template bool is_sigma_witness<F>(const Representation<F>&, const Weight&, const Subrepresentation<F>&,         \
                                    std::int64_t);                                                                \
  template WitnessReport<F> optimal_witness<F>(const Representation<F>&, const Weight&, const NcrkConfig&);       \
  template WitnessReport<F> augmented_witness<F>(const Representation<F>&, const Weight&, const NcrkConfig&);     \
  template WitnessLattice<F> witness_lattice_ops<F>(const Representation<F>&, const Weight&, const WitnessReport<F>&, \
                                                    const WitnessReport<F>&);

NCR_INSTANTIATE_REDUCTION(PrimeField)
NCR_INSTANTIATE_REDUCTION(RationalField)

}  // namespace ncr
