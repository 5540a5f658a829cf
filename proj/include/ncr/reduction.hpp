#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ncr/blocks.hpp"
#include "ncr/matspace.hpp"
#include "ncr/quiver.hpp"

namespace ncr {

// Kronecker-style reduction of (W, sigma): block matrices from
// (+)_x W(x)^{sigma+(x)} to (+)_y W(y)^{sigma-(y)}, one generator per
// (domain copy of x, codomain copy of y, path x -> y) carrying W(path).
template <Field F>
MatrixSpace<F> build_sigma_space(const Representation<F>& w, const Weight& sigma);

// Direct sum of the given vertex subspaces over the listed slots.
template <Field F>
Subspace<F> slot_product(const F& field, const std::vector<Slot>& slots,
                         const std::map<std::size_t, Subspace<F>>& spaces);

// Sum over the slots of vertex x of the slot projections of u.
template <Field F>
std::map<std::size_t, Subspace<F>> slot_projections(const Subspace<F>& u, const std::vector<Slot>& slots);

struct SaturationStats {
  std::size_t passes = 0;  // intersection passes needed (0 if u was already saturated)
};

// Reads W'(x) off a shrunk subspace u of the d-th blow-up of bs's domain.
// If u is not already a direct sum of copies of per-vertex subspaces, it is
// replaced by its intersection with its translates under copy swaps, copy
// transvections, vertex dilations and path transfers until it is.
template <Field F>
std::map<std::size_t, Subspace<F>> saturate_shrunk(const Subspace<F>& u, const BlockStructure<F>& bs, std::size_t d,
                                                   SaturationStats* stats = nullptr);

struct WitnessTrace {
  std::string algorithm;
  NcrkTrace ncrk;
  std::size_t closure_sweeps = 0;
  std::size_t saturation_passes = 0;
  std::size_t augmented_arrows = 0;
};

template <Field F>
struct WitnessReport {
  std::int64_t discrepancy;
  Subrepresentation<F> witness;
  bool minimal;
  ShrunkCertificate<F> certificate;  // in the reduced space (d = 1)
  bool semistable;
  WitnessTrace trace;
};

// Minimal optimal sigma-witness via reduction -> ncrk -> saturation ->
// closure.
template <Field F>
WitnessReport<F> optimal_witness(const Representation<F>& w, const Weight& sigma, const NcrkConfig& cfg = {});

// Minimal optimal sigma-witness via the augmented quiver: pseudo-inverse
// blocks of a random blow-up element become extra arrows y -> x, the kernel
// projections seed the positive vertices, and the closure is the witness.
template <Field F>
WitnessReport<F> augmented_witness(const Representation<F>& w, const Weight& sigma, const NcrkConfig& cfg = {});

// Blow-up factor for the augmented pipeline: max(1, N - 1) with N the total
// dimension, lifted when the field has at most N elements.
NcrkTrace plan_augmented_blowup(std::size_t total_dim, std::uint64_t sample_set_size,
                                std::optional<std::size_t> override_d);

template <Field F>
struct WitnessLattice {
  Subrepresentation<F> meet;
  Subrepresentation<F> join;
};

// Vertex-wise intersection and sum of two optimal witnesses; both results
// are re-verified as optimal witnesses.
template <Field F>
WitnessLattice<F> witness_lattice_ops(const Representation<F>& w, const Weight& sigma, const WitnessReport<F>& a,
                                      const WitnessReport<F>& b);

// True iff sub is a subrepresentation of w with sigma(dim sub) == c.
template <Field F>
bool is_sigma_witness(const Representation<F>& w, const Weight& sigma, const Subrepresentation<F>& sub,
                      std::int64_t c);

}  // namespace ncr
