#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ncr/matrix.hpp"
#include "ncr/subspace.hpp"

namespace ncr {

struct Arrow {
  std::string name;
  std::size_t tail;
  std::size_t head;
};

struct ArrowSpec {
  std::string name;
  std::string tail;
  std::string head;
};

// Directed multigraph with string vertex ids. Cycles are representable (the
// augmented quiver of the witness algorithm has them) but recorded, so that
// operations needing finitely many paths can refuse them.
class Quiver {
 public:
  Quiver(std::vector<std::string> vertices, const std::vector<ArrowSpec>& arrows);

  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t arrow_count() const { return arrows_.size(); }
  const std::vector<std::string>& vertices() const { return vertices_; }
  const std::vector<Arrow>& arrows() const { return arrows_; }
  const Arrow& arrow(std::size_t a) const { return arrows_[a]; }

  std::size_t vertex_index(std::string_view id) const;
  std::optional<std::size_t> find_vertex(std::string_view id) const;

  bool is_acyclic() const { return topo_order_.has_value(); }
  // Throws UnsupportedInstance for cyclic quivers.
  const std::vector<std::size_t>& topological_order() const;

  // Same vertices plus additional arrows given by index.
  Quiver with_extra_arrows(const std::vector<Arrow>& extra) const;

  friend bool operator==(const Quiver& a, const Quiver& b);

 private:
  Quiver() = default;
  void index_and_sort();

  std::vector<std::string> vertices_;
  std::vector<Arrow> arrows_;
  std::unordered_map<std::string, std::size_t> index_;
  std::optional<std::vector<std::size_t>> topo_order_;
};

// Nonnegative vertex labels (alpha, beta, dim W), aligned with the quiver's
// vertex order.
struct DimensionVector {
  std::vector<std::size_t> values;

  DimensionVector() = default;
  explicit DimensionVector(std::vector<std::size_t> v) : values(std::move(v)) {}
  static DimensionVector zeros(std::size_t n) { return DimensionVector(std::vector<std::size_t>(n, 0)); }

  std::size_t size() const { return values.size(); }
  std::size_t operator[](std::size_t x) const { return values[x]; }
  std::size_t total() const;
  friend bool operator==(const DimensionVector&, const DimensionVector&) = default;
};

// Integer vertex weight sigma, with its positive and negative parts.
struct Weight {
  std::vector<std::int64_t> values;

  Weight() = default;
  explicit Weight(std::vector<std::int64_t> v) : values(std::move(v)) {}

  std::size_t size() const { return values.size(); }
  std::int64_t operator[](std::size_t x) const { return values[x]; }
  std::size_t plus(std::size_t x) const { return values[x] > 0 ? static_cast<std::size_t>(values[x]) : 0; }
  std::size_t minus(std::size_t x) const { return values[x] < 0 ? static_cast<std::size_t>(-values[x]) : 0; }
  friend bool operator==(const Weight&, const Weight&) = default;
};

// <a, b> = sum_x a(x) b(x) - sum_arrows a(ta) b(ha).
std::int64_t euler_form(const Quiver& q, const DimensionVector& a, const DimensionVector& b);

// sigma(d) = sum_x sigma(x) d(x).
std::int64_t sigma_value(const Weight& sigma, const DimensionVector& d);

// Arrow sequence from source to target; empty for the trivial path e_x.
struct Path {
  std::size_t source;
  std::size_t target;
  std::vector<std::size_t> arrows;  // first arrow applied first
};

template <Field F>
class Representation {
 public:
  using value_type = typename F::value_type;

  // maps[a] must be dims(head) x dims(tail).
  Representation(F field, Quiver quiver, DimensionVector dims, std::vector<Matrix<F>> maps);

  // Zero maps everywhere.
  static Representation zero_maps(F field, Quiver quiver, DimensionVector dims);

  const F& field() const { return field_; }
  const Quiver& quiver() const { return quiver_; }
  const DimensionVector& dims() const { return dims_; }
  const std::vector<Matrix<F>>& maps() const { return maps_; }
  const Matrix<F>& map(std::size_t a) const { return maps_[a]; }

  // W(p) = W(a_j) ... W(a_1); identity for the trivial path.
  Matrix<F> path_matrix(const Path& p) const;

  friend bool operator==(const Representation& a, const Representation& b) {
    return a.field_ == b.field_ && a.quiver_ == b.quiver_ && a.dims_ == b.dims_ && a.maps_ == b.maps_;
  }

 private:
  F field_;
  Quiver quiver_;
  DimensionVector dims_;
  std::vector<Matrix<F>> maps_;
};

// One subspace per vertex of the parent representation.
template <Field F>
struct Subrepresentation {
  std::vector<Subspace<F>> spaces;

  DimensionVector dims() const;
  friend bool operator==(const Subrepresentation&, const Subrepresentation&) = default;
};

template <Field F>
Subrepresentation<F> zero_subrep(const Representation<F>& w);

template <Field F>
Subrepresentation<F> full_subrep(const Representation<F>& w);

// All paths x -> y with their matrices. Requires an acyclic quiver.
template <Field F>
std::vector<std::pair<Path, Matrix<F>>> path_matrices(const Representation<F>& w, std::size_t x,
                                                      std::size_t y);

// True iff every arrow maps spaces[tail] into spaces[head].
template <Field F>
bool is_subrep(const Representation<F>& w, const std::vector<Subspace<F>>& spaces);

struct ClosureStats {
  std::size_t sweeps = 0;          // outer sweeps executed
  std::size_t growing_sweeps = 0;  // sweeps that enlarged some vertex space
};

// Smallest subrepresentation containing every seed: sweeps of
// W'(ha) += W(a) W'(ta) over all arrows, at most N = sum(dims) of them, with
// an early exit after a sweep that changes nothing. Does not need
// acyclicity.
template <Field F>
Subrepresentation<F> subrep_closure(const Representation<F>& w, const std::vector<Subspace<F>>& seeds,
                                    ClosureStats* stats = nullptr);

// dims(w) - dims(sub); throws ValidationError if sub is not a subrepresentation.
template <Field F>
DimensionVector factor_dims(const Representation<F>& w, const Subrepresentation<F>& sub);

// Vertex-wise intersection / sum.
template <Field F>
Subrepresentation<F> subrep_meet(const Subrepresentation<F>& a, const Subrepresentation<F>& b);
template <Field F>
Subrepresentation<F> subrep_join(const Subrepresentation<F>& a, const Subrepresentation<F>& b);

// Vertex-wise containment a <= b.
template <Field F>
bool subrep_contained(const Subrepresentation<F>& a, const Subrepresentation<F>& b);

}  // namespace ncr
