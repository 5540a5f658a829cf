#include "ncr/quiver.hpp"

#include <algorithm>
#include <numeric>

namespace ncr {

Quiver::Quiver(std::vector<std::string> vertices, const std::vector<ArrowSpec>& arrows)
    : vertices_(std::move(vertices)) {
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (!index_.emplace(vertices_[i], i).second) {
      throw ValidationError("duplicate vertex id '" + vertices_[i] + "'");
    }
  }
  arrows_.reserve(arrows.size());
  std::unordered_map<std::string, std::size_t> names;
  for (const auto& a : arrows) {
    if (!names.emplace(a.name, names.size()).second) throw ValidationError("duplicate arrow name '" + a.name + "'");
    auto t = find_vertex(a.tail);
    auto h = find_vertex(a.head);
    if (!t || !h) {
      throw ValidationError("arrow '" + a.name + "' references unknown vertex '" + (t ? a.head : a.tail) + "'");
    }
    arrows_.push_back(Arrow{a.name, *t, *h});
  }
  index_and_sort();
}

void Quiver::index_and_sort() {
  // Kahn's algorithm; smallest available index first for a stable order.
  const std::size_t n = vertices_.size();
  std::vector<std::size_t> indegree(n, 0);
  for (const auto& a : arrows_) ++indegree[a.head];
  std::vector<std::size_t> order;
  std::vector<std::size_t> ready;
  for (std::size_t v = 0; v < n; ++v) {
    if (indegree[v] == 0) ready.push_back(v);
  }
  while (!ready.empty()) {
    auto it = std::min_element(ready.begin(), ready.end());
    const std::size_t v = *it;
    ready.erase(it);
    order.push_back(v);
    for (const auto& a : arrows_) {
      if (a.tail == v && --indegree[a.head] == 0) ready.push_back(a.head);
    }
  }
  if (order.size() == n) {
    topo_order_ = std::move(order);
  } else {
    topo_order_.reset();
  }
}

std::size_t Quiver::vertex_index(std::string_view id) const {
  auto v = find_vertex(id);
  if (!v) throw ValidationError("unknown vertex '" + std::string(id) + "'");
  return *v;
}

std::optional<std::size_t> Quiver::find_vertex(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

const std::vector<std::size_t>& Quiver::topological_order() const {
  if (!topo_order_) throw UnsupportedInstance("quiver has an oriented cycle");
  return *topo_order_;
}

Quiver Quiver::with_extra_arrows(const std::vector<Arrow>& extra) const {
  Quiver q = *this;
  for (const auto& a : extra) {
    if (a.tail >= vertices_.size() || a.head >= vertices_.size()) {
      throw ValidationError("extra arrow '" + a.name + "' has an out-of-range endpoint");
    }
    q.arrows_.push_back(a);
  }
  q.index_and_sort();
  return q;
}

bool operator==(const Quiver& a, const Quiver& b) {
  if (a.vertices_ != b.vertices_ || a.arrows_.size() != b.arrows_.size()) return false;
  for (std::size_t i = 0; i < a.arrows_.size(); ++i) {
    const auto& x = a.arrows_[i];
    const auto& y = b.arrows_[i];
    if (x.name != y.name || x.tail != y.tail || x.head != y.head) return false;
  }
  return true;
}

std::size_t DimensionVector::total() const { return std::accumulate(values.begin(), values.end(), std::size_t{0}); }

std::int64_t euler_form(const Quiver& q, const DimensionVector& a, const DimensionVector& b) {
  if (a.size() != q.vertex_count() || b.size() != q.vertex_count()) {
    throw DimensionError("euler_form: dimension vectors must cover every vertex");
  }
  std::int64_t value = 0;
  for (std::size_t x = 0; x < q.vertex_count(); ++x) value += static_cast<std::int64_t>(a[x] * b[x]);
  for (const auto& arrow : q.arrows()) value -= static_cast<std::int64_t>(a[arrow.tail] * b[arrow.head]);
  return value;
}

std::int64_t sigma_value(const Weight& sigma, const DimensionVector& d) {
  if (sigma.size() != d.size()) throw DimensionError("sigma_value: weight and dimension vector differ in length");
  std::int64_t value = 0;
  for (std::size_t x = 0; x < d.size(); ++x) value += sigma[x] * static_cast<std::int64_t>(d[x]);
  return value;
}

template <Field F>
Representation<F>::Representation(F field, Quiver quiver, DimensionVector dims, std::vector<Matrix<F>> maps)
    : field_(std::move(field)), quiver_(std::move(quiver)), dims_(std::move(dims)), maps_(std::move(maps)) {
  if (dims_.size() != quiver_.vertex_count()) {
    throw ValidationError("representation dims cover " + std::to_string(dims_.size()) + " vertices, quiver has " +
                          std::to_string(quiver_.vertex_count()));
  }
  if (maps_.size() != quiver_.arrow_count()) {
    throw ValidationError("representation has " + std::to_string(maps_.size()) + " maps for " +
                          std::to_string(quiver_.arrow_count()) + " arrows");
  }
  for (std::size_t a = 0; a < maps_.size(); ++a) {
    const auto& arrow = quiver_.arrow(a);
    if (maps_[a].rows() != dims_[arrow.head] || maps_[a].cols() != dims_[arrow.tail]) {
      throw ValidationError("map of arrow '" + arrow.name + "' is " + maps_[a].shape() + ", expected " +
                            std::to_string(dims_[arrow.head]) + "x" + std::to_string(dims_[arrow.tail]));
    }
    if (!(maps_[a].field() == field_)) throw ValidationError("map of arrow '" + arrow.name + "' uses another field");
  }
}

template <Field F>
Representation<F> Representation<F>::zero_maps(F field, Quiver quiver, DimensionVector dims) {
  std::vector<Matrix<F>> maps;
  for (const auto& a : quiver.arrows()) maps.emplace_back(field, dims[a.head], dims[a.tail]);
  return Representation(std::move(field), std::move(quiver), std::move(dims), std::move(maps));
}

template <Field F>
Matrix<F> Representation<F>::path_matrix(const Path& p) const {
  Matrix<F> m = Matrix<F>::identity(field_, dims_[p.source]);
  for (auto a : p.arrows) m = maps_[a] * m;
  return m;
}

template <Field F>
DimensionVector Subrepresentation<F>::dims() const {
  DimensionVector d = DimensionVector::zeros(spaces.size());
  for (std::size_t x = 0; x < spaces.size(); ++x) d.values[x] = spaces[x].dim();
  return d;
}

template <Field F>
Subrepresentation<F> zero_subrep(const Representation<F>& w) {
  Subrepresentation<F> s;
  for (auto n : w.dims().values) s.spaces.push_back(Subspace<F>::zero(w.field(), n));
  return s;
}

template <Field F>
Subrepresentation<F> full_subrep(const Representation<F>& w) {
  Subrepresentation<F> s;
  for (auto n : w.dims().values) s.spaces.push_back(Subspace<F>::full(w.field(), n));
  return s;
}

template <Field F>
std::vector<std::pair<Path, Matrix<F>>> path_matrices(const Representation<F>& w, std::size_t x, std::size_t y) {
  const Quiver& q = w.quiver();
  q.topological_order();
  if (x >= q.vertex_count() || y >= q.vertex_count()) throw DimensionError("path_matrices: vertex out of range");

  std::vector<std::pair<Path, Matrix<F>>> out;
  // Depth-first over arrow sequences; terminates because the quiver is acyclic.
  struct Frame {
    Path path;
    Matrix<F> matrix;
  };
  std::vector<Frame> stack;
  stack.push_back(Frame{Path{x, x, {}}, Matrix<F>::identity(w.field(), w.dims()[x])});
  while (!stack.empty()) {
    Frame top = std::move(stack.back());
    stack.pop_back();
    if (top.path.target == y) out.emplace_back(top.path, top.matrix);
    // Push in reverse so that paths come out in arrow-index order.
    for (std::size_t a = q.arrow_count(); a-- > 0;) {
      const auto& arrow = q.arrow(a);
      if (arrow.tail != top.path.target) continue;
      Path next = top.path;
      next.arrows.push_back(a);
      next.target = arrow.head;
      stack.push_back(Frame{std::move(next), w.map(a) * top.matrix});
    }
  }
  return out;
}

template <Field F>
bool is_subrep(const Representation<F>& w, const std::vector<Subspace<F>>& spaces) {
  const Quiver& q = w.quiver();
  if (spaces.size() != q.vertex_count()) throw DimensionError("is_subrep: one subspace per vertex required");
  for (std::size_t x = 0; x < spaces.size(); ++x) {
    if (spaces[x].ambient_dim() != w.dims()[x]) throw DimensionError("is_subrep: subspace ambient mismatch");
  }
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    const auto& arrow = q.arrow(a);
    if (!spaces[arrow.head].contains(apply_image(w.map(a), spaces[arrow.tail]))) return false;
  }
  return true;
}

template <Field F>
Subrepresentation<F> subrep_closure(const Representation<F>& w, const std::vector<Subspace<F>>& seeds,
                                    ClosureStats* stats) {
  const Quiver& q = w.quiver();
  if (seeds.size() != q.vertex_count()) throw DimensionError("subrep_closure: one seed per vertex required");
  Subrepresentation<F> current;
  current.spaces = seeds;
  for (std::size_t x = 0; x < seeds.size(); ++x) {
    if (seeds[x].ambient_dim() != w.dims()[x]) throw DimensionError("subrep_closure: seed ambient mismatch");
  }
  const std::size_t bound = w.dims().total();
  ClosureStats local;
  for (std::size_t sweep = 0; sweep < bound; ++sweep) {
    bool changed = false;
    for (std::size_t a = 0; a < q.arrow_count(); ++a) {
      const auto& arrow = q.arrow(a);
      auto pushed = apply_image(w.map(a), current.spaces[arrow.tail]);
      if (current.spaces[arrow.head].contains(pushed)) continue;
      current.spaces[arrow.head] = subspace_sum(current.spaces[arrow.head], pushed);
      changed = true;
    }
    ++local.sweeps;
    if (!changed) break;
    ++local.growing_sweeps;
  }
  if (stats) *stats = local;
  return current;
}

template <Field F>
DimensionVector factor_dims(const Representation<F>& w, const Subrepresentation<F>& sub) {
  if (!is_subrep(w, sub.spaces)) throw ValidationError("factor_dims: not a subrepresentation");
  DimensionVector d = w.dims();
  for (std::size_t x = 0; x < d.size(); ++x) d.values[x] -= sub.spaces[x].dim();
  return d;
}

template <Field F>
Subrepresentation<F> subrep_meet(const Subrepresentation<F>& a, const Subrepresentation<F>& b) {
  if (a.spaces.size() != b.spaces.size()) throw DimensionError("subrep_meet: vertex count mismatch");
  Subrepresentation<F> r;
  for (std::size_t x = 0; x < a.spaces.size(); ++x) r.spaces.push_back(subspace_intersect(a.spaces[x], b.spaces[x]));
  return r;
}

template <Field F>
Subrepresentation<F> subrep_join(const Subrepresentation<F>& a, const Subrepresentation<F>& b) {
  if (a.spaces.size() != b.spaces.size()) throw DimensionError("subrep_join: vertex count mismatch");
  Subrepresentation<F> r;
  for (std::size_t x = 0; x < a.spaces.size(); ++x) r.spaces.push_back(subspace_sum(a.spaces[x], b.spaces[x]));
  return r;
}

template <Field F>
bool subrep_contained(const Subrepresentation<F>& a, const Subrepresentation<F>& b) {
  if (a.spaces.size() != b.spaces.size()) throw DimensionError("subrep_contained: vertex count mismatch");
  for (std::size_t x = 0; x < a.spaces.size(); ++x) {
    if (!b.spaces[x].contains(a.spaces[x])) return false;
  }
  return true;
}

#define NCR_INSTANTIATE_QUIVER(F)                                                                          \
  template class Representation<F>;                                                                        \
  template struct Subrepresentation<F>;                                                                    \
  template Subrepresentation<F> zero_subrep<F>(const Representation<F>&);                                  \
  template Subrepresentation<F> full_subrep<F>(const Representation<F>&);                                  \
  template std::vector<std::pair<Path, Matrix<F>>> path_matrices<F>(const Representation<F>&, std::size_t, \
                                                                     std::size_t);                         \
  template bool is_subrep<F>(const Representation<F>&, const std::vector<Subspace<F>>&);                   \
  template Subrepresentation<F> subrep_closure<F>(const Representation<F>&, const std::vector<Subspace<F>>&, \
                                                  ClosureStats*);                                          \
  template DimensionVector factor_dims<F>(const Representation<F>&, const Subrepresentation<F>&);          \
  template Subrepresentation<F> subrep_meet<F>(const Subrepresentation<F>&, const Subrepresentation<F>&);  \
  template Subrepresentation<F> subrep_join<F>(const Subrepresentation<F>&, const Subrepresentation<F>&);  \
  template bool subrep_contained<F>(const Subrepresentation<F>&, const Subrepresentation<F>&);

NCR_INSTANTIATE_QUIVER(PrimeField)
NCR_INSTANTIATE_QUIVER(RationalField)

}  // namespace ncr
