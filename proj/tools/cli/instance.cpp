#include "instance.hpp"

#include <cstdio>

#include "ncr/error.hpp"

namespace ncr::cli {

namespace {

[[noreturn]] void bad(const std::string& what) { throw ValidationError("instance: " + what); }

const json& require(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) bad(where + " is missing \"" + key + "\"");
  return obj.at(key);
}

std::string require_string(const json& v, const std::string& where) {
  if (!v.is_string()) bad(where + " must be a string");
  return v.get<std::string>();
}

std::int64_t require_int(const json& v, const std::string& where) {
  if (v.is_number_unsigned()) {
    const auto u = v.get<std::uint64_t>();
    if (u > static_cast<std::uint64_t>(INT64_MAX)) bad(where + " is out of range");
    return static_cast<std::int64_t>(u);
  }
  if (!v.is_number_integer()) bad(where + " must be an integer");
  return v.get<std::int64_t>();
}

FieldSpec parse_field(const json& doc, std::vector<std::string>* warnings) {
  FieldSpec spec;
  if (!doc.contains("field")) {
    if (warnings) warnings->push_back("no field given; using F_" + std::to_string(kDefaultPrime));
    return spec;
  }
  const json& f = doc.at("field");
  if (f.is_number_integer()) {
    const auto p = require_int(f, "field");
    if (p < 2) bad("field modulus must be a prime");
    spec.p = static_cast<std::uint64_t>(p);
  } else if (f.is_string()) {
    const auto s = f.get<std::string>();
    if (s == "Q" || s == "rationals") {
      spec.kind = FieldSpec::Kind::rationals;
    } else {
      bad("unknown field \"" + s + "\"");
    }
  } else if (f.is_object()) {
    const auto kind = require_string(require(f, "kind", "field"), "field.kind");
    if (kind == "rationals") {
      spec.kind = FieldSpec::Kind::rationals;
    } else if (kind == "prime") {
      const auto p = require_int(require(f, "p", "field"), "field.p");
      if (p < 2) bad("field modulus must be a prime");
      spec.p = static_cast<std::uint64_t>(p);
    } else {
      bad("field.kind must be \"prime\" or \"rationals\"");
    }
  } else {
    bad("field must be an integer, a string or an object");
  }
  if (spec.kind == FieldSpec::Kind::prime) PrimeField check(spec.p);  // throws if not prime
  return spec;
}

Quiver parse_quiver(const json& doc) {
  const json& q = require(doc, "quiver", "instance");
  const json& vs = require(q, "vertices", "quiver");
  if (!vs.is_array()) bad("quiver.vertices must be an array");
  std::vector<std::string> vertices;
  for (const auto& v : vs) vertices.push_back(require_string(v, "vertex id"));
  std::vector<ArrowSpec> arrows;
  if (q.contains("arrows")) {
    const json& as = q.at("arrows");
    if (!as.is_array()) bad("quiver.arrows must be an array");
    for (const auto& a : as) {
      arrows.push_back(ArrowSpec{require_string(require(a, "name", "arrow"), "arrow name"),
                                 require_string(require(a, "tail", "arrow"), "arrow tail"),
                                 require_string(require(a, "head", "arrow"), "arrow head")});
    }
  }
  return Quiver(std::move(vertices), arrows);
}

// Vertex-indexed integers, as an object keyed by vertex id or a list in
// vertex order.
std::vector<std::int64_t> parse_vertex_ints(const json& v, const Quiver& q, const std::string& where) {
  std::vector<std::int64_t> out(q.vertex_count(), 0);
  if (v.is_array()) {
    if (v.size() != q.vertex_count()) bad(where + " has " + std::to_string(v.size()) + " entries, expected " +
                                          std::to_string(q.vertex_count()));
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = require_int(v[i], where);
  } else if (v.is_object()) {
    for (auto it = v.begin(); it != v.end(); ++it) {
      const auto x = q.find_vertex(it.key());
      if (!x) bad(where + " names unknown vertex \"" + it.key() + "\"");
      out[*x] = require_int(it.value(), where + "." + it.key());
    }
    if (v.size() != q.vertex_count()) bad(where + " must give a value for every vertex");
  } else {
    bad(where + " must be an object or an array");
  }
  return out;
}

DimensionVector parse_dims(const json& v, const Quiver& q, const std::string& where) {
  std::vector<std::size_t> out;
  for (auto k : parse_vertex_ints(v, q, where)) {
    if (k < 0) bad(where + " entries must be nonnegative");
    out.push_back(static_cast<std::size_t>(k));
  }
  return DimensionVector(std::move(out));
}

json vertex_object(const Quiver& q, const std::vector<std::int64_t>& values) {
  json o = json::object();
  for (std::size_t x = 0; x < q.vertex_count(); ++x) o[q.vertices()[x]] = values[x];
  return o;
}

json dims_object(const Quiver& q, const DimensionVector& d) {
  std::vector<std::int64_t> v(d.values.begin(), d.values.end());
  return vertex_object(q, v);
}

template <Field F>
typename F::value_type parse_scalar(const F& field, const json& v, std::vector<std::string>* warnings,
                                    const std::string& where) {
  if constexpr (std::is_same_v<F, PrimeField>) {
    const auto k = require_int(v, where);
    if (warnings && (k < 0 || static_cast<std::uint64_t>(k) >= field.modulus())) {
      warnings->push_back(where + ": entry " + std::to_string(k) + " reduced mod " + std::to_string(field.modulus()));
    }
    return field.from_int(k);
  } else {
    if (v.is_string()) return field.parse(v.get<std::string>());
    return field.from_int(require_int(v, where));
  }
}

template <Field F>
Representation<F> parse_rep(const F& field, const Quiver& q, const json& doc, std::vector<std::string>* warnings) {
  const json& r = require(doc, "representation", "instance");
  const auto dims = parse_dims(require(r, "dims", "representation"), q, "representation.dims");
  std::vector<Matrix<F>> maps;
  const json empty = json::object();
  const json& ms = r.contains("maps") ? r.at("maps") : empty;
  if (!ms.is_object()) bad("representation.maps must be an object keyed by arrow name");
  for (const auto& a : q.arrows()) {
    const std::size_t rows = dims[a.head];
    const std::size_t cols = dims[a.tail];
    if (!ms.contains(a.name)) {
      if (rows * cols != 0) bad("representation.maps is missing arrow \"" + a.name + "\"");
      maps.emplace_back(field, rows, cols);
      continue;
    }
    maps.push_back(matrix_from_json(field, ms.at(a.name), rows, cols, warnings, "maps." + a.name));
  }
  for (auto it = ms.begin(); it != ms.end(); ++it) {
    bool known = false;
    for (const auto& a : q.arrows()) known = known || a.name == it.key();
    if (!known) bad("representation.maps names unknown arrow \"" + it.key() + "\"");
  }
  return Representation<F>(field, q, dims, std::move(maps));
}

}  // namespace

template <Field F>
json scalar_to_json(const F& field, const typename F::value_type& v) {
  if constexpr (std::is_same_v<F, PrimeField>) {
    (void)field;
    return v;
  } else {
    if (v.get_den() == 1 && v.get_num().fits_slong_p()) return static_cast<std::int64_t>(v.get_num().get_si());
    return v.get_str();
  }
}

template <Field F>
json matrix_to_json(const Matrix<F>& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(scalar_to_json(m.field(), m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

template <Field F>
Matrix<F> matrix_from_json(const F& field, const json& v, std::size_t r, std::size_t c,
                           std::vector<std::string>* warnings, const std::string& where) {
  if (!v.is_array()) bad(where + " must be an array");
  Matrix<F> m(field, r, c);
  // Either nested rows or one flat row-major list.
  const bool nested = !v.empty() && v[0].is_array();
  if (nested || (v.empty() && r > 0 && c == 0)) {
    if (v.size() != r) bad(where + " has " + std::to_string(v.size()) + " rows, expected " + std::to_string(r));
    for (std::size_t i = 0; i < r; ++i) {
      if (!v[i].is_array() || v[i].size() != c) bad(where + " row " + std::to_string(i) + " must have " +
                                                    std::to_string(c) + " entries");
      for (std::size_t j = 0; j < c; ++j) m(i, j) = parse_scalar(field, v[i][j], warnings, where);
    }
  } else {
    if (v.size() != r * c) bad(where + " has " + std::to_string(v.size()) + " entries, expected " +
                               std::to_string(r) + "x" + std::to_string(c));
    for (std::size_t k = 0; k < v.size(); ++k) m(k / c, k % c) = parse_scalar(field, v[k], warnings, where);
  }
  return m;
}

const Quiver& Instance::quiver() const {
  return std::visit([](const auto& r) -> const Quiver& { return r.quiver(); }, rep);
}

Instance parse_instance(const json& doc, std::vector<std::string>* warnings) {
  if (!doc.is_object()) bad("top level must be an object");
  const FieldSpec spec = parse_field(doc, warnings);
  const Quiver q = parse_quiver(doc);
  std::optional<Weight> weight;
  if (doc.contains("weight") && !doc.at("weight").is_null()) weight = Weight(parse_vertex_ints(doc.at("weight"), q, "weight"));
  std::optional<DimensionVector> alpha;
  if (doc.contains("alpha") && !doc.at("alpha").is_null()) alpha = parse_dims(doc.at("alpha"), q, "alpha");
  if (spec.kind == FieldSpec::Kind::prime) {
    return Instance{spec, parse_rep(PrimeField(spec.p), q, doc, warnings), weight, alpha};
  }
  return Instance{spec, parse_rep(RationalField{}, q, doc, warnings), weight, alpha};
}

json serialize_instance(const Instance& inst) {
  json doc = json::object();
  if (inst.field.kind == FieldSpec::Kind::prime) {
    doc["field"] = {{"kind", "prime"}, {"p", inst.field.p}};
  } else {
    doc["field"] = {{"kind", "rationals"}};
  }
  const Quiver& q = inst.quiver();
  json arrows = json::array();
  for (const auto& a : q.arrows()) {
    arrows.push_back({{"name", a.name}, {"tail", q.vertices()[a.tail]}, {"head", q.vertices()[a.head]}});
  }
  doc["quiver"] = {{"vertices", q.vertices()}, {"arrows", arrows}};
  std::visit(
      [&](const auto& r) {
        json maps = json::object();
        for (std::size_t a = 0; a < q.arrow_count(); ++a) maps[q.arrow(a).name] = matrix_to_json(r.map(a));
        doc["representation"] = {{"dims", dims_object(q, r.dims())}, {"maps", maps}};
      },
      inst.rep);
  if (inst.weight) doc["weight"] = vertex_object(q, inst.weight->values);
  if (inst.alpha) doc["alpha"] = dims_object(q, *inst.alpha);
  return doc;
}

std::string instance_digest(const Instance& inst) {
  const std::string text = serialize_instance(inst).dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

template json scalar_to_json<PrimeField>(const PrimeField&, const std::uint64_t&);
template json scalar_to_json<RationalField>(const RationalField&, const mpq_class&);
template json matrix_to_json<PrimeField>(const Matrix<PrimeField>&);
template json matrix_to_json<RationalField>(const Matrix<RationalField>&);
template Matrix<PrimeField> matrix_from_json<PrimeField>(const PrimeField&, const json&, std::size_t, std::size_t,
                                                         std::vector<std::string>*, const std::string&);
template Matrix<RationalField> matrix_from_json<RationalField>(const RationalField&, const json&, std::size_t,
                                                               std::size_t, std::vector<std::string>*,
                                                               const std::string&);

}  // namespace ncr::cli
