#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "ncr/field.hpp"
#include "ncr/quiver.hpp"

namespace ncr::cli {

using json = nlohmann::ordered_json;

inline constexpr std::uint64_t kDefaultPrime = 1000003;

struct FieldSpec {
  enum class Kind { prime, rationals };
  Kind kind = Kind::prime;
  std::uint64_t p = kDefaultPrime;
  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

using AnyRepresentation = std::variant<Representation<PrimeField>, Representation<RationalField>>;

struct Instance {
  FieldSpec field;
  AnyRepresentation rep;
  std::optional<Weight> weight;
  std::optional<DimensionVector> alpha;

  const Quiver& quiver() const;
  friend bool operator==(const Instance&, const Instance&) = default;
};

// Parses the JSON instance format. Warnings (default field, entries reduced
// mod p) are appended to `warnings`; malformed input throws ValidationError.
Instance parse_instance(const json& doc, std::vector<std::string>* warnings = nullptr);

json serialize_instance(const Instance& inst);

// FNV-1a over the canonical serialization, as 16 hex digits.
std::string instance_digest(const Instance& inst);

template <Field F>
json scalar_to_json(const F& field, const typename F::value_type& v);

template <Field F>
json matrix_to_json(const Matrix<F>& m);

template <Field F>
Matrix<F> matrix_from_json(const F& field, const json& rows, std::size_t r, std::size_t c,
                           std::vector<std::string>* warnings, const std::string& where);

}  // namespace ncr::cli
