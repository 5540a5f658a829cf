#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ncr {

// Base for every error raised by the library. The CLI maps the concrete
// types onto its exit-code contract.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept { return "error"; }
};

// Shape or ambient-dimension mismatch between operands.
class DimensionError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "dimension"; }
};

// Malformed input: bad instance data, unknown ids, non-prime modulus, ...
class ValidationError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "validation"; }
};

// Instance outside what an algorithm supports (e.g. a cyclic quiver
// handed to path enumeration).
class UnsupportedInstance : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "unsupported"; }
};

class PreconditionError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "precondition"; }
};

// Field too small for an algorithm, or a divisibility check that only
// fails when the field is too small.
class ThresholdError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "threshold"; }
};

// Randomized search exhausted its retries without producing a certificate.
class ProbabilisticFailure : public Error {
 public:
  ProbabilisticFailure(const std::string& what, std::size_t rank_lower_bound)
      : Error(what), lower_bound_(rank_lower_bound) {}
  const char* kind() const noexcept override { return "probabilistic"; }
  // Best rank seen among the sampled elements (in base-space units).
  std::size_t rank_lower_bound() const noexcept { return lower_bound_; }

 private:
  std::size_t lower_bound_;
};

// Brute-force enumeration would exceed the work ceiling.
class OracleInfeasible : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "oracle-infeasible"; }
};

// An internal invariant failed. Always a bug.
class InvariantViolation : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "invariant"; }
};

}  // namespace ncr
