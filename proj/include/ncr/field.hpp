#pragma once

#include <concepts>
#include <cstdint>
#include <optional>
#include <string>

#include <gmpxx.h>

#include "ncr/rng.hpp"

namespace ncr {

// Exact scalar arithmetic. A field object is a small value carried by every
// matrix; elements are plain values of F::value_type kept in canonical form.
template <class F>
concept Field = std::copyable<F> && requires(const F f, const typename F::value_type a, Rng& rng,
                                             std::int64_t k) {
  typename F::value_type;
  { f.zero() } -> std::same_as<typename F::value_type>;
  { f.one() } -> std::same_as<typename F::value_type>;
  { f.add(a, a) } -> std::same_as<typename F::value_type>;
  { f.sub(a, a) } -> std::same_as<typename F::value_type>;
  { f.mul(a, a) } -> std::same_as<typename F::value_type>;
  { f.neg(a) } -> std::same_as<typename F::value_type>;
  { f.inv(a) } -> std::same_as<typename F::value_type>;
  { f.is_zero(a) } -> std::same_as<bool>;
  { f.from_int(k) } -> std::same_as<typename F::value_type>;
  { f.sample(rng) } -> std::same_as<typename F::value_type>;
  { f.sample_set_size() } -> std::same_as<std::uint64_t>;
  { f.order() } -> std::same_as<std::optional<std::uint64_t>>;
  { f.to_string(a) } -> std::same_as<std::string>;
  { f == f } -> std::same_as<bool>;
};

bool is_prime(std::uint64_t n);

// F_p with a runtime modulus, p < 2^63.
class PrimeField {
 public:
  using value_type = std::uint64_t;

  explicit PrimeField(std::uint64_t p);

  std::uint64_t modulus() const { return p_; }

  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  value_type add(value_type a, value_type b) const {
    const value_type s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  value_type sub(value_type a, value_type b) const { return a >= b ? a - b : a + (p_ - b); }
  value_type neg(value_type a) const { return a == 0 ? 0 : p_ - a; }
  value_type mul(value_type a, value_type b) const {
    return static_cast<value_type>(static_cast<unsigned __int128>(a) * b % p_);
  }
  value_type inv(value_type a) const;
  bool is_zero(value_type a) const { return a == 0; }
  value_type from_int(std::int64_t k) const;
  value_type sample(Rng& rng) const { return rng.below(p_); }
  std::uint64_t sample_set_size() const { return p_; }
  std::optional<std::uint64_t> order() const { return p_; }
  std::string to_string(value_type a) const { return std::to_string(a); }
  // Signed representative in (-p/2, p/2], handy for printing small examples.
  std::int64_t centered(value_type a) const;

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  std::uint64_t p_;
};

// Q with GMP rationals. Random elements are drawn from {0, ..., 2^16 - 1},
// which is the sample set the Schwartz-Zippel bounds refer to.
class RationalField {
 public:
  using value_type = mpq_class;

  static constexpr std::uint64_t kSampleRange = 1u << 16;

  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  value_type neg(const value_type& a) const { return -a; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  value_type inv(const value_type& a) const;
  bool is_zero(const value_type& a) const { return sgn(a) == 0; }
  value_type from_int(std::int64_t k) const { return mpq_class(mpz_class(std::to_string(k))); }
  value_type sample(Rng& rng) const { return mpq_class(static_cast<unsigned long>(rng.below(kSampleRange))); }
  std::uint64_t sample_set_size() const { return kSampleRange; }
  std::optional<std::uint64_t> order() const { return std::nullopt; }
  std::string to_string(const value_type& a) const { return a.get_str(); }
  // Parses "a" or "a/b"; throws ValidationError on junk or zero denominator.
  value_type parse(const std::string& text) const;

  friend bool operator==(const RationalField&, const RationalField&) = default;
};

static_assert(Field<PrimeField>);
static_assert(Field<RationalField>);

}  // namespace ncr
