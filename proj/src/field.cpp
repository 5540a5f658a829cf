#include "ncr/field.hpp"

#include "ncr/error.hpp"

namespace ncr {

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp != 0) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t small : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % small == 0) return n == small;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // Deterministic witness set for all 64-bit inputs.
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

PrimeField::PrimeField(std::uint64_t p) : p_(p) {
  if (p >= (std::uint64_t{1} << 63)) throw ValidationError("prime modulus must be below 2^63");
  if (!is_prime(p)) throw ValidationError("field modulus " + std::to_string(p) + " is not prime");
}

PrimeField::value_type PrimeField::inv(value_type a) const {
  if (a == 0) throw InvariantViolation("inverse of zero in F_" + std::to_string(p_));
  return powmod(a, p_ - 2, p_);
}

PrimeField::value_type PrimeField::from_int(std::int64_t k) const {
  const auto p = static_cast<std::int64_t>(p_);
  std::int64_t r = k % p;
  if (r < 0) r += p;
  return static_cast<value_type>(r);
}

std::int64_t PrimeField::centered(value_type a) const {
  if (a > p_ / 2) return -static_cast<std::int64_t>(p_ - a);
  return static_cast<std::int64_t>(a);
}

RationalField::value_type RationalField::inv(const value_type& a) const {
  if (sgn(a) == 0) throw InvariantViolation("inverse of zero in Q");
  return 1 / a;
}

RationalField::value_type RationalField::parse(const std::string& text) const {
  mpq_class q;
  if (text.empty() || q.set_str(text, 10) != 0) {
    throw ValidationError("malformed rational '" + text + "'");
  }
  if (sgn(q.get_den()) == 0) throw ValidationError("zero denominator in '" + text + "'");
  q.canonicalize();
  return q;
}

}  // namespace ncr
