#pragma once

#include <cstdint>

namespace schanuel {

using Scalar = std::uint32_t;

/// Arithmetic in the prime field F_p, p < 2^31.
///
/// Entries are stored as residues in [0, p). Products are formed in 64 bits and
/// reduced immediately, so no intermediate value can overflow.
class PrimeField {
 public:
  /// Throws Error(NotPrime) unless 2 <= p < 2^31 and p is prime (trial division).
  explicit PrimeField(std::uint64_t p);

  Scalar p() const noexcept { return p_; }

  Scalar reduce(std::int64_t v) const noexcept {
    const std::int64_t m = v % static_cast<std::int64_t>(p_);
    return static_cast<Scalar>(m < 0 ? m + p_ : m);
  }
  Scalar add(Scalar a, Scalar b) const noexcept {
    const std::uint64_t s = std::uint64_t{a} + b;
    return static_cast<Scalar>(s >= p_ ? s - p_ : s);
  }
  Scalar sub(Scalar a, Scalar b) const noexcept { return a >= b ? a - b : a + p_ - b; }
  Scalar neg(Scalar a) const noexcept { return a == 0 ? 0 : p_ - a; }
  Scalar mul(Scalar a, Scalar b) const noexcept {
    return static_cast<Scalar>((std::uint64_t{a} * b) % p_);
  }
  /// Multiplicative inverse via Fermat; a must be nonzero.
  Scalar inv(Scalar a) const noexcept;
  Scalar pow(Scalar a, std::uint64_t e) const noexcept;

  friend bool operator==(const PrimeField& x, const PrimeField& y) noexcept { return x.p_ == y.p_; }

 private:
  Scalar p_;
};

bool is_prime(std::uint64_t n) noexcept;

}  // namespace schanuel
