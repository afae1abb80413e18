#pragma once

#include <cstdint>
#include <vector>

#include "qrlab/error.hpp"

namespace qrlab {

// Deterministic primality for the full 64-bit range (fixed Miller-Rabin
// witness set, no probabilistic failure mode).
bool is_prime_u64(std::uint64_t n);

// All odd primes in [3, limit], ascending. The sieve is capped at 10^8.
std::vector<std::uint64_t> odd_primes_up_to(std::uint64_t limit);

// Moduli stay below 2^63 so residue products fit an unsigned 128-bit
// intermediate.
inline constexpr std::uint64_t kModulusLimit = std::uint64_t{1} << 63;

// An odd prime modulus, validated on construction.
class OddPrime {
 public:
  explicit OddPrime(std::uint64_t value);

  std::uint64_t value() const noexcept { return value_; }

  friend bool operator==(OddPrime a, OddPrime b) noexcept { return a.value_ == b.value_; }
  friend bool operator!=(OddPrime a, OddPrime b) noexcept { return a.value_ != b.value_; }

 private:
  std::uint64_t value_;
};

OddPrime make_odd_prime(std::uint64_t n);

// An element of Z_p carrying its modulus. Construction reduces the input;
// arithmetic between residues of different moduli throws ModulusMismatch.
class Residue {
 public:
  Residue(std::uint64_t value, OddPrime modulus) noexcept
      : value_(value % modulus.value()), modulus_(modulus) {}

  static Residue from_int(std::int64_t value, OddPrime modulus) noexcept;

  std::uint64_t value() const noexcept { return value_; }
  OddPrime modulus() const noexcept { return modulus_; }

  friend Residue operator+(Residue a, Residue b);
  friend Residue operator-(Residue a, Residue b);
  friend Residue operator*(Residue a, Residue b);
  friend bool operator==(Residue a, Residue b) noexcept {
    return a.value_ == b.value_ && a.modulus_ == b.modulus_;
  }
  friend bool operator!=(Residue a, Residue b) noexcept { return !(a == b); }

 private:
  std::uint64_t value_;
  OddPrime modulus_;
};

// base^exponent by binary exponentiation; exponent 0 gives 1 (empty product).
Residue mod_pow(Residue base, std::uint64_t exponent);

// Multiplicative inverse; throws ZeroInverse on the zero residue.
Residue mod_inv(Residue a);

namespace detail {

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);
std::uint64_t inv_mod(std::uint64_t a, std::uint64_t m);  // requires gcd(a, m) = 1

}  // namespace detail
}  // namespace qrlab
