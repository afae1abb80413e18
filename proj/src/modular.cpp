#include "qrlab/modular.hpp"

#include <bit>
#include <utility>

namespace qrlab {
namespace detail {

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t m) {
  std::int64_t t = 0, t_next = 1;
  std::int64_t r = static_cast<std::int64_t>(m);
  std::int64_t r_next = static_cast<std::int64_t>(a % m);
  while (r_next != 0) {
    const std::int64_t quotient = r / r_next;
    t -= quotient * t_next;
    std::swap(t, t_next);
    r -= quotient * r_next;
    std::swap(r, r_next);
  }
  if (r != 1) throw Error(Errc::InternalInconsistency, "residue is not invertible");
  if (t < 0) t += static_cast<std::int64_t>(m);
  return static_cast<std::uint64_t>(t);
}

}  // namespace detail

namespace {

// Proven witness set for every n < 3.3 * 10^24, which covers all 64-bit
// inputs (Sorenson & Webster).
constexpr std::uint64_t kWitnesses[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

}  // namespace

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t w : kWitnesses) {
    if (n % w == 0) return n == w;
  }
  const int s = std::countr_zero(n - 1);
  const std::uint64_t d = (n - 1) >> s;
  for (std::uint64_t w : kWitnesses) {
    std::uint64_t x = detail::pow_mod(w, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = detail::mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<std::uint64_t> odd_primes_up_to(std::uint64_t limit) {
  constexpr std::uint64_t kSieveCap = 100'000'000;
  if (limit > kSieveCap)
    throw Error(Errc::InvalidArgument, "prime range above the sieve cap of 10^8");
  std::vector<std::uint64_t> primes;
  if (limit < 3) return primes;
  std::vector<bool> composite(limit + 1, false);
  for (std::uint64_t i = 3; i * i <= limit; i += 2) {
    if (composite[i]) continue;
    for (std::uint64_t j = i * i; j <= limit; j += 2 * i) composite[j] = true;
  }
  for (std::uint64_t i = 3; i <= limit; i += 2) {
    if (!composite[i]) primes.push_back(i);
  }
  return primes;
}

OddPrime::OddPrime(std::uint64_t value) : value_(value) {
  if (value == 2) throw Error(Errc::NotOdd, "2 is not an odd prime");
  if (value >= kModulusLimit) throw Error(Errc::InvalidArgument, "modulus must be below 2^63");
  if (!is_prime_u64(value)) throw Error(Errc::NotPrime, std::to_string(value) + " is not prime");
}

OddPrime make_odd_prime(std::uint64_t n) { return OddPrime(n); }

Residue Residue::from_int(std::int64_t value, OddPrime modulus) noexcept {
  const std::int64_t p = static_cast<std::int64_t>(modulus.value());
  std::int64_t r = value % p;
  if (r < 0) r += p;
  return Residue(static_cast<std::uint64_t>(r), modulus);
}

namespace {

void require_same_modulus(Residue a, Residue b) {
  if (a.modulus() != b.modulus())
    throw Error(Errc::ModulusMismatch, "residues have different moduli");
}

}  // namespace

Residue operator+(Residue a, Residue b) {
  require_same_modulus(a, b);
  const std::uint64_t p = a.modulus().value();
  std::uint64_t v = a.value() + b.value();
  if (v >= p) v -= p;
  return Residue(v, a.modulus());
}

Residue operator-(Residue a, Residue b) {
  require_same_modulus(a, b);
  const std::uint64_t p = a.modulus().value();
  const std::uint64_t v = a.value() + p - b.value();
  return Residue(v >= p ? v - p : v, a.modulus());
}

Residue operator*(Residue a, Residue b) {
  require_same_modulus(a, b);
  return Residue(detail::mul_mod(a.value(), b.value(), a.modulus().value()), a.modulus());
}

Residue mod_pow(Residue base, std::uint64_t exponent) {
  return Residue(detail::pow_mod(base.value(), exponent, base.modulus().value()),
                 base.modulus());
}

Residue mod_inv(Residue a) {
  if (a.value() == 0) throw Error(Errc::ZeroInverse, "zero has no multiplicative inverse");
  return Residue(detail::inv_mod(a.value(), a.modulus().value()), a.modulus());
}

}  // namespace qrlab
