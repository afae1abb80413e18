#pragma once

#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "qrlab/legendre.hpp"

namespace qrlab {

using BigInt = boost::multiprecision::cpp_int;

// Resource limits for the enumeration- and convolution-based evaluators.
// Exceeding a budget raises a distinct error; nothing is truncated silently.
struct Budgets {
  std::uint64_t enumeration_limit = 10'000'000;  // tuples per brute/orbit call
  int exact_order_limit = 25;                    // highest n for Exact pipelines
};

// base^exponent <= limit, evaluated without overflow (base >= 2).
bool power_fits(std::uint64_t base, std::uint64_t exponent, std::uint64_t limit);

// Arithmetic mode of a character-sum vector: exact big integers, or residues
// modulo a fixed m >= 2 (with -1 represented canonically as m - 1).
class Mode {
 public:
  static Mode exact() noexcept { return Mode(0); }
  static Mode modular(std::uint64_t m);

  bool is_exact() const noexcept { return m_ == 0; }
  std::uint64_t modulus() const;

  friend bool operator==(Mode a, Mode b) noexcept { return a.m_ == b.m_; }
  friend bool operator!=(Mode a, Mode b) noexcept { return a.m_ != b.m_; }

 private:
  explicit Mode(std::uint64_t m) noexcept : m_(m) {}
  std::uint64_t m_;  // 0 encodes Exact
};

// The full map t -> S_n(t) for one (p, n), where S_n(t) sums the symbol
// (x_1 x_2 ... x_n / p) over all n-tuples in Z_p with coordinate sum t.
// Immutable once built; safe to share across threads.
class CharSumVector {
 public:
  CharSumVector(OddPrime p, int order, std::vector<BigInt> values);  // Exact
  CharSumVector(OddPrime p, int order, std::uint64_t m,
                std::vector<std::uint64_t> values);  // Modular(m)

  OddPrime prime() const noexcept { return prime_; }
  int order() const noexcept { return order_; }
  Mode mode() const noexcept { return mode_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(prime_.value()); }

  const BigInt& exact_at(std::uint64_t t) const;
  std::uint64_t modular_at(std::uint64_t t) const;
  const std::vector<BigInt>& exact_values() const;
  const std::vector<std::uint64_t>& modular_values() const;

  // Copy with one exact entry replaced. Fault-injection aid for the proof
  // suite; the original vector is untouched.
  CharSumVector with_entry(std::uint64_t t, BigInt value) const;

 private:
  OddPrime prime_;
  int order_;
  Mode mode_;
  std::vector<BigInt> exact_;
  std::vector<std::uint64_t> modular_;
};

// S_1: entry t is the symbol (t/p).
CharSumVector s1_vector(OddPrime p, Mode mode);

// Cyclic convolution over Z_p: u(t) = sum_s v(s) w(t - s). Orders add, so the
// result represents S_{m+n} when the inputs represent S_m and S_n.
CharSumVector convolve(const CharSumVector& v, const CharSumVector& w);

// S_n as (n - 1) successive convolutions of S_1 with itself.
CharSumVector charsum_vector(OddPrime p, int order, Mode mode, const Budgets& budgets = {});

// Definition-level oracle: enumerates the n - 1 free coordinates directly and
// sums the symbol of each coordinate product. Exact, O(p^(n-1)).
BigInt charsum_brute(OddPrime p, int order, Residue t, const Budgets& budgets = {});

// Odd-order closed form: 0 at t = 0, otherwise
// (t/p) * p^((n-1)/2) * (-1)^(((p-1)/2)((n-1)/2)).
BigInt charsum_closed(OddPrime p, int order, Residue t);

// S_2 in closed form: (-1/p)(p-1) at t = 0, otherwise -(-1/p).
std::int64_t charsum_s2(OddPrime p, Residue t);

// Decomposition of the q-tuples summing to t under cyclic shifts. Orbit sizes
// are 1 (the constant tuple) or q, so modulo q only the constant tuple
// contributes to S_q(t).
struct OrbitStats {
  OddPrime modulus;    // p
  OddPrime tuple_len;  // q
  Residue target;      // t
  std::uint64_t n_fixed = 0;
  std::uint64_t n_free = 0;
  std::int64_t fixed_contribution = 0;
  BigInt total;  // exact S_q(t), accumulated during the same enumeration
};

OrbitStats orbit_decompose(OddPrime p, OddPrime q, Residue t, const Budgets& budgets = {});

// S_q(1) mod q without enumeration: free orbits contribute multiples of q, so
// only the constant tuple x = q^(-1) survives; returns the symbol of its
// coordinate product, which equals (q/p).
LegendreValue sq1_mod_q_orbit(OddPrime p, OddPrime q);

}  // namespace qrlab
