#pragma once

#include "qrlab/modular.hpp"

namespace qrlab {

// Value of a Legendre symbol: 0 exactly when p divides the argument,
// otherwise +1 on squares and -1 on nonsquares.
class LegendreValue {
 public:
  static LegendreValue from_int(int v);

  int value() const noexcept { return v_; }

  friend LegendreValue operator*(LegendreValue a, LegendreValue b) noexcept {
    return LegendreValue(a.v_ * b.v_);
  }
  friend bool operator==(LegendreValue a, LegendreValue b) noexcept { return a.v_ == b.v_; }
  friend bool operator!=(LegendreValue a, LegendreValue b) noexcept { return a.v_ != b.v_; }

 private:
  explicit LegendreValue(int v) noexcept : v_(v) {}
  int v_;
};

struct FactoringBudget {
  std::uint64_t max_trial_divisions = 1'000'000;
};

// Definition-level evaluator: scans [1, p) for a square root of a; O(p).
LegendreValue legendre_brute(Residue a);

// a^((p-1)/2) mod p mapped onto {0, +1, -1}; O(log p).
LegendreValue legendre_euler(Residue a);

// Evaluates (a/p) by trial-division factoring of a; each odd prime factor r
// is flipped to (p mod r / r) with the reciprocity sign and recursed. The
// factor 2 uses the supplementary rule (2/p) = +1 iff p = +-1 (mod 8), which
// is plumbing outside the character-sum machinery and is pinned against
// legendre_euler by the exhaustive agreement tests.
LegendreValue legendre_reciprocity(Residue a, const FactoringBudget& budget = {});

}  // namespace qrlab
