#include "qrlab/legendre.hpp"

namespace qrlab {

LegendreValue LegendreValue::from_int(int v) {
  if (v < -1 || v > 1) throw Error(Errc::InvalidArgument, "Legendre value must be -1, 0 or +1");
  return LegendreValue(v);
}

LegendreValue legendre_brute(Residue a) {
  const std::uint64_t p = a.modulus().value();
  if (a.value() == 0) return LegendreValue::from_int(0);
  for (std::uint64_t x = 1; x < p; ++x) {
    if (detail::mul_mod(x, x, p) == a.value()) return LegendreValue::from_int(1);
  }
  return LegendreValue::from_int(-1);
}

LegendreValue legendre_euler(Residue a) {
  const std::uint64_t p = a.modulus().value();
  const std::uint64_t power = detail::pow_mod(a.value(), (p - 1) / 2, p);
  if (power == 0) return LegendreValue::from_int(0);
  if (power == 1) return LegendreValue::from_int(1);
  if (power == p - 1) return LegendreValue::from_int(-1);
  throw Error(Errc::InternalInconsistency,
              "a^((p-1)/2) landed outside {0, 1, p-1}; the modulus cannot be prime");
}

namespace {

// Moduli shrink strictly at every recursion step (p mod r < r <= a < p), so
// the depth is tiny; the bound is enforced, not assumed.
constexpr int kMaxRecursionDepth = 64;

int second_supplement(std::uint64_t p) {  // (2/p)
  const std::uint64_t r = p % 8;
  return (r == 1 || r == 7) ? 1 : -1;
}

int reciprocity_sign(std::uint64_t p, std::uint64_t r) {
  // (-1)^(((p-1)/2)((r-1)/2))
  return (((p - 1) / 2) % 2 == 1 && ((r - 1) / 2) % 2 == 1) ? -1 : 1;
}

int symbol_by_reciprocity(std::uint64_t a, std::uint64_t p, const FactoringBudget& budget,
                          int depth);

// (r/p) for an odd prime factor r < p of the argument. r comes out of trial
// division, so it is genuinely prime and p mod r is nonzero.
int odd_factor_symbol(std::uint64_t r, std::uint64_t p, const FactoringBudget& budget,
                      int depth) {
  return reciprocity_sign(p, r) * symbol_by_reciprocity(p % r, r, budget, depth + 1);
}

int symbol_by_reciprocity(std::uint64_t a, std::uint64_t p, const FactoringBudget& budget,
                          int depth) {
  if (depth > kMaxRecursionDepth)
    throw Error(Errc::InternalInconsistency, "reciprocity recursion exceeded its depth bound");
  if (a == 0) return 0;
  int result = 1;
  std::uint64_t remaining = a;
  int twos = 0;
  while (remaining % 2 == 0) {
    remaining /= 2;
    ++twos;
  }
  if (twos % 2 == 1) result *= second_supplement(p);
  std::uint64_t trials = 0;
  for (std::uint64_t d = 3; d * d <= remaining; d += 2) {
    if (++trials > budget.max_trial_divisions)
      throw Error(Errc::FactoringBudgetExceeded,
                  "trial division exceeded " + std::to_string(budget.max_trial_divisions) +
                      " candidate divisors");
    if (remaining % d) continue;
    int multiplicity = 0;
    while (remaining % d == 0) {
      remaining /= d;
      ++multiplicity;
    }
    if (multiplicity % 2 == 1) result *= odd_factor_symbol(d, p, budget, depth);
  }
  if (remaining > 1) result *= odd_factor_symbol(remaining, p, budget, depth);
  return result;
}

}  // namespace

LegendreValue legendre_reciprocity(Residue a, const FactoringBudget& budget) {
  return LegendreValue::from_int(
      symbol_by_reciprocity(a.value(), a.modulus().value(), budget, 0));
}

}  // namespace qrlab
