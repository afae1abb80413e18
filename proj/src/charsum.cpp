#include "qrlab/charsum.hpp"

#include <limits>
#include <utility>

namespace qrlab {

bool power_fits(std::uint64_t base, std::uint64_t exponent, std::uint64_t limit) {
  unsigned __int128 value = 1;
  for (std::uint64_t i = 0; i < exponent; ++i) {
    value *= base;
    if (value > limit) return false;
  }
  return value <= limit;
}

Mode Mode::modular(std::uint64_t m) {
  if (m < 2 || m >= kModulusLimit)
    throw Error(Errc::InvalidArgument, "modular mode needs 2 <= m < 2^63");
  return Mode(m);
}

std::uint64_t Mode::modulus() const {
  if (is_exact()) throw Error(Errc::ModeMismatch, "exact mode carries no modulus");
  return m_;
}

CharSumVector::CharSumVector(OddPrime p, int order, std::vector<BigInt> values)
    : prime_(p), order_(order), mode_(Mode::exact()), exact_(std::move(values)) {
  if (order_ < 1) throw Error(Errc::InvalidArgument, "order must be positive");
  if (exact_.size() != prime_.value())
    throw Error(Errc::InvalidArgument, "vector length must equal the modulus");
}

CharSumVector::CharSumVector(OddPrime p, int order, std::uint64_t m,
                             std::vector<std::uint64_t> values)
    : prime_(p), order_(order), mode_(Mode::modular(m)), modular_(std::move(values)) {
  if (order_ < 1) throw Error(Errc::InvalidArgument, "order must be positive");
  if (modular_.size() != prime_.value())
    throw Error(Errc::InvalidArgument, "vector length must equal the modulus");
  for (std::uint64_t v : modular_) {
    if (v >= m) throw Error(Errc::InvalidArgument, "modular entry out of [0, m)");
  }
}

const BigInt& CharSumVector::exact_at(std::uint64_t t) const {
  return exact_values().at(t);
}

std::uint64_t CharSumVector::modular_at(std::uint64_t t) const {
  return modular_values().at(t);
}

const std::vector<BigInt>& CharSumVector::exact_values() const {
  if (!mode_.is_exact())
    throw Error(Errc::ModeMismatch, "exact access to a modular vector");
  return exact_;
}

const std::vector<std::uint64_t>& CharSumVector::modular_values() const {
  if (mode_.is_exact())
    throw Error(Errc::ModeMismatch, "modular access to an exact vector");
  return modular_;
}

CharSumVector CharSumVector::with_entry(std::uint64_t t, BigInt value) const {
  std::vector<BigInt> values = exact_values();
  values.at(t) = std::move(value);
  return CharSumVector(prime_, order_, std::move(values));
}

namespace {

// chi[v] = (v/p) built from the quadratic-residue definition: mark the
// nonzero squares, every other nonzero class is a nonresidue. This keeps the
// enumeration oracles independent of the Euler-criterion evaluator.
std::vector<std::int8_t> chi_table(std::uint64_t p) {
  std::vector<std::int8_t> chi(p, -1);
  chi[0] = 0;
  for (std::uint64_t x = 1; x < p; ++x) chi[detail::mul_mod(x, x, p)] = 1;
  return chi;
}

void require_target(OddPrime p, Residue t) {
  if (t.modulus() != p)
    throw Error(Errc::ModulusMismatch, "target residue lives in a different Z_p");
}

}  // namespace

CharSumVector s1_vector(OddPrime p, Mode mode) {
  const std::uint64_t P = p.value();
  if (mode.is_exact()) {
    std::vector<BigInt> values(P);
    for (std::uint64_t t = 0; t < P; ++t)
      values[t] = legendre_euler(Residue(t, p)).value();
    return CharSumVector(p, 1, std::move(values));
  }
  const std::uint64_t m = mode.modulus();
  std::vector<std::uint64_t> values(P);
  for (std::uint64_t t = 0; t < P; ++t) {
    const int chi = legendre_euler(Residue(t, p)).value();
    values[t] = chi == 0 ? 0 : (chi == 1 ? 1 : m - 1);
  }
  return CharSumVector(p, 1, m, std::move(values));
}

CharSumVector convolve(const CharSumVector& v, const CharSumVector& w) {
  if (v.prime() != w.prime())
    throw Error(Errc::ModulusMismatch, "convolution requires a common p");
  if (v.mode() != w.mode())
    throw Error(Errc::ModeMismatch, "convolution requires a common mode");
  const std::uint64_t P = v.prime().value();
  const int order = v.order() + w.order();
  if (v.mode().is_exact()) {
    const std::vector<BigInt>& a = v.exact_values();
    const std::vector<BigInt>& b = w.exact_values();
    std::vector<BigInt> out(P, BigInt(0));
    for (std::uint64_t s = 0; s < P; ++s) {
      if (a[s] == 0) continue;
      for (std::uint64_t u = 0; u < P; ++u) {
        if (b[u] == 0) continue;
        std::uint64_t idx = s + u;
        if (idx >= P) idx -= P;
        out[idx] += a[s] * b[u];
      }
    }
    return CharSumVector(v.prime(), order, std::move(out));
  }
  const std::uint64_t m = v.mode().modulus();
  const std::vector<std::uint64_t>& a = v.modular_values();
  const std::vector<std::uint64_t>& b = w.modular_values();
  std::vector<std::uint64_t> out(P, 0);
  for (std::uint64_t s = 0; s < P; ++s) {
    if (a[s] == 0) continue;
    for (std::uint64_t u = 0; u < P; ++u) {
      if (b[u] == 0) continue;
      std::uint64_t idx = s + u;
      if (idx >= P) idx -= P;
      std::uint64_t sum = out[idx] + detail::mul_mod(a[s], b[u], m);
      if (sum >= m) sum -= m;
      out[idx] = sum;
    }
  }
  return CharSumVector(v.prime(), order, m, std::move(out));
}

CharSumVector charsum_vector(OddPrime p, int order, Mode mode, const Budgets& budgets) {
  if (order < 1) throw Error(Errc::InvalidArgument, "order must be positive");
  if (mode.is_exact() && order > budgets.exact_order_limit)
    throw Error(Errc::OrderBudgetExceeded,
                "exact order " + std::to_string(order) + " exceeds the configured limit of " +
                    std::to_string(budgets.exact_order_limit));
  CharSumVector base = s1_vector(p, mode);
  CharSumVector result = base;
  for (int k = 1; k < order; ++k) result = convolve(result, base);
  return result;
}

BigInt charsum_brute(OddPrime p, int order, Residue t, const Budgets& budgets) {
  if (order < 1) throw Error(Errc::InvalidArgument, "order must be positive");
  require_target(p, t);
  const std::uint64_t P = p.value();
  if (!power_fits(P, static_cast<std::uint64_t>(order) - 1, budgets.enumeration_limit))
    throw Error(Errc::EnumerationBudgetExceeded,
                "p^(n-1) exceeds the enumeration budget of " +
                    std::to_string(budgets.enumeration_limit) + " tuples");
  const std::vector<std::int8_t> chi = chi_table(P);
  const std::uint64_t target = t.value();
  if (order == 1) return BigInt(static_cast<int>(chi[target]));

  std::int64_t total = 0;
  const int free_count = order - 1;
  if (free_count == 1) {
    for (std::uint64_t y = 1; y < P; ++y) {
      const std::uint64_t last = (target + P - y) % P;
      if (last) total += chi[detail::mul_mod(y, last, P)];
    }
    return BigInt(total);
  }

  // Odometer over all but the innermost free coordinate; the innermost one
  // runs in a tight loop. A zero anywhere in the prefix kills the symbol for
  // the whole inner sweep, so those sweeps are skipped outright.
  const int outer = free_count - 1;
  std::vector<std::uint64_t> y(outer, 0);
  std::vector<std::uint64_t> prefix_prod(outer, 0), prefix_sum(outer, 0);
  auto recompute_from = [&](int i) {
    for (int j = i; j < outer; ++j) {
      const std::uint64_t pp = j ? prefix_prod[j - 1] : 1;
      const std::uint64_t ps = j ? prefix_sum[j - 1] : 0;
      prefix_prod[j] = (pp == 0 || y[j] == 0) ? 0 : detail::mul_mod(pp, y[j], P);
      std::uint64_t sum = ps + y[j];
      if (sum >= P) sum -= P;
      prefix_sum[j] = sum;
    }
  };
  recompute_from(0);
  for (;;) {
    const std::uint64_t pp = prefix_prod[outer - 1];
    if (pp != 0) {
      const std::uint64_t ps = prefix_sum[outer - 1];
      // Innermost coordinate x runs over [1, P); the dependent final
      // coordinate is target - ps - x, stepped down by one each iteration.
      std::uint64_t last = (target + P - ps) % P;
      last = last == 0 ? P - 1 : last - 1;
      std::uint64_t prod = 0;
      for (std::uint64_t x = 1; x < P; ++x) {
        prod += pp;
        if (prod >= P) prod -= P;  // prod = pp * x mod P
        if (last) total += chi[detail::mul_mod(prod, last, P)];
        last = last == 0 ? P - 1 : last - 1;
      }
    }
    int i = outer - 1;
    while (i >= 0 && y[i] == P - 1) y[i--] = 0;
    if (i < 0) break;
    ++y[i];
    recompute_from(i);
  }
  return BigInt(total);
}

BigInt charsum_closed(OddPrime p, int order, Residue t) {
  if (order < 1) throw Error(Errc::InvalidArgument, "order must be positive");
  if (order % 2 == 0)
    throw Error(Errc::EvenOrder, "no closed form for even orders beyond S_2");
  require_target(p, t);
  if (t.value() == 0) return BigInt(0);
  const unsigned half = static_cast<unsigned>((order - 1) / 2);
  const BigInt magnitude = boost::multiprecision::pow(BigInt(p.value()), half);
  const bool negative = ((p.value() - 1) / 2) % 2 == 1 && half % 2 == 1;
  BigInt value = legendre_euler(t).value() * magnitude;
  if (negative) value = -value;
  return value;
}

std::int64_t charsum_s2(OddPrime p, Residue t) {
  require_target(p, t);
  const int minus_one = legendre_euler(Residue(p.value() - 1, p)).value();
  if (t.value() == 0) return static_cast<std::int64_t>(p.value() - 1) * minus_one;
  return -minus_one;
}

OrbitStats orbit_decompose(OddPrime p, OddPrime q, Residue t, const Budgets& budgets) {
  if (p == q) throw Error(Errc::SamePrime, "orbit decomposition needs distinct primes");
  require_target(p, t);
  const std::uint64_t P = p.value();
  if (!power_fits(P, q.value() - 1, budgets.enumeration_limit))
    throw Error(Errc::EnumerationBudgetExceeded,
                "p^(q-1) exceeds the enumeration budget of " +
                    std::to_string(budgets.enumeration_limit) + " tuples");
  const int Q = static_cast<int>(q.value());  // small: 3^(Q-1) already fit the budget
  const std::uint64_t target = t.value();
  const std::vector<std::int8_t> chi = chi_table(P);

  const int m = Q - 1;  // free coordinates; the last one is determined by t
  std::vector<std::uint64_t> y(m, 0), prefix_prod(m, 0), prefix_sum(m, 0);
  auto recompute_from = [&](int i) {
    for (int j = i; j < m; ++j) {
      const std::uint64_t pp = j ? prefix_prod[j - 1] : 1;
      const std::uint64_t ps = j ? prefix_sum[j - 1] : 0;
      prefix_prod[j] = (pp == 0 || y[j] == 0) ? 0 : detail::mul_mod(pp, y[j], P);
      std::uint64_t sum = ps + y[j];
      if (sum >= P) sum -= P;
      prefix_sum[j] = sum;
    }
  };
  recompute_from(0);

  std::uint64_t n_fixed = 0, n_free = 0;
  std::int64_t fixed_contribution = 0, total = 0;
  for (;;) {
    const std::uint64_t last = (target + P - prefix_sum[m - 1]) % P;
    const std::uint64_t pp = prefix_prod[m - 1];
    const int tuple_chi = (pp && last) ? chi[detail::mul_mod(pp, last, P)] : 0;
    total += tuple_chi;

    auto coord = [&](int i) { return i < m ? y[i] : last; };
    // Orbit representative iff no rotation is lexicographically smaller.
    bool canonical = true;
    for (int s = 1; canonical && s < Q; ++s) {
      for (int i = 0; i < Q; ++i) {
        const std::uint64_t rotated = coord((i + s) % Q);
        const std::uint64_t straight = coord(i);
        if (rotated != straight) {
          if (rotated < straight) canonical = false;
          break;
        }
      }
    }
    if (canonical) {
      // Minimal period of the shift action; for prime length it must be 1
      // (all coordinates equal) or Q, and anything else is an enumeration bug.
      int period = Q;
      for (int d = 1; d < Q; ++d) {
        bool match = true;
        for (int i = 0; match && i < Q; ++i) {
          if (coord(i) != coord((i + d) % Q)) match = false;
        }
        if (match) {
          period = d;
          break;
        }
      }
      if (period == 1) {
        ++n_fixed;
        fixed_contribution += tuple_chi;
      } else if (period == Q) {
        ++n_free;
      } else {
        throw Error(Errc::InternalInconsistency, "orbit size is neither 1 nor q");
      }
    }

    int i = m - 1;
    while (i >= 0 && y[i] == P - 1) y[i--] = 0;
    if (i < 0) break;
    ++y[i];
    recompute_from(i);
  }

  unsigned __int128 tuples = 1;
  for (int i = 0; i < m; ++i) tuples *= P;
  if (static_cast<unsigned __int128>(n_fixed) +
          static_cast<unsigned __int128>(q.value()) * n_free !=
      tuples)
    throw Error(Errc::InternalInconsistency, "orbit counts do not add up to p^(q-1)");

  return OrbitStats{p, q, t, n_fixed, n_free, fixed_contribution, BigInt(total)};
}

LegendreValue sq1_mod_q_orbit(OddPrime p, OddPrime q) {
  if (p == q) throw Error(Errc::SamePrime, "the congruence needs distinct primes");
  const Residue q_in_p(q.value() % p.value(), p);
  const Residue x = mod_inv(q_in_p);  // the constant tuple solving q*x = 1
  return legendre_euler(mod_pow(x, q.value()));
}

}  // namespace qrlab
