#include "qrlab/proofcheck.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

namespace qrlab {

const char* step_id_name(StepId id) {
  switch (id) {
    case StepId::S2Values: return "S2Values";
    case StepId::SnZero: return "SnZero";
    case StepId::Scaling: return "Scaling";
    case StepId::Recurrence: return "Recurrence";
    case StepId::ClosedForm: return "ClosedForm";
    case StepId::EulerCongruence: return "EulerCongruence";
    case StepId::OrbitCongruence: return "OrbitCongruence";
    case StepId::ReciprocityLaw: return "ReciprocityLaw";
  }
  return "Unknown";
}

ProofSummary tally(const std::vector<ProofStep>& steps) {
  ProofSummary summary;
  for (const ProofStep& s : steps) {
    switch (s.status) {
      case StepStatus::Passed: ++summary.passed; break;
      case StepStatus::Failed: ++summary.failed; break;
      case StepStatus::Skipped: ++summary.skipped; break;
    }
  }
  return summary;
}

namespace {

ProofStep value_step(StepId id, std::uint64_t p, std::uint64_t q, StepParams params,
                     BigInt lhs, BigInt rhs, std::optional<std::uint64_t> modulus = {}) {
  ProofStep step;
  step.id = id;
  step.p = p;
  step.q = q;
  step.params = std::move(params);
  step.status = lhs == rhs ? StepStatus::Passed : StepStatus::Failed;
  step.lhs = std::move(lhs);
  step.rhs = std::move(rhs);
  step.modulus = modulus;
  return step;
}

ProofStep skipped_step(StepId id, std::uint64_t p, std::uint64_t q, StepParams params,
                       std::string reason) {
  ProofStep step;
  step.id = id;
  step.p = p;
  step.q = q;
  step.params = std::move(params);
  step.status = StepStatus::Skipped;
  step.skip_reason = std::move(reason);
  return step;
}

BigInt canonical_mod(const BigInt& v, std::uint64_t m) {
  BigInt r = v % m;
  if (r < 0) r += m;
  return r;
}

std::uint64_t sign_residue(int sym, std::uint64_t m) {  // {-1, +1} -> [0, m)
  return sym >= 0 ? 1 : m - 1;
}

int minus_one_symbol(OddPrime p) {  // (-1/p)
  return legendre_euler(Residue(p.value() - 1, p)).value();
}

void append(std::vector<ProofStep>& out, std::vector<ProofStep> steps) {
  for (ProofStep& s : steps) out.push_back(std::move(s));
}

}  // namespace

const CharSumVector& VectorSource::get(OddPrime p, int order, Mode mode) const {
  const Key key{p.value(), order, mode.is_exact(), mode.is_exact() ? 0 : mode.modulus()};
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  CharSumVector vec = charsum_vector(p, order, mode, budgets_);
  if (fault_ && mode.is_exact() && fault_->p == p.value() && fault_->order == order) {
    const std::uint64_t t = fault_->t % p.value();
    vec = vec.with_entry(t, vec.exact_at(t) + fault_->delta);
  }
  return cache_.emplace(key, std::move(vec)).first->second;
}

std::vector<ProofStep> verify_s2_identities(OddPrime p, const VectorSource& source) {
  const std::uint64_t P = p.value();
  std::vector<ProofStep> steps;
  const CharSumVector* v = nullptr;
  try {
    v = &source.get(p, 2, Mode::exact());
  } catch (const Error& e) {
    if (!is_budget_error(e.code())) throw;
    steps.push_back(skipped_step(StepId::S2Values, P, 0, {{"t", std::uint64_t{0}}}, e.what()));
    steps.push_back(skipped_step(StepId::S2Values, P, 0, {{"t", std::uint64_t{1}}}, e.what()));
    steps.push_back(skipped_step(StepId::S2Values, P, 0,
                                 {{"check", std::string("constant_on_units")}}, e.what()));
    return steps;
  }
  const int m1 = minus_one_symbol(p);
  steps.push_back(value_step(StepId::S2Values, P, 0, {{"t", std::uint64_t{0}}},
                             v->exact_at(0), BigInt(m1) * BigInt(P - 1)));
  steps.push_back(value_step(StepId::S2Values, P, 0, {{"t", std::uint64_t{1}}},
                             v->exact_at(1), BigInt(-m1)));
  std::uint64_t matches = 0;
  const BigInt expected(-m1);
  for (std::uint64_t a = 1; a < P; ++a) {
    if (v->exact_at(a) == expected) ++matches;
  }
  steps.push_back(value_step(StepId::S2Values, P, 0,
                             {{"check", std::string("constant_on_units")}, {"units", P - 1}},
                             BigInt(matches), BigInt(P - 1)));
  return steps;
}

std::vector<ProofStep> verify_scaling_and_zero(OddPrime p, int order,
                                               const VectorSource& source) {
  if (order < 1) throw Error(Errc::InvalidArgument, "order must be positive");
  const std::uint64_t P = p.value();
  const std::uint64_t n = static_cast<std::uint64_t>(order);
  std::vector<ProofStep> steps;
  const CharSumVector* v = nullptr;
  try {
    v = &source.get(p, order, Mode::exact());
  } catch (const Error& e) {
    if (!is_budget_error(e.code())) throw;
    if (order % 2 == 1)
      steps.push_back(skipped_step(StepId::SnZero, P, 0, {{"n", n}}, e.what()));
    steps.push_back(skipped_step(StepId::Scaling, P, 0, {{"n", n}}, e.what()));
    return steps;
  }
  if (order % 2 == 1)
    steps.push_back(value_step(StepId::SnZero, P, 0, {{"n", n}}, v->exact_at(0), BigInt(0)));
  // S_n(t) = (a/p)^n S_n(t a^-1) for every unit a; only the parity of n
  // matters since (a/p) is a sign.
  std::uint64_t matches = 0;
  const std::uint64_t cells = (P - 1) * P;
  for (std::uint64_t a = 1; a < P; ++a) {
    const std::uint64_t inv = detail::inv_mod(a, P);
    const int factor = order % 2 == 1 ? legendre_euler(Residue(a, p)).value() : 1;
    for (std::uint64_t t = 0; t < P; ++t) {
      const BigInt& lhs = v->exact_at(t);
      const BigInt& base = v->exact_at(detail::mul_mod(t, inv, P));
      const bool equal = factor == 1 ? lhs == base : lhs == -base;
      if (equal) ++matches;
    }
  }
  steps.push_back(value_step(StepId::Scaling, P, 0, {{"n", n}, {"cells", cells}},
                             BigInt(matches), BigInt(cells)));
  return steps;
}

std::vector<ProofStep> verify_recurrence_chain(OddPrime p, int max_order,
                                               const VectorSource& source) {
  if (max_order < 1 || max_order % 2 == 0)
    throw Error(Errc::InvalidArgument, "the recurrence chain needs an odd maximal order");
  const std::uint64_t P = p.value();
  std::vector<ProofStep> steps;
  const CharSumVector* s1 = nullptr;
  const CharSumVector* s2 = nullptr;
  try {
    s1 = &source.get(p, 1, Mode::exact());
    s2 = &source.get(p, 2, Mode::exact());
  } catch (const Error& e) {
    if (!is_budget_error(e.code())) throw;
    for (int k = 1; k <= max_order; k += 2) {
      steps.push_back(
          skipped_step(StepId::Recurrence, P, 0, {{"n", std::uint64_t(k)}}, e.what()));
      if (k > 1)
        steps.push_back(
            skipped_step(StepId::ClosedForm, P, 0, {{"n", std::uint64_t(k)}}, e.what()));
    }
    return steps;
  }
  steps.push_back(value_step(StepId::Recurrence, P, 0,
                             {{"n", std::uint64_t{1}}, {"check", std::string("base")}},
                             s1->exact_at(1), BigInt(1)));
  const BigInt factor = BigInt(minus_one_symbol(p)) * BigInt(P);
  const int cap = source.budgets().exact_order_limit;
  CharSumVector current = *s1;
  for (int n = 1; n + 2 <= max_order; n += 2) {
    if (n + 2 > cap) {
      const std::string reason = "exact order budget of " + std::to_string(cap);
      for (int k = n + 2; k <= max_order; k += 2) {
        steps.push_back(skipped_step(StepId::Recurrence, P, 0, {{"n", std::uint64_t(k)}}, reason));
        steps.push_back(skipped_step(StepId::ClosedForm, P, 0, {{"n", std::uint64_t(k)}}, reason));
      }
      break;
    }
    CharSumVector next = convolve(current, *s2);
    steps.push_back(value_step(StepId::Recurrence, P, 0, {{"n", std::uint64_t(n + 2)}},
                               next.exact_at(1), current.exact_at(1) * factor));
    steps.push_back(value_step(StepId::ClosedForm, P, 0, {{"n", std::uint64_t(n + 2)}},
                               next.exact_at(1), charsum_closed(p, n + 2, Residue(1, p))));
    current = std::move(next);
  }
  return steps;
}

std::vector<ProofStep> verify_congruences(OddPrime p, OddPrime q, const Budgets& budgets) {
  if (p == q) throw Error(Errc::SamePrime, "congruence checks need distinct primes");
  const std::uint64_t P = p.value();
  const std::uint64_t Q = q.value();
  if (Q > static_cast<std::uint64_t>(std::numeric_limits<int>::max()))
    throw Error(Errc::InvalidArgument, "q is too large for the modular pipeline");
  std::vector<ProofStep> steps;

  const int sym_pq = legendre_euler(Residue(P % Q, q)).value();  // (p/q)
  const int sym_qp = legendre_euler(Residue(Q % P, p)).value();  // (q/p)
  const bool sign_negative = ((P - 1) / 2) % 2 == 1 && ((Q - 1) / 2) % 2 == 1;
  const int euler_side = sign_negative ? -sym_pq : sym_pq;

  const std::uint64_t expect_euler = sign_residue(euler_side, Q);
  const std::uint64_t expect_orbit = sign_residue(sym_qp, Q);

  // Route (i): closed form p^((q-1)/2) (-1)^(...) reduced mod q.
  std::uint64_t closed = detail::pow_mod(P % Q, (Q - 1) / 2, Q);
  if (sign_negative) closed = Q - closed;
  // Route (ii): the Modular(q) convolution pipeline, big-integer free.
  const std::uint64_t conv =
      charsum_vector(p, static_cast<int>(Q), Mode::modular(Q), budgets).modular_at(1);
  // Route (iii): the orbit shortcut, enumeration free.
  const std::uint64_t orbit = sign_residue(sq1_mod_q_orbit(p, q).value(), Q);

  const std::pair<const char*, std::uint64_t> routes[] = {
      {"closed_form", closed}, {"modular_conv", conv}, {"orbit", orbit}};
  for (const auto& [name, lhs] : routes) {
    steps.push_back(value_step(StepId::EulerCongruence, P, Q, {{"route", std::string(name)}},
                               BigInt(lhs), BigInt(expect_euler), Q));
  }
  for (const auto& [name, lhs] : routes) {
    steps.push_back(value_step(StepId::OrbitCongruence, P, Q, {{"route", std::string(name)}},
                               BigInt(lhs), BigInt(expect_orbit), Q));
  }

  if (power_fits(P, Q - 1, budgets.enumeration_limit)) {
    const OrbitStats stats = orbit_decompose(p, q, Residue(1, p), budgets);
    const BigInt tuples =
        boost::multiprecision::pow(BigInt(P), static_cast<unsigned>(Q - 1));
    steps.push_back(value_step(StepId::OrbitCongruence, P, Q,
                               {{"route", std::string("orbit_count")}},
                               BigInt(stats.n_fixed) + BigInt(Q) * BigInt(stats.n_free),
                               tuples));
    steps.push_back(value_step(StepId::OrbitCongruence, P, Q,
                               {{"route", std::string("fixed_term")}},
                               canonical_mod(stats.total, Q),
                               canonical_mod(BigInt(stats.fixed_contribution), Q), Q));
  } else {
    const std::string reason = "enumeration budget: p^(q-1) exceeds " +
                               std::to_string(budgets.enumeration_limit) + " tuples";
    steps.push_back(skipped_step(StepId::OrbitCongruence, P, Q,
                                 {{"route", std::string("orbit_count")}}, reason));
    steps.push_back(skipped_step(StepId::OrbitCongruence, P, Q,
                                 {{"route", std::string("fixed_term")}}, reason));
  }
  return steps;
}

ProofStep verify_reciprocity(OddPrime p, OddPrime q) {
  if (p == q) throw Error(Errc::SamePrime, "the law needs distinct primes");
  const std::uint64_t P = p.value();
  const std::uint64_t Q = q.value();
  const int product = legendre_euler(Residue(P % Q, q)).value() *
                      legendre_euler(Residue(Q % P, p)).value();
  const bool negative = ((P - 1) / 2) % 2 == 1 && ((Q - 1) / 2) % 2 == 1;
  return value_step(StepId::ReciprocityLaw, P, Q, {}, BigInt(product),
                    BigInt(negative ? -1 : 1));
}

ProofReport run_suite(const SuiteOptions& options) {
  if (options.pmax < 3 || options.qmax < 3)
    throw Error(Errc::InvalidArgument, "pmax and qmax must be at least 3");
  if (options.n_max < 1 || options.n_max % 2 == 0)
    throw Error(Errc::InvalidArgument, "n_max must be odd and positive");

  const std::vector<std::uint64_t> primes_p = odd_primes_up_to(options.pmax);
  const std::vector<std::uint64_t> primes_q = odd_primes_up_to(options.qmax);

  struct Cell {
    std::uint64_t p;
    std::uint64_t q;  // 0 marks a single-prime cell
  };
  std::vector<Cell> cells;
  for (std::uint64_t p : primes_p) cells.push_back({p, 0});
  for (std::uint64_t p : primes_p) {
    for (std::uint64_t q : primes_q) {
      if (p != q) cells.push_back({p, q});
    }
  }

  auto run_cell = [&](const Cell& cell) {
    std::vector<ProofStep> steps;
    if (cell.q == 0) {
      const OddPrime p(cell.p);
      const VectorSource source(options.budgets, options.fault);
      append(steps, verify_s2_identities(p, source));
      for (int n = 1; n <= options.n_max; ++n)
        append(steps, verify_scaling_and_zero(p, n, source));
      append(steps, verify_recurrence_chain(p, options.n_max, source));
    } else {
      const OddPrime p(cell.p);
      const OddPrime q(cell.q);
      append(steps, verify_congruences(p, q, options.budgets));
      // The law is symmetric, so each unordered pair is certified once: on
      // the (p < q) orientation, or on whichever orientation the ranges
      // admit when the mirrored pair is outside them.
      const bool mirrored = cell.q <= options.pmax && cell.p <= options.qmax;
      if (cell.p < cell.q || !mirrored) steps.push_back(verify_reciprocity(p, q));
    }
    return steps;
  };

  std::vector<std::vector<ProofStep>> results(cells.size());
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> done{0};
  std::mutex progress_mutex;
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= cells.size()) return;
      try {
        results[i] = run_cell(cells[i]);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        return;
      }
      const std::size_t finished = done.fetch_add(1) + 1;
      if (options.progress) {
        std::lock_guard<std::mutex> lock(progress_mutex);
        options.progress(finished, cells.size());
      }
    }
  };

  unsigned threads = options.threads ? options.threads : std::thread::hardware_concurrency();
  if (threads == 0) threads = 1;
  threads = static_cast<unsigned>(
      std::min<std::size_t>(threads, cells.empty() ? 1 : cells.size()));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  ProofReport report;
  report.params = {{"pmax", options.pmax},
                   {"qmax", options.qmax},
                   {"n_max", static_cast<std::uint64_t>(options.n_max)},
                   {"enumeration_limit", options.budgets.enumeration_limit},
                   {"exact_order_limit",
                    static_cast<std::uint64_t>(options.budgets.exact_order_limit)}};
  for (std::vector<ProofStep>& cell_steps : results) {
    for (ProofStep& step : cell_steps) report.steps.push_back(std::move(step));
  }
  std::stable_sort(report.steps.begin(), report.steps.end(),
                   [](const ProofStep& a, const ProofStep& b) {
                     return std::make_tuple(a.p, a.q, static_cast<int>(a.id)) <
                            std::make_tuple(b.p, b.q, static_cast<int>(b.id));
                   });
  report.summary = tally(report.steps);
  return report;
}

}  // namespace qrlab
