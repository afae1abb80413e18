#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <variant>
#include <vector>

#include "qrlab/charsum.hpp"

namespace qrlab {

// One entry per displayed identity in the argument chain, from the S_2 values
// up to the reciprocity law itself.
enum class StepId {
  S2Values,
  SnZero,
  Scaling,
  Recurrence,
  ClosedForm,
  EulerCongruence,
  OrbitCongruence,
  ReciprocityLaw,
};

const char* step_id_name(StepId id);

enum class StepStatus { Passed, Failed, Skipped };

using ParamValue = std::variant<std::uint64_t, std::string>;
using StepParams = std::vector<std::pair<std::string, ParamValue>>;

// A single certified identity instance. For evaluated steps the invariant is
// status == Passed iff lhs == rhs; congruence steps record both sides as
// canonical residues in [0, modulus). Skipped steps carry a reason instead of
// values.
struct ProofStep {
  StepId id;
  std::uint64_t p = 0;
  std::uint64_t q = 0;  // 0 for single-prime steps
  StepParams params;
  BigInt lhs;
  BigInt rhs;
  std::optional<std::uint64_t> modulus;
  StepStatus status = StepStatus::Skipped;
  std::string skip_reason;

  bool passed() const noexcept { return status == StepStatus::Passed; }
};

struct ProofSummary {
  std::uint64_t passed = 0;
  std::uint64_t failed = 0;
  std::uint64_t skipped = 0;
};

ProofSummary tally(const std::vector<ProofStep>& steps);

struct ProofReport {
  std::vector<std::pair<std::string, std::uint64_t>> params;  // range metadata
  std::vector<ProofStep> steps;
  ProofSummary summary;
};

// Testing aid: bump one entry of the Exact vector for (p, order) by delta
// before any checks read it. Lets the suite demonstrate that a corrupted
// value fails exactly the steps that depend on it.
struct FaultInjection {
  std::uint64_t p = 0;
  int order = 0;
  std::uint64_t t = 0;
  BigInt delta = 1;
};

// Hands character-sum vectors to the verify functions, caching per
// (p, order, mode) and applying the optional fault. Not thread-safe; use one
// instance per worker.
class VectorSource {
 public:
  VectorSource() = default;
  explicit VectorSource(Budgets budgets, std::optional<FaultInjection> fault = std::nullopt)
      : budgets_(budgets), fault_(std::move(fault)) {}

  const CharSumVector& get(OddPrime p, int order, Mode mode) const;
  const Budgets& budgets() const noexcept { return budgets_; }

 private:
  using Key = std::tuple<std::uint64_t, int, bool, std::uint64_t>;
  Budgets budgets_;
  std::optional<FaultInjection> fault_;
  mutable std::map<Key, CharSumVector> cache_;
};

// S_2(0) = (-1/p)(p-1), S_2(1) = -(-1/p), and S_2 constant on the units, all
// read off the order-2 convolution vector.
std::vector<ProofStep> verify_s2_identities(OddPrime p, const VectorSource& source = {});

// S_n(0) = 0 for odd n, plus the scaling identity
// S_n(t) = (a/p)^n S_n(t/a) for every unit a, checked entrywise.
std::vector<ProofStep> verify_scaling_and_zero(OddPrime p, int order,
                                               const VectorSource& source = {});

// Walks n = 1, 3, ..., max_order: each convolution with S_2 must multiply
// S_n(1) by (-1/p) p, and every S_n(1) must match the closed form.
std::vector<ProofStep> verify_recurrence_chain(OddPrime p, int max_order,
                                               const VectorSource& source = {});

// S_q(1) mod q three independent ways (closed form mod q, Modular(q)
// convolution, orbit shortcut), each checked against (p/q)(-1)^(...) and
// against (q/p), with the symbols from legendre_euler. When the enumeration
// budget allows it, also decomposes the tuples at t = 1 into shift orbits and
// checks the counting identity and the fixed-term congruence.
std::vector<ProofStep> verify_congruences(OddPrime p, OddPrime q, const Budgets& budgets = {});

// The law itself, (p/q)(q/p) = (-1)^(((p-1)/2)((q-1)/2)), via legendre_euler
// alone; end-to-end check independent of every character-sum pipeline.
ProofStep verify_reciprocity(OddPrime p, OddPrime q);

struct SuiteOptions {
  std::uint64_t pmax = 200;
  std::uint64_t qmax = 50;
  int n_max = 9;  // must be odd
  Budgets budgets;
  unsigned threads = 0;  // 0 = hardware concurrency
  std::optional<FaultInjection> fault;
  std::function<void(std::size_t done, std::size_t total)> progress;
};

// Runs every verify_* over all odd primes p <= pmax and ordered prime pairs
// (p <= pmax, q <= qmax, p != q). Steps come back sorted by (p, q, step_id);
// two runs with equal parameters produce identical reports regardless of the
// thread count. Budget-excluded checks appear as skipped steps, never
// silently.
ProofReport run_suite(const SuiteOptions& options);

}  // namespace qrlab
