// qrlab command line: Legendre symbol evaluators, character sums S_n(t),
// cyclic-shift orbit decompositions, per-pair proof verification, the full
// verification suite, and micro-benchmarks.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "qrlab/charsum.hpp"
#include "qrlab/legendre.hpp"
#include "qrlab/proofcheck.hpp"
#include "qrlab/report_json.hpp"

namespace {

using qrlab::BigInt;

// Exit codes: 0 success, 1 verification failure, 2 usage/validation error,
// 3 budget exceeded (or skipped steps under --strict).
int exit_code_for(const qrlab::Error& e) {
  if (qrlab::is_budget_error(e.code())) return 3;
  if (e.code() == qrlab::Errc::InternalInconsistency) return 1;
  return 2;
}

unsigned resolve_threads(unsigned flag) {
  if (flag) return flag;
  if (const char* env = std::getenv("QRLAB_THREADS")) {
    char* end = nullptr;
    const unsigned long parsed = std::strtoul(env, &end, 10);
    if (end && *end == '\0' && parsed > 0) return static_cast<unsigned>(parsed);
    std::cerr << "qrlab: ignoring invalid QRLAB_THREADS value '" << env << "'\n";
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

std::string param_text(const qrlab::ParamValue& value) {
  if (const auto* n = std::get_if<std::uint64_t>(&value)) return std::to_string(*n);
  return std::get<std::string>(value);
}

std::string step_text(const qrlab::ProofStep& step) {
  std::string out;
  switch (step.status) {
    case qrlab::StepStatus::Passed: out = "PASS "; break;
    case qrlab::StepStatus::Failed: out = "FAIL "; break;
    case qrlab::StepStatus::Skipped: out = "SKIP "; break;
  }
  out += qrlab::step_id_name(step.id);
  out += " p=" + std::to_string(step.p);
  if (step.q) out += " q=" + std::to_string(step.q);
  for (const auto& [key, value] : step.params) out += " " + key + "=" + param_text(value);
  if (step.status == qrlab::StepStatus::Skipped) {
    out += " reason=\"" + step.skip_reason + "\"";
  } else {
    out += " lhs=" + step.lhs.str() + " rhs=" + step.rhs.str();
    if (step.modulus) out += " mod=" + std::to_string(*step.modulus);
  }
  return out;
}

void print_report_text(const qrlab::ProofReport& report, bool only_problems) {
  for (const qrlab::ProofStep& step : report.steps) {
    if (only_problems && step.status == qrlab::StepStatus::Passed) continue;
    std::cout << step_text(step) << "\n";
  }
  std::cout << "summary: passed=" << report.summary.passed
            << " failed=" << report.summary.failed
            << " skipped=" << report.summary.skipped << "\n";
}

struct SymbolArgs {
  std::int64_t a = 0;
  std::uint64_t p = 0;
  std::string method = "euler";
};

int run_symbol(const SymbolArgs& args) {
  const qrlab::OddPrime p = qrlab::make_odd_prime(args.p);
  const qrlab::Residue a = qrlab::Residue::from_int(args.a, p);
  if (args.method == "all") {
    const int euler = qrlab::legendre_euler(a).value();
    const int brute = qrlab::legendre_brute(a).value();
    const int reciprocity = qrlab::legendre_reciprocity(a).value();
    std::cout << "euler: " << euler << "\n"
              << "brute: " << brute << "\n"
              << "reciprocity: " << reciprocity << "\n";
    if (euler != brute || euler != reciprocity) {
      std::cerr << "qrlab: evaluators disagree; this is an implementation bug\n";
      return 1;
    }
    return 0;
  }
  int value = 0;
  if (args.method == "euler") value = qrlab::legendre_euler(a).value();
  else if (args.method == "brute") value = qrlab::legendre_brute(a).value();
  else value = qrlab::legendre_reciprocity(a).value();
  std::cout << value << "\n";
  return 0;
}

struct CharsumArgs {
  std::uint64_t p = 0;
  int n = 0;
  std::optional<std::int64_t> t;
  std::string method = "conv";
  std::optional<std::uint64_t> mod;
  std::uint64_t budget = qrlab::Budgets{}.enumeration_limit;
  int max_order = qrlab::Budgets{}.exact_order_limit;
};

std::string reduced_text(const BigInt& value, const std::optional<std::uint64_t>& mod) {
  if (!mod) return value.str();
  BigInt r = value % *mod;
  if (r < 0) r += *mod;
  return r.str();
}

int run_charsum(const CharsumArgs& args) {
  const qrlab::OddPrime p = qrlab::make_odd_prime(args.p);
  qrlab::Budgets budgets;
  budgets.enumeration_limit = args.budget;
  budgets.exact_order_limit = args.max_order;
  if (args.mod) qrlab::Mode::modular(*args.mod);  // validate early

  auto entry = [&](std::uint64_t t) -> std::string {
    const qrlab::Residue target(t, p);
    if (args.method == "brute") return reduced_text(qrlab::charsum_brute(p, args.n, target, budgets), args.mod);
    if (args.method == "closed") return reduced_text(qrlab::charsum_closed(p, args.n, target), args.mod);
    const qrlab::Mode mode = args.mod ? qrlab::Mode::modular(*args.mod) : qrlab::Mode::exact();
    const qrlab::CharSumVector vec = qrlab::charsum_vector(p, args.n, mode, budgets);
    return mode.is_exact() ? vec.exact_at(t).str() : std::to_string(vec.modular_at(t));
  };

  if (args.t) {
    std::cout << entry(qrlab::Residue::from_int(*args.t, p).value()) << "\n";
    return 0;
  }
  if (args.method == "conv") {
    // Build the vector once instead of once per entry.
    const qrlab::Mode mode = args.mod ? qrlab::Mode::modular(*args.mod) : qrlab::Mode::exact();
    const qrlab::CharSumVector vec = qrlab::charsum_vector(p, args.n, mode, budgets);
    std::cout << "[";
    for (std::uint64_t t = 0; t < p.value(); ++t) {
      if (t) std::cout << ", ";
      std::cout << (mode.is_exact() ? vec.exact_at(t).str() : std::to_string(vec.modular_at(t)));
    }
    std::cout << "]\n";
    return 0;
  }
  std::cout << "[";
  for (std::uint64_t t = 0; t < p.value(); ++t) {
    if (t) std::cout << ", ";
    std::cout << entry(t);
  }
  std::cout << "]\n";
  return 0;
}

struct OrbitArgs {
  std::uint64_t p = 0;
  std::uint64_t q = 0;
  std::int64_t t = 0;
  std::uint64_t budget = qrlab::Budgets{}.enumeration_limit;
};

int run_orbit(const OrbitArgs& args) {
  const qrlab::OddPrime p = qrlab::make_odd_prime(args.p);
  const qrlab::OddPrime q = qrlab::make_odd_prime(args.q);
  qrlab::Budgets budgets;
  budgets.enumeration_limit = args.budget;
  const qrlab::Residue target = qrlab::Residue::from_int(args.t, p);
  const qrlab::OrbitStats stats = qrlab::orbit_decompose(p, q, target, budgets);
  BigInt total_mod = stats.total % args.q;
  if (total_mod < 0) total_mod += args.q;
  BigInt fixed_mod = BigInt(stats.fixed_contribution) % args.q;
  if (fixed_mod < 0) fixed_mod += args.q;
  std::cout << "p=" << args.p << " q=" << args.q << " t=" << target.value() << "\n"
            << "n_fixed=" << stats.n_fixed << "\n"
            << "n_free=" << stats.n_free << "\n"
            << "fixed_contribution=" << stats.fixed_contribution << "\n"
            << "total=" << stats.total.str() << "\n"
            << "total_mod_q=" << total_mod.str() << "\n"
            << "fixed_mod_q=" << fixed_mod.str() << "\n"
            << "orbit_symbol=" << qrlab::sq1_mod_q_orbit(p, q).value() << "\n";
  return 0;
}

struct VerifyArgs {
  std::uint64_t p = 0;
  std::uint64_t q = 0;
  bool json = false;
  std::uint64_t budget = qrlab::Budgets{}.enumeration_limit;
};

int run_verify(const VerifyArgs& args) {
  const qrlab::OddPrime p = qrlab::make_odd_prime(args.p);
  const qrlab::OddPrime q = qrlab::make_odd_prime(args.q);
  qrlab::Budgets budgets;
  budgets.enumeration_limit = args.budget;

  qrlab::ProofReport report;
  report.params = {{"p", args.p}, {"q", args.q}};
  for (qrlab::ProofStep& s : qrlab::verify_congruences(p, q, budgets))
    report.steps.push_back(std::move(s));
  for (qrlab::ProofStep& s : qrlab::verify_congruences(q, p, budgets))
    report.steps.push_back(std::move(s));
  report.steps.push_back(qrlab::verify_reciprocity(p, q));
  std::stable_sort(report.steps.begin(), report.steps.end(),
                   [](const qrlab::ProofStep& a, const qrlab::ProofStep& b) {
                     return std::make_tuple(a.p, a.q, static_cast<int>(a.id)) <
                            std::make_tuple(b.p, b.q, static_cast<int>(b.id));
                   });
  report.summary = qrlab::tally(report.steps);

  if (args.json) std::cout << qrlab::to_json_text(report);
  else print_report_text(report, /*only_problems=*/false);
  return report.summary.failed ? 1 : 0;
}

struct SuiteArgs {
  std::uint64_t pmax = 200;
  std::uint64_t qmax = 50;
  int nmax = 9;
  bool json = false;
  bool strict = false;
  unsigned threads = 0;
  std::uint64_t budget = qrlab::Budgets{}.enumeration_limit;
  int max_order = qrlab::Budgets{}.exact_order_limit;
  std::string inject_fault;
};

qrlab::FaultInjection parse_fault(const std::string& text) {
  std::vector<std::string> parts;
  std::string current;
  for (char c : text) {
    if (c == ',') {
      parts.push_back(current);
      current.clear();
    } else {
      current += c;
    }
  }
  parts.push_back(current);
  if (parts.size() != 3 && parts.size() != 4)
    throw qrlab::Error(qrlab::Errc::InvalidArgument,
                       "--inject-fault expects p,n,t or p,n,t,delta");
  try {
    qrlab::FaultInjection fault;
    fault.p = std::stoull(parts[0]);
    fault.order = std::stoi(parts[1]);
    fault.t = std::stoull(parts[2]);
    if (parts.size() == 4) fault.delta = BigInt(std::stoll(parts[3]));
    return fault;
  } catch (const std::exception&) {
    throw qrlab::Error(qrlab::Errc::InvalidArgument, "--inject-fault has a malformed field");
  }
}

int run_suite_cmd(const SuiteArgs& args) {
  qrlab::SuiteOptions options;
  options.pmax = args.pmax;
  options.qmax = args.qmax;
  options.n_max = args.nmax;
  options.budgets.enumeration_limit = args.budget;
  options.budgets.exact_order_limit = args.max_order;
  options.threads = resolve_threads(args.threads);
  if (!args.inject_fault.empty()) options.fault = parse_fault(args.inject_fault);
  options.progress = [](std::size_t done, std::size_t total) {
    if (done == total || done % 64 == 0)
      std::cerr << "suite: " << done << "/" << total << " cells\r" << (done == total ? "\n" : "");
  };

  const qrlab::ProofReport report = qrlab::run_suite(options);
  if (args.json) std::cout << qrlab::to_json_text(report);
  else print_report_text(report, /*only_problems=*/true);
  if (report.summary.failed) return 1;
  if (args.strict && report.summary.skipped) return 3;
  return 0;
}

struct BenchArgs {
  std::string op = "symbol";
  std::uint64_t pmax = 0;
  std::string sizes = "101,1009,10007";
  std::uint64_t p = 101;
  int n = 5;
  int repetitions = 5;
};

double median_of(std::vector<double> samples) {
  std::sort(samples.begin(), samples.end());
  const std::size_t mid = samples.size() / 2;
  if (samples.size() % 2 == 1) return samples[mid];
  return (samples[mid - 1] + samples[mid]) / 2.0;
}

std::uint64_t largest_prime_at_most(std::uint64_t n) {
  for (std::uint64_t candidate = n | 1; candidate >= 3; candidate -= 2) {
    if (qrlab::is_prime_u64(candidate)) return candidate;
  }
  throw qrlab::Error(qrlab::Errc::InvalidArgument, "no odd prime at or below the requested size");
}

int run_bench(const BenchArgs& args) {
  if (args.repetitions < 1)
    throw qrlab::Error(qrlab::Errc::InvalidArgument, "repetitions must be at least 1");
  using clock = std::chrono::steady_clock;

  if (args.op == "symbol") {
    std::vector<std::uint64_t> sizes;
    if (args.pmax) {
      sizes.push_back(args.pmax);
    } else {
      std::string current;
      for (char c : args.sizes + ",") {
        if (c != ',') {
          current += c;
          continue;
        }
        if (current.empty()) continue;
        try {
          sizes.push_back(std::stoull(current));
        } catch (const std::exception&) {
          throw qrlab::Error(qrlab::Errc::InvalidArgument, "--sizes must be a comma list of integers");
        }
        current.clear();
      }
    }
    if (sizes.empty())
      throw qrlab::Error(qrlab::Errc::InvalidArgument, "no benchmark sizes given");
    for (std::uint64_t size : sizes) {
      const qrlab::OddPrime p(largest_prime_at_most(size));
      std::mt19937_64 rng(12345);
      std::uniform_int_distribution<std::uint64_t> dist(0, p.value() - 1);
      std::vector<qrlab::Residue> inputs;
      inputs.reserve(256);
      for (int i = 0; i < 256; ++i) inputs.emplace_back(dist(rng), p);

      std::cout << "op=symbol p=" << p.value() << " reps=" << args.repetitions
                << " calls_per_sample=" << inputs.size() << "\n";
      const std::pair<const char*, int (*)(qrlab::Residue)> evaluators[] = {
          {"euler", [](qrlab::Residue a) { return qrlab::legendre_euler(a).value(); }},
          {"brute", [](qrlab::Residue a) { return qrlab::legendre_brute(a).value(); }},
          {"reciprocity",
           [](qrlab::Residue a) { return qrlab::legendre_reciprocity(a).value(); }}};
      long long checksum = 0;
      for (const auto& [name, evaluate] : evaluators) {
        std::vector<double> samples;
        for (int rep = 0; rep < args.repetitions; ++rep) {
          const auto start = clock::now();
          for (const qrlab::Residue& a : inputs) checksum += evaluate(a);
          const std::chrono::duration<double, std::micro> elapsed = clock::now() - start;
          samples.push_back(elapsed.count() / static_cast<double>(inputs.size()));
        }
        std::cout << "  " << name << " median_us_per_call=" << median_of(samples) << "\n";
      }
      if (checksum == std::numeric_limits<long long>::min()) std::cerr << checksum;
    }
    return 0;
  }

  if (args.op == "charsum") {
    const qrlab::OddPrime p = qrlab::make_odd_prime(args.p);
    qrlab::Budgets budgets;
    budgets.enumeration_limit = 250'000'000;  // benchmark headroom
    budgets.exact_order_limit = std::max(qrlab::Budgets{}.exact_order_limit, args.n);
    std::cout << "op=charsum p=" << args.p << " n=" << args.n << " reps=" << args.repetitions
              << "\n";
    BigInt checksum = 0;
    std::vector<double> conv_samples;
    for (int rep = 0; rep < args.repetitions; ++rep) {
      const auto start = clock::now();
      const qrlab::CharSumVector vec =
          qrlab::charsum_vector(p, args.n, qrlab::Mode::exact(), budgets);
      const std::chrono::duration<double, std::micro> elapsed = clock::now() - start;
      conv_samples.push_back(elapsed.count());
      checksum += vec.exact_at(1);
    }
    std::cout << "  conv_full_vector median_us=" << median_of(conv_samples) << "\n";
    if (qrlab::power_fits(p.value(), static_cast<std::uint64_t>(args.n) - 1,
                          budgets.enumeration_limit)) {
      std::vector<double> brute_samples;
      for (int rep = 0; rep < args.repetitions; ++rep) {
        const auto start = clock::now();
        checksum += qrlab::charsum_brute(p, args.n, qrlab::Residue(1, p), budgets);
        const std::chrono::duration<double, std::micro> elapsed = clock::now() - start;
        brute_samples.push_back(elapsed.count());
      }
      std::cout << "  brute_single_entry median_us=" << median_of(brute_samples) << "\n";
    } else {
      std::cout << "  brute_single_entry skipped (enumeration budget)\n";
    }
    if (checksum == -1) std::cerr << "";
    return 0;
  }

  throw qrlab::Error(qrlab::Errc::InvalidArgument, "unknown bench op '" + args.op + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qrlab: quadratic reciprocity laboratory built on character sums over Z_p"};
  app.require_subcommand(1);

  SymbolArgs symbol_args;
  CLI::App* symbol = app.add_subcommand("symbol", "Evaluate the Legendre symbol (a/p)");
  symbol->add_option("a", symbol_args.a, "Integer argument (reduced mod p)")->required();
  symbol->add_option("p", symbol_args.p, "Odd prime modulus")->required();
  symbol->add_option("--method", symbol_args.method, "Evaluator to use")
      ->check(CLI::IsMember({"euler", "brute", "reciprocity", "all"}))
      ->capture_default_str();

  CharsumArgs charsum_args;
  CLI::App* charsum = app.add_subcommand("charsum", "Evaluate S_n(t) or the full vector");
  charsum->add_option("p", charsum_args.p, "Odd prime modulus")->required();
  charsum->add_option("n", charsum_args.n, "Number of coordinates")
      ->required()
      ->check(CLI::PositiveNumber);
  charsum->add_option("t", charsum_args.t, "Target sum; omit for the full vector");
  charsum->add_option("--method", charsum_args.method, "Evaluation strategy")
      ->check(CLI::IsMember({"brute", "conv", "closed"}))
      ->capture_default_str();
  charsum->add_option("--mod", charsum_args.mod, "Work modulo m instead of exactly");
  charsum->add_option("--budget", charsum_args.budget, "Enumeration budget in tuples")
      ->capture_default_str();
  charsum->add_option("--max-order", charsum_args.max_order, "Exact-mode order cap")
      ->capture_default_str();

  OrbitArgs orbit_args;
  CLI::App* orbit = app.add_subcommand("orbit", "Decompose the q-tuples summing to t into cyclic-shift orbits");
  orbit->add_option("p", orbit_args.p, "Odd prime modulus")->required();
  orbit->add_option("q", orbit_args.q, "Odd prime tuple length, distinct from p")->required();
  orbit->add_option("t", orbit_args.t, "Target sum")->required();
  orbit->add_option("--budget", orbit_args.budget, "Enumeration budget in tuples")
      ->capture_default_str();

  VerifyArgs verify_args;
  CLI::App* verify = app.add_subcommand("verify", "Certify the congruence chain and the law for one pair");
  verify->add_option("p", verify_args.p, "First odd prime")->required();
  verify->add_option("q", verify_args.q, "Second odd prime, distinct from p")->required();
  verify->add_flag("--json", verify_args.json, "Emit the JSON report");
  verify->add_option("--budget", verify_args.budget, "Enumeration budget in tuples")
      ->capture_default_str();

  SuiteArgs suite_args;
  CLI::App* suite = app.add_subcommand("suite", "Run every check over prime ranges");
  suite->add_option("--pmax", suite_args.pmax, "Upper bound for p")->capture_default_str();
  suite->add_option("--qmax", suite_args.qmax, "Upper bound for q")->capture_default_str();
  suite->add_option("--nmax", suite_args.nmax, "Largest (odd) character-sum order")
      ->capture_default_str();
  suite->add_flag("--json", suite_args.json, "Emit the JSON report");
  suite->add_flag("--strict", suite_args.strict, "Exit 3 when any step was skipped");
  suite->add_option("--threads", suite_args.threads,
                    "Worker threads (default: QRLAB_THREADS or hardware)");
  suite->add_option("--budget", suite_args.budget, "Enumeration budget in tuples")
      ->capture_default_str();
  suite->add_option("--max-order", suite_args.max_order, "Exact-mode order cap")
      ->capture_default_str();
  suite->add_option("--inject-fault", suite_args.inject_fault,
                    "Testing aid: corrupt the exact vector (p,n) at entry t by delta; format p,n,t[,delta]");

  BenchArgs bench_args;
  CLI::App* bench = app.add_subcommand("bench", "Time the evaluator strategies");
  bench->add_option("--op", bench_args.op, "What to benchmark")
      ->check(CLI::IsMember({"symbol", "charsum"}))
      ->capture_default_str();
  bench->add_option("--pmax", bench_args.pmax, "Single size: largest prime at most pmax");
  bench->add_option("--sizes", bench_args.sizes, "Comma list of sizes (symbol op)")
      ->capture_default_str();
  bench->add_option("--p", bench_args.p, "Prime for the charsum op")->capture_default_str();
  bench->add_option("--n", bench_args.n, "Order for the charsum op")->capture_default_str();
  bench->add_option("--repetitions", bench_args.repetitions, "Timing samples per row")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*symbol) return run_symbol(symbol_args);
    if (*charsum) return run_charsum(charsum_args);
    if (*orbit) return run_orbit(orbit_args);
    if (*verify) return run_verify(verify_args);
    if (*suite) return run_suite_cmd(suite_args);
    if (*bench) return run_bench(bench_args);
  } catch (const qrlab::Error& e) {
    std::cerr << "qrlab: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "qrlab: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
