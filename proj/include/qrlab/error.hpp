#pragma once

#include <stdexcept>
#include <string>

namespace qrlab {

// Failure classes surfaced across the library. The CLI maps them onto its
// exit codes: validation errors -> 2, budget errors -> 3, internal
// inconsistencies -> 1.
enum class Errc {
  NotPrime,
  NotOdd,
  InvalidArgument,
  ZeroInverse,
  ModulusMismatch,
  ModeMismatch,
  EvenOrder,
  SamePrime,
  OrderBudgetExceeded,
  EnumerationBudgetExceeded,
  FactoringBudgetExceeded,
  InternalInconsistency,
};

constexpr const char* errc_name(Errc c) {
  switch (c) {
    case Errc::NotPrime: return "NotPrime";
    case Errc::NotOdd: return "NotOdd";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::ZeroInverse: return "ZeroInverse";
    case Errc::ModulusMismatch: return "ModulusMismatch";
    case Errc::ModeMismatch: return "ModeMismatch";
    case Errc::EvenOrder: return "EvenOrder";
    case Errc::SamePrime: return "SamePrime";
    case Errc::OrderBudgetExceeded: return "OrderBudgetExceeded";
    case Errc::EnumerationBudgetExceeded: return "EnumerationBudgetExceeded";
    case Errc::FactoringBudgetExceeded: return "FactoringBudgetExceeded";
    case Errc::InternalInconsistency: return "InternalInconsistency";
  }
  return "Unknown";
}

constexpr bool is_budget_error(Errc c) {
  return c == Errc::OrderBudgetExceeded || c == Errc::EnumerationBudgetExceeded ||
         c == Errc::FactoringBudgetExceeded;
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace qrlab
