#pragma once

#include <string>

#include "json.hpp"
#include "qrlab/proofcheck.hpp"

namespace qrlab {

inline constexpr const char* kToolName = "qrlab";
inline constexpr const char* kToolVersion = "0.1.0";

// Machine-checkable report schema:
//   {"tool", "version", "params", "steps": [{"step_id", "params", "lhs",
//    "rhs", "modulus"?, "passed"}], "summary": {"passed", "failed",
//    "skipped"}}
// lhs/rhs/modulus are decimal strings (exact values can exceed the 53-bit
// range safe for JSON consumers); everything else is a plain number. Skipped
// steps replace the value fields with "skipped_reason".
nlohmann::json to_json_object(const ProofReport& report);

// Two-space indented dump with a trailing newline; keys are emitted sorted,
// so parsing and re-serializing reproduces the text byte for byte.
std::string to_json_text(const ProofReport& report);

}  // namespace qrlab
