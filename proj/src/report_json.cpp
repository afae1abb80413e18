#include "qrlab/report_json.hpp"

namespace qrlab {

nlohmann::json to_json_object(const ProofReport& report) {
  nlohmann::json steps = nlohmann::json::array();
  for (const ProofStep& step : report.steps) {
    nlohmann::json js;
    js["step_id"] = step_id_name(step.id);
    nlohmann::json params = nlohmann::json::object();
    params["p"] = step.p;
    if (step.q != 0) params["q"] = step.q;
    for (const auto& [key, value] : step.params) {
      std::visit([&params, k = key](const auto& v) { params[k] = v; }, value);
    }
    js["params"] = std::move(params);
    if (step.status == StepStatus::Skipped) {
      js["passed"] = false;
      js["skipped_reason"] = step.skip_reason;
    } else {
      js["lhs"] = step.lhs.str();
      js["rhs"] = step.rhs.str();
      if (step.modulus) js["modulus"] = std::to_string(*step.modulus);
      js["passed"] = step.status == StepStatus::Passed;
    }
    steps.push_back(std::move(js));
  }

  nlohmann::json params = nlohmann::json::object();
  for (const auto& [key, value] : report.params) params[key] = value;

  nlohmann::json root;
  root["tool"] = kToolName;
  root["version"] = kToolVersion;
  root["params"] = std::move(params);
  root["steps"] = std::move(steps);
  root["summary"] = {{"passed", report.summary.passed},
                     {"failed", report.summary.failed},
                     {"skipped", report.summary.skipped}};
  return root;
}

std::string to_json_text(const ProofReport& report) {
  return to_json_object(report).dump(2) + "\n";
}

}  // namespace qrlab
