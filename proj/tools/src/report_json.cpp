#include "wigmaj/cli/report_json.hpp"

#include <cmath>
#include <limits>

namespace wigmaj::cli {

namespace {

// Unbounded values are written as the largest double.
double finite(double v) {
  if (std::isnan(v) || std::isinf(v)) return std::numeric_limits<double>::max();
  return v;
}

}  // namespace

nlohmann::ordered_json to_json(const ProofReport& report) {
  nlohmann::ordered_json doc;
  doc["schema_version"] = kProofSchemaVersion;
  doc["overall"] = report.overall;
  doc["tgrid"] = report.tgrid;
  auto& steps = doc["steps"] = nlohmann::ordered_json::array();
  for (const auto& s : report.steps) {
    nlohmann::ordered_json step;
    step["name"] = s.name;
    step["status"] = s.passed ? "pass" : "fail";
    step["residual"] = finite(s.residual);
    if (s.margin) step["margin"] = finite(*s.margin);
    step["citations"] = s.citations;
    step["detail"] = s.detail;
    steps.push_back(std::move(step));
  }
  return doc;
}

nlohmann::ordered_json to_json(const MajorizationVerdict& v) {
  nlohmann::ordered_json doc;
  doc["outcome"] = to_string(v.outcome);
  doc["margin"] = finite(v.margin);
  doc["max_gap"] = finite(v.max_gap);
  doc["tolerance"] = v.tolerance;
  doc["witness_ahead"] = v.witness_ahead ? nlohmann::ordered_json(*v.witness_ahead) : nlohmann::ordered_json();
  doc["witness_behind"] = v.witness_behind ? nlohmann::ordered_json(*v.witness_behind) : nlohmann::ordered_json();
  doc["grid_points"] = v.grid_points;
  return doc;
}

}  // namespace wigmaj::cli
