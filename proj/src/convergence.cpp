#include "collapse/convergence.hpp"

#include <cmath>

namespace collapse {

std::optional<double> observed_order(const ConvergenceLevel& coarse, const ConvergenceLevel& fine) {
  if (!(coarse.residual > 0.0) || !(fine.residual > 0.0) || !(coarse.h > fine.h)) {
    return std::nullopt;
  }
  return std::log(coarse.residual / fine.residual) / std::log(coarse.h / fine.h);
}

void finish(ConvergenceReport& report) {
  report.order.reset();
  report.passed = false;
  if (report.levels.empty()) return;
  const double finest = report.levels.back().residual;
  if (report.levels.size() >= 2) {
    report.order = observed_order(report.levels.front(), report.levels.back());
  }
  const bool ordered = report.order && *report.order >= report.min_order - report.order_slack;
  report.passed = finest <= report.exact_tol || (ordered && std::isfinite(finest));
}

nlohmann::ordered_json to_json(const ConvergenceReport& report) {
  nlohmann::ordered_json levels = nlohmann::ordered_json::array();
  for (const auto& l : report.levels) {
    levels.push_back({{"n", l.n}, {"h", l.h}, {"residual", l.residual}});
  }
  nlohmann::ordered_json j;
  j["name"] = report.name;
  j["levels"] = levels;
  j["order"] = report.order ? nlohmann::ordered_json(*report.order) : nlohmann::ordered_json();
  j["exact_tol"] = report.exact_tol;
  j["min_order"] = report.min_order;
  j["order_slack"] = report.order_slack;
  j["gated"] = report.gated;
  j["passed"] = report.passed;
  return j;
}

}  // namespace collapse
