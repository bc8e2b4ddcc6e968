#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace collapse {

struct ConvergenceLevel {
  std::size_t n = 0;
  double h = 0.0;  // largest grid spacing
  double residual = 0.0;
};

// Residuals of one identity on successively refined grids. Passes when the
// finest residual is within `exact_tol` or the observed order (coarsest to
// finest level) reaches `min_order - order_slack`; a second-order residual
// usually approaches 2 from one side, the slack admits approach from below.
struct ConvergenceReport {
  std::string name;
  std::vector<ConvergenceLevel> levels;
  std::optional<double> order;
  double exact_tol = 1e-8;
  double min_order = 2.0;
  double order_slack = 0.05;
  bool gated = true;
  bool passed = false;
};

// log(e0 / e1) / log(h0 / h1); empty when a residual is not positive.
std::optional<double> observed_order(const ConvergenceLevel& coarse, const ConvergenceLevel& fine);

void finish(ConvergenceReport& report);

nlohmann::ordered_json to_json(const ConvergenceReport& report);

}  // namespace collapse
