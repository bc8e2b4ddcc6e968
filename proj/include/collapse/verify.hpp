#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "collapse/convergence.hpp"
#include "collapse/jang.hpp"
#include "collapse/radial_data.hpp"

namespace collapse {

// |dE_numeric - dE_identity| in the max norm on `levels` grids (n, 2n-1, 4n-3, ...).
ConvergenceReport verify_dE_identity(const InitialData& data, int levels = 3);

// Max-norm residual of m_s = (1/4) rho_s rho^2 Rbar on the Jang solution for
// each refinement level.
ConvergenceReport verify_geroch_identity(const InitialData& data, const JangBoundary& bc,
                                         const JangOptions& options = {}, int levels = 3);

// Default boundary condition: the center for balls, the matched condition at
// the inner boundary for annuli.
JangBoundary default_boundary(const InitialData& data);

bool time_symmetric(const InitialData& data);

struct ChainSuite {
  std::size_t radii = 0;          // nodes where the chain was evaluated
  std::optional<double> r_last;   // outermost such node
  bool inequalities_hold = true;  // every line at every radius
  std::vector<double> worst_margin;  // per line, relative to its scale
  bool dec_holds = true;
  ConvergenceReport equality;     // gated on time-symmetric and PG-exact data only
};

// Evaluates the mass chain at every node of the horizon-free part of the
// domain, on each refinement level (inequalities on the finest level).
ChainSuite verify_chain_suite(const InitialData& data, const JangBoundary& bc,
                              const JangOptions& options = {}, int levels = 3);

struct PgOracle {
  bool applicable = false;
  double mass = 0.0;
  double r1 = 0.0;
  double v_rel_error = 0.0;
  double m_error = 0.0;
  double rho_s_error = 0.0;
  double v_rel_error_half_rtol = 0.0;
  bool passed = false;
};

// Painleve-Gullstrand data with the matched condition at the inner boundary:
// v = -sqrt(2m/r), Geroch mass m, rho_s = sqrt(1 - 2m/r).
PgOracle verify_pg_oracle(const InitialData& data, const JangOptions& options = {},
                          double tol = 1e-6);

struct VerifyOptions {
  std::vector<std::string> checks{"geroch", "de", "chain", "pg"};
  int levels = 3;
  std::optional<JangBoundary> bc;
  JangOptions jang;
};

struct VerifyResult {
  nlohmann::ordered_json report;
  bool passed = true;
};

// Runs the requested suites; the report is a pure function of the data, the
// options and `config_digest`.
VerifyResult run_verify(const InitialData& data, const VerifyOptions& options,
                        const std::string& config_digest);

}  // namespace collapse
