#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "collapse/geometry.hpp"
#include "collapse/horizon.hpp"
#include "collapse/radial_data.hpp"

namespace collapse {

// Misner-Sharp energy E = (rho/2)(1 - (rho^2/4) theta+ theta-) and its
// proper-radius derivative, both numerically and through the identity
//   dE/dt = 4 pi rho^2 (mu rho_t - Jn k_b rho).
struct EnergyProfile {
  std::vector<double> r;
  std::vector<double> E;
  std::vector<double> E_alt;        // (rho/2)(1 - rho_t^2 + rho^2 k_b^2)
  std::vector<double> dE_numeric;   // chain rule (analytic) or finite differences (tabulated)
  std::vector<double> dE_identity;
  std::vector<double> rho;
  bool finite_difference = false;
};

EnergyProfile misner_sharp(const InitialData& data, const GeometryProfile& profile);

enum class Rigidity { none, minkowski_candidate, schwarzschild_candidate };
std::string_view to_string(Rigidity flag);

struct MonotoneInterval {
  double a = 0.0;
  double b = 0.0;
  RegionKind kind = RegionKind::expanding;
  bool monotone_ok = true;
  std::size_t worst_index = 0;
  double worst_margin = 0.0;  // signed dE_identity at the worst node
};

// Energy checks: E nondecreasing on expanding untrapped intervals and
// nonincreasing on contracting ones (via dE_identity, tolerance -1e-10 scale);
// E >= 0 wherever B_r holds no horizon (balls); E >= rho(r0)/2 beyond the
// outermost root r0; rigidity flags where E = 0 or E = rho(r0)/2 within 1e-8.
struct EnergyBoundsReport {
  bool dec_holds = true;  // the verdicts are advisory when false
  std::vector<MonotoneInterval> intervals;
  std::vector<bool> untrapped;
  std::vector<bool> monotone_ok;
  std::vector<bool> positive_ok;
  std::vector<bool> bound_ok;
  std::vector<Rigidity> rigidity;
  std::optional<double> outermost_root;
  double bound = 0.0;  // rho(r0)/2
  bool all_monotone = true;
  bool all_positive = true;
  bool all_bound = true;
  std::size_t minkowski_flags = 0;
  std::size_t schwarzschild_flags = 0;
  // Whole-data candidacy: every node past the inner boundary (Minkowski) or
  // past r0 (Schwarzschild) is flagged.
  Rigidity candidate = Rigidity::none;
  // Candidacy checked against family metadata, when present.
  std::optional<bool> rigidity_confirmed;
  bool holds() const { return all_monotone && all_positive && all_bound; }
};

EnergyBoundsReport energy_bounds_check(const InitialData& data, const GeometryProfile& profile,
                              const EnergyProfile& energy, const HorizonScan& scan,
                              double monotone_tol = 1e-10, double rigidity_tol = 1e-8);

}  // namespace collapse
