#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "collapse/geometry.hpp"
#include "collapse/horizon.hpp"
#include "collapse/radial_data.hpp"

namespace collapse {

enum class Mode { future, past };

std::string_view to_string(Mode mode);
Mode parse_mode(std::string_view text);

struct CriterionRow {
  double r = 0.0;
  double lhs_matter = 0.0;   // min over the ball of mu -+ J(n)
  double lhs_bending = 0.0;  // (3 / 32 pi) theta+ theta-(r)
  double rhs = 0.0;          // (3/2) Rad / Vol
  double margin = 0.0;
  bool fires = false;        // margin > 0, strictly
  bool horizon_in_ball = false;
};

// Sufficient condition for a trapped surface inside the centered ball B_r:
//   min_{B_r}(mu -+ J(n)) + (3 / 32 pi) theta+ theta-(r) > (3/2) Rad(B_r) / Vol(B_r),
// with the upper sign for future and the lower for past trapped surfaces.
struct CriterionReport {
  Mode mode = Mode::future;
  std::vector<CriterionRow> rows;  // every grid radius r > 0
  std::optional<double> first_firing_radius;
  bool dec_holds = true;
  std::size_t violations = 0;  // rows that fire with no horizon or trapped sphere in B_r
  bool consistent() const { return violations == 0; }
};

// The ball minimum is a running minimum over nodes; the center node carries
// the one-sided limit of mu -+ J(n). Throws DataError for annulus domains.
CriterionReport trapped_surface_criterion(const GeometryProfile& profile,
                                          const HorizonScan& scan, Mode mode);

struct MalecRow {
  double r = 0.0;
  double lhs = 0.0;        // 4 pi int (mu -+ Jn) rho^2 sqrt(g11) dr
  double lhs_coord = 0.0;  // the same with the coordinate measure dr
  double rhs = 0.0;        // Rad(B_r)
  bool fires = false;
  bool fires_coord = false;
};

struct MalecReport {
  Mode mode = Mode::future;
  bool maximal = true;  // |Tr_g k| <= tol * max |k| everywhere
  double max_trace = 0.0;
  std::vector<MalecRow> rows;
  std::optional<double> first_firing_radius;
  // Rows where the two measures differ by more than 0.1%.
  std::size_t measure_disagreements = 0;
};

MalecReport malec_omurchadha_criterion(const InitialData& data, const GeometryProfile& profile,
                                       Mode mode, double max_trace_tol = 1e-8);

struct SweepConfig {
  std::uint64_t seed = 20240601;
  std::size_t trials = 200;          // accepted (DEC-satisfying) draws
  std::size_t max_attempts = 10000;
  std::size_t grid_count = 257;
  // constant_density_star: compactness c r_*^2 and star radius.
  double cds_compactness_min = 0.05;
  double cds_compactness_max = 0.95;
  double cds_radius_min = 0.5;
  double cds_radius_max = 10.0;
  // uniform_collapse: K0, L, and beta as a fraction of the DEC threshold
  // (3/2) K0 L. Fractions above one produce draws that are discarded.
  double uc_k0_min = 0.25;
  double uc_k0_max = 4.0;
  double uc_scale_min = 0.5;
  double uc_scale_max = 2.0;
  double uc_beta_fraction_min = 0.0;
  double uc_beta_fraction_max = 1.1;
  // Domain radius relative to the family's natural length (r_* or 1/K0).
  double extent_min = 0.5;
  double extent_max = 3.0;
};

struct SweepTrial {
  std::size_t index = 0;
  Family family = Family::minkowski;
  FamilySpec spec;
  bool dec_holds = true;
  std::size_t firing_rows = 0;
  std::size_t violations = 0;
  double max_margin = 0.0;  // largest margin over both modes
};

struct SweepSummary {
  std::size_t trials = 0;
  std::size_t attempts = 0;
  std::size_t discarded_non_dec = 0;
  std::size_t firing_rows = 0;
  std::size_t firing_trials = 0;
  std::size_t violations = 0;
  // Closest approach to firing among trials that never fire.
  double near_miss_margin = 0.0;
  std::vector<SweepTrial> accepted;
};

// Random DEC ball data from constant_density_star and uniform_collapse;
// counts rows where the criterion fires although B_r holds no horizon.
// Draws are generated sequentially from the seed and evaluated in parallel.
SweepSummary soundness_sweep(const SweepConfig& config);

}  // namespace collapse
