#pragma once

#include <optional>
#include <vector>

#include <json.hpp>

#include "collapse/geometry.hpp"
#include "collapse/radial_data.hpp"

namespace collapse {

struct HorizonRoot {
  double r = 0.0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  int slope_sign = 0;  // sign of d(theta)/dr across the root
};

enum class RegionKind {
  expanding,       // theta+ > 0 and theta- > 0
  contracting,     // theta+ < 0 and theta- < 0
  future_trapped,  // theta+ < 0 < theta-
  past_trapped     // theta- < 0 < theta+
};

std::string_view to_string(RegionKind kind);

struct RegionInterval {
  double a = 0.0;
  double b = 0.0;
  std::size_t first = 0;  // node indices, inclusive
  std::size_t last = 0;
  RegionKind kind = RegionKind::expanding;
};

// Apparent-horizon candidates (zeros of theta+ and theta-) and the maximal node
// runs of constant expansion signs. Untrapped intervals (theta+ theta- > 0)
// and trapped intervals (theta+ theta- < 0) are separated by the one grid cell
// that brackets each root.
struct HorizonScan {
  double inner_boundary = 0.0;
  double outer_boundary = 0.0;
  std::vector<HorizonRoot> future_roots;
  std::vector<HorizonRoot> past_roots;
  std::vector<double> degenerate_future;  // tangential zeros, not refined
  std::vector<double> degenerate_past;
  std::optional<double> outermost_future;
  std::optional<double> outermost_past;
  std::vector<RegionInterval> untrapped;
  std::vector<RegionInterval> trapped;

  bool horizon_free() const;
  // Largest root of either expansion.
  std::optional<double> outermost() const;
};

// Sign changes of theta_pm between nodes are refined by bisection on the
// pointwise expansions (exact for analytic data, cubic-interpolated jets for
// tabulated data).
HorizonScan scan(const InitialData& data, const GeometryProfile& profile);

// True iff a zero of theta+ or theta- lies in (inner boundary, r].
// Throws std::out_of_range for r outside the domain.
bool contains_horizon(const HorizonScan& scan, double r);

nlohmann::json to_json(const HorizonScan& scan);

}  // namespace collapse
