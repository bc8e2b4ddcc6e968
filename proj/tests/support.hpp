#pragma once

#include <cmath>
#include <cstddef>
#include <optional>

#include "collapse/radial_data.hpp"

namespace collapse::test {

inline constexpr double kPi = 3.14159265358979323846;

inline FamilySpec spec_of(Family family, DomainKind domain, double r_min, double r_max,
                          std::size_t n, bool tabulated = false) {
  FamilySpec s;
  s.family = family;
  s.grid.domain = domain;
  s.grid.r_min = r_min;
  s.grid.r_max = r_max;
  s.grid.count = n;
  s.tabulated = tabulated;
  return s;
}

inline FamilySpec ball(Family family, double r_max, std::size_t n, bool tabulated = false) {
  return spec_of(family, DomainKind::ball, 0.0, r_max, n, tabulated);
}

inline FamilySpec annulus(Family family, double r_min, double r_max, std::size_t n,
                          bool tabulated = false) {
  return spec_of(family, DomainKind::annulus, r_min, r_max, n, tabulated);
}

inline FamilySpec uniform_collapse(double k0, double beta, double L, double r_max, std::size_t n,
                                   bool tabulated = false) {
  FamilySpec s = ball(Family::uniform_collapse, r_max, n, tabulated);
  s.collapse_rate = k0;
  s.anisotropy = beta;
  s.scale = L;
  return s;
}

inline FamilySpec blob(double amplitude, double width, double r_max, std::size_t n,
                       bool tabulated = false) {
  FamilySpec s = ball(Family::gaussian_blob, r_max, n, tabulated);
  s.amplitude = amplitude;
  s.width = width;
  return s;
}

inline Field negated(const Field& f) {
  return Field::analytic(
      [f](double r) {
        const Jet j = f.at(r);
        return Jet{-j.value, -j.d1, -j.d2};
      },
      f.units());
}

// The same metric with k replaced by -k (time reversal).
inline InitialData time_reversed(const InitialData& d) {
  return InitialData(d.grid(), d.g11(), d.rho(), negated(d.ka()), negated(d.kb()),
                     d.label() + " reversed");
}

// Index of the node closest to r.
inline std::size_t node_index(const InitialData& d, double r) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < d.grid().size(); ++i) {
    if (std::abs(d.grid()[i] - r) < std::abs(d.grid()[best] - r)) best = i;
  }
  return best;
}

}  // namespace collapse::test
