#include "collapse/energy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "collapse/numerics.hpp"

namespace collapse {

namespace {
constexpr double kPi = std::numbers::pi;
}

std::string_view to_string(Rigidity flag) {
  switch (flag) {
    case Rigidity::none: return "none";
    case Rigidity::minkowski_candidate: return "minkowski_candidate";
    case Rigidity::schwarzschild_candidate: return "schwarzschild_candidate";
  }
  return "?";
}

EnergyProfile misner_sharp(const InitialData& data, const GeometryProfile& prof) {
  const std::size_t n = prof.size();
  EnergyProfile e;
  e.r = prof.r;
  e.rho = prof.rho;
  e.finite_difference = !data.is_analytic();
  for (auto* v : {&e.E, &e.E_alt, &e.dE_numeric, &e.dE_identity}) v->assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double rho = prof.rho[i];
    const double rho_t = prof.rho_t[i];
    const double kb = prof.kb[i];
    e.E_alt[i] = 0.5 * rho * (1.0 - rho_t * rho_t + rho * rho * kb * kb);
    if (rho == 0.0) continue;  // regular center: E and both derivatives vanish
    e.E[i] = 0.5 * rho * (1.0 - 0.25 * rho * rho * prof.theta_plus[i] * prof.theta_minus[i]);
    e.dE_identity[i] =
        4.0 * kPi * rho * rho * (prof.mu[i] * rho_t - prof.Jn[i] * kb * rho);
  }
  if (e.finite_difference) {
    const std::vector<double> dr = differentiate(prof.r, e.E, 1);
    for (std::size_t i = 0; i < n; ++i) {
      e.dE_numeric[i] = dr[i] / std::sqrt(data.at_node(i).g11.value);
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      const FieldJets j = data.at_node(i);
      const double g = j.g11.value;
      const double sg = std::sqrt(g);
      const double rho = j.rho.value;
      const double kb = j.kb.value;
      const double rho_t = j.rho.d1 / sg;
      const double rho_t_r = j.rho.d2 / sg - j.rho.d1 * j.g11.d1 / (2.0 * g * sg);
      const double dE_dr = 0.5 * j.rho.d1 * (1.0 - rho_t * rho_t + rho * rho * kb * kb) +
                           0.5 * rho *
                               (-2.0 * rho_t * rho_t_r + 2.0 * rho * j.rho.d1 * kb * kb +
                                2.0 * rho * rho * kb * j.kb.d1);
      e.dE_numeric[i] = dE_dr / sg;
    }
  }
  return e;
}

EnergyBoundsReport energy_bounds_check(const InitialData& data, const GeometryProfile& prof,
                              const EnergyProfile& e, const HorizonScan& scan,
                              double monotone_tol, double rigidity_tol) {
  const std::size_t n = prof.size();
  EnergyBoundsReport rep;
  rep.dec_holds = dec_check(prof).holds;
  rep.untrapped.assign(n, false);
  rep.monotone_ok.assign(n, true);
  rep.positive_ok.assign(n, true);
  rep.bound_ok.assign(n, true);
  rep.rigidity.assign(n, Rigidity::none);

  for (const auto& iv : scan.untrapped) {
    MonotoneInterval mi{iv.a, iv.b, iv.kind, true, iv.first, 0.0};
    const double sign = iv.kind == RegionKind::expanding ? 1.0 : -1.0;
    double worst = std::numeric_limits<double>::infinity();
    for (std::size_t i = iv.first; i <= iv.last; ++i) {
      rep.untrapped[i] = true;
      const double rho = prof.rho[i];
      const double scale =
          std::max({1.0, std::abs(4.0 * kPi * rho * rho * prof.mu[i] * prof.rho_t[i]),
                    std::abs(4.0 * kPi * rho * rho * rho * prof.Jn[i] * prof.kb[i])});
      const double signed_rate = sign * e.dE_identity[i];
      if (signed_rate < -monotone_tol * scale) {
        rep.monotone_ok[i] = false;
        mi.monotone_ok = false;
      }
      if (signed_rate < worst) {
        worst = signed_rate;
        mi.worst_index = i;
      }
    }
    mi.worst_margin = worst;
    rep.all_monotone = rep.all_monotone && mi.monotone_ok;
    rep.intervals.push_back(mi);
  }

  if (prof.domain == DomainKind::ball) {
    for (std::size_t i = 0; i < n; ++i) {
      if (contains_horizon(scan, prof.r[i])) continue;
      if (e.E[i] < -monotone_tol * std::max(1.0, prof.rho[i])) {
        rep.positive_ok[i] = false;
        rep.all_positive = false;
      }
    }
  }

  rep.outermost_root = scan.outermost();
  if (rep.outermost_root) {
    rep.bound = 0.5 * data.at(*rep.outermost_root).rho.value;
    for (std::size_t i = 0; i < n; ++i) {
      if (prof.r[i] <= *rep.outermost_root) continue;
      if (e.E[i] < rep.bound - monotone_tol * std::max(1.0, rep.bound)) {
        rep.bound_ok[i] = false;
        rep.all_bound = false;
      }
    }
  }

  std::size_t interior = 0;
  std::size_t beyond = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (prof.r[i] <= scan.inner_boundary) continue;
    ++interior;
    const bool past_root = rep.outermost_root && prof.r[i] > *rep.outermost_root;
    beyond += past_root ? 1 : 0;
    if (std::abs(e.E[i]) <= rigidity_tol) {
      rep.rigidity[i] = Rigidity::minkowski_candidate;
      ++rep.minkowski_flags;
    } else if (past_root && std::abs(e.E[i] - rep.bound) <= rigidity_tol) {
      rep.rigidity[i] = Rigidity::schwarzschild_candidate;
      ++rep.schwarzschild_flags;
    }
  }
  if (interior > 0 && rep.minkowski_flags == interior) {
    rep.candidate = Rigidity::minkowski_candidate;
  } else if (beyond > 0 && rep.schwarzschild_flags == beyond) {
    rep.candidate = Rigidity::schwarzschild_candidate;
  }
  if (data.family()) {
    const Family f = data.family()->family;
    switch (rep.candidate) {
      case Rigidity::none: rep.rigidity_confirmed = true; break;
      case Rigidity::minkowski_candidate: rep.rigidity_confirmed = f == Family::minkowski; break;
      case Rigidity::schwarzschild_candidate:
        rep.rigidity_confirmed =
            f == Family::schwarzschild_ts || f == Family::painleve_gullstrand;
        break;
    }
  }
  return rep;
}

}  // namespace collapse
