#include "collapse/geometry.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "collapse/numerics.hpp"
#include "collapse/parallel.hpp"

namespace collapse {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();
}  // namespace

double scalar_curvature_point(const Jet& g11, const Jet& rho) {
  const double sg = std::sqrt(g11.value);
  const double rho_t = rho.d1 / sg;
  const double rho_tt =
      rho.d2 / g11.value - rho.d1 * g11.d1 / (2.0 * g11.value * g11.value);
  return -4.0 * rho_tt / rho.value + 2.0 * (1.0 - rho_t * rho_t) / (rho.value * rho.value);
}

PointGeometry evaluate_point(const FieldJets& j) {
  PointGeometry p;
  const double g = j.g11.value;
  const double sg = std::sqrt(g);
  const double rho = j.rho.value;
  const double ka = j.ka.value;
  const double kb = j.kb.value;
  p.rho_t = j.rho.d1 / sg;
  p.rho_tt = j.rho.d2 / g - j.rho.d1 * j.g11.d1 / (2.0 * g * g);
  p.kb_t = j.kb.d1 / sg;
  p.R = -4.0 * p.rho_tt / rho + 2.0 * (1.0 - p.rho_t * p.rho_t) / (rho * rho);
  p.TrGk = ka + 2.0 * kb;
  p.kNormSq = ka * ka + 2.0 * kb * kb;
  // (Tr k)^2 - |k|^2 = 4 ka kb + 2 kb^2, written without the cancellation.
  p.mu = (p.R + 4.0 * ka * kb + 2.0 * kb * kb) / (16.0 * kPi);
  p.Jn = (2.0 * (p.rho_t / rho) * (ka - kb) - 2.0 * p.kb_t) / (8.0 * kPi);
  p.H = 2.0 * p.rho_t / rho;
  p.TrSk = 2.0 * kb;
  p.theta_plus = p.H + p.TrSk;
  p.theta_minus = p.H - p.TrSk;
  return p;
}

GeometryProfile compute_profile(const InitialData& data) {
  const RadialGrid& grid = data.grid();
  const std::size_t n = grid.size();
  GeometryProfile prof;
  prof.domain = grid.kind();
  prof.r = grid.values();
  for (auto* v : {&prof.R, &prof.mu, &prof.Jn, &prof.H, &prof.TrSk, &prof.theta_plus,
                  &prof.theta_minus, &prof.TrGk, &prof.kNormSq, &prof.rho, &prof.rho_t,
                  &prof.kb}) {
    v->assign(n, 0.0);
  }
  const bool ball = grid.is_ball();
  parallel_for(n, [&](std::size_t i) {
    const FieldJets j = data.at_node(i);
    prof.rho[i] = j.rho.value;
    prof.kb[i] = j.kb.value;
    if (ball && i == 0) return;
    const PointGeometry p = evaluate_point(j);
    prof.R[i] = p.R;
    prof.mu[i] = p.mu;
    prof.Jn[i] = p.Jn;
    prof.H[i] = p.H;
    prof.TrSk[i] = p.TrSk;
    prof.theta_plus[i] = p.theta_plus;
    prof.theta_minus[i] = p.theta_minus;
    prof.TrGk[i] = p.TrGk;
    prof.kNormSq[i] = p.kNormSq;
    prof.rho_t[i] = p.rho_t;
  });
  if (ball) {
    const FieldJets c = data.at_node(0);
    prof.center_limit = true;
    prof.R[0] = extrapolate_to_first(prof.r, prof.R);
    prof.mu[0] = extrapolate_to_first(prof.r, prof.mu);
    prof.Jn[0] = extrapolate_to_first(prof.r, prof.Jn);
    prof.H[0] = kInf;
    prof.theta_plus[0] = kInf;
    prof.theta_minus[0] = kInf;
    prof.TrSk[0] = 2.0 * c.kb.value;
    prof.TrGk[0] = c.ka.value + 2.0 * c.kb.value;
    prof.kNormSq[0] = c.ka.value * c.ka.value + 2.0 * c.kb.value * c.kb.value;
    prof.rho_t[0] = c.rho.d1 / std::sqrt(c.g11.value);
  }
  RadiusVolume rv = radius_volume(data);
  prof.Rad = std::move(rv.Rad);
  prof.Vol = std::move(rv.Vol);
  return prof;
}

std::vector<double> scalar_curvature(const InitialData& data) { return compute_profile(data).R; }

ConstraintDensities constraint_densities(const InitialData& data) {
  GeometryProfile p = compute_profile(data);
  return {std::move(p.mu), std::move(p.Jn)};
}

Expansions expansions(const InitialData& data) {
  GeometryProfile p = compute_profile(data);
  return {std::move(p.H), std::move(p.TrSk), std::move(p.theta_plus), std::move(p.theta_minus)};
}

RadiusVolume radius_volume(const InitialData& data) {
  const auto r = data.grid().r();
  RadiusVolume rv;
  rv.annulus_based = !data.grid().is_ball();
  rv.Rad = cumulative_integral(r, [&](double x) { return std::sqrt(data.g11().at(x).value); });
  rv.Vol = cumulative_integral(r, [&](double x) {
    const double rho = data.rho().at(x).value;
    return 4.0 * kPi * std::sqrt(data.g11().at(x).value) * rho * rho;
  });
  return rv;
}

DecReport dec_check(const GeometryProfile& profile, double tolerance) {
  DecReport rep;
  const std::size_t n = profile.size();
  rep.margin.resize(n);
  double scale = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    scale = std::max({scale, std::abs(profile.mu[i]), std::abs(profile.Jn[i])});
  }
  rep.worst_margin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    rep.margin[i] = profile.mu[i] - std::abs(profile.Jn[i]);
    if (rep.margin[i] < rep.worst_margin) {
      rep.worst_margin = rep.margin[i];
      rep.worst_index = i;
      rep.worst_r = profile.r[i];
    }
  }
  rep.holds = rep.worst_margin >= -tolerance * scale;
  return rep;
}

}  // namespace collapse
