#include "collapse/jang.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/numeric/odeint/stepper/generation.hpp>
#include <boost/numeric/odeint/stepper/runge_kutta_dopri5.hpp>

#include "collapse/numerics.hpp"
#include "collapse/report.hpp"

namespace collapse {

namespace {

constexpr double kPi = std::numbers::pi;
namespace odeint = boost::numeric::odeint;

// v, s, Q, I, f
using State = std::array<double, 5>;

struct Rates {
  State dx{};
  double muJw = 0.0;
  double rho_r = 0.0;
};

Rates rates(const FieldJets& j, const State& x, bool with_f) {
  const double v = x[0];
  const double g = j.g11.value;
  const double sg = std::sqrt(g);
  const double rho = j.rho.value;
  const double rho_r = j.rho.d1;
  const double rho_t = rho_r / sg;
  const double w = 1.0 - v * v;
  const double dlog = j.rho.d2 / rho_r - j.g11.d1 / (2.0 * g);
  const PointGeometry p = evaluate_point(j);
  const double muJw = p.mu - v * p.Jn;
  const double a_t = rho_t * v / rho - j.kb.value;
  const double a_n = -2.0 * a_t / w;
  const double q_s = -2.0 * v * a_t / std::sqrt(w);
  Rates out;
  out.dx[0] = sg * j.ka.value + sg * (2.0 * j.kb.value - 2.0 * rho_t * v / rho) / w - v * dlog;
  out.dx[1] = sg / std::sqrt(w);
  out.dx[2] = 4.0 * kPi * rho * rho * rho_r * muJw;
  out.dx[3] = 0.25 * rho * rho * rho_r *
              (16.0 * kPi * muJw + a_n * a_n + 2.0 * a_t * a_t + 2.0 * q_s * q_s);
  out.dx[4] = with_f ? v * g / (w * rho_r) : 0.0;
  out.muJw = muJw;
  out.rho_r = rho_r;
  return out;
}

bool valid(const State& x) {
  for (double c : x) {
    if (!std::isfinite(c)) return false;
  }
  return std::abs(x[0]) < 1.0;
}

double parse_number(std::string_view text, std::string_view what) {
  double value = 0.0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw DataError("boundary condition: cannot parse " + std::string(what) + " from '" +
                    std::string(text) + "'");
  }
  return value;
}

double center_limit_mu(const InitialData& data) {
  std::vector<double> r(4), mu(4);
  for (std::size_t i = 1; i < 4; ++i) {
    r[i] = data.grid()[i];
    mu[i] = evaluate_point(data.at_node(i)).mu;
  }
  return extrapolate_to_first(r, mu);
}

}  // namespace

JangBoundary parse_boundary(std::string_view text) {
  if (text == "center") return JangBoundary::center();
  const auto comma = text.find(',');
  if (comma == std::string_view::npos || text.substr(0, 3) != "r1=") {
    throw DataError("boundary condition '" + std::string(text) +
                    "' is not one of center, r1=<x>,v1=<y>, r1=<x>,matched");
  }
  const double r1 = parse_number(text.substr(3, comma - 3), "r1");
  const std::string_view rest = text.substr(comma + 1);
  if (rest == "matched") return JangBoundary::matched(r1);
  if (rest.substr(0, 3) != "v1=") {
    throw DataError("boundary condition: expected v1=<y> or matched after r1, got '" +
                    std::string(rest) + "'");
  }
  return JangBoundary::value(r1, parse_number(rest.substr(3), "v1"));
}

std::string to_string(const JangBoundary& bc) {
  switch (bc.kind) {
    case JangBoundary::Kind::center: return "center";
    case JangBoundary::Kind::value:
      return "r1=" + full_precision(bc.r1) + ",v1=" + full_precision(bc.v1);
    case JangBoundary::Kind::matched: return "r1=" + full_precision(bc.r1) + ",matched";
  }
  return "?";
}

JangSolution solve_jang(const InitialData& data, const JangBoundary& bc, const JangOptions& opt) {
  const RadialGrid& grid = data.grid();
  if (!(opt.rtol > 0.0) || !(opt.atol > 0.0) || !(opt.blow_eps > 0.0) || opt.blow_eps >= 1.0) {
    throw DataError("jang: rtol, atol must be positive and blow_eps in (0, 1)");
  }
  JangSolution sol;
  sol.bc = bc;
  const bool with_f = opt.reconstruct_f;
  State x{};
  double min_muJw = 0.0;
  std::size_t next = 0;  // first grid node still to be reached

  auto push_row = [&](double r, const FieldJets& j, const State& st, double dv, double mjw) {
    const double sg = std::sqrt(j.g11.value);
    const double rho_t = j.rho.d1 / sg;
    const double rho_s = std::sqrt(1.0 - st[0] * st[0]) * rho_t;
    sol.r.push_back(r);
    sol.v.push_back(st[0]);
    sol.dv.push_back(dv);
    sol.s.push_back(st[1]);
    sol.phi.push_back(rho_s);
    sol.rho_s.push_back(rho_s);
    sol.geroch_m.push_back(0.5 * j.rho.value * (1.0 - rho_s * rho_s));
    sol.Q.push_back(st[2]);
    sol.I.push_back(st[3]);
    sol.min_muJw.push_back(mjw);
    if (with_f) sol.f.push_back(st[4]);
  };

  if (bc.kind == JangBoundary::Kind::center) {
    if (!grid.is_ball()) {
      throw DataError("jang: the center boundary condition needs a ball domain");
    }
    const FieldJets c = data.at(0.0);
    const double trk = c.ka.value + 2.0 * c.kb.value;
    min_muJw = center_limit_mu(data);
    push_row(0.0, c, State{}, trk / 3.0, min_muJw);
    sol.r_start = 1e-4 * grid[1];
    sol.v_start = trk * sol.r_start / 3.0;
    x = {sol.v_start, sol.r_start * std::sqrt(c.g11.value), 0.0, 0.0, 0.0};
    next = 1;
  } else {
    const double r1 = bc.r1;
    if (!(r1 > 0.0) || !grid.contains(r1) || r1 >= grid.back()) {
      throw DataError("jang: r1=" + full_precision(r1) + " must lie in (0, " +
                      full_precision(grid.back()) + ") inside the domain");
    }
    const FieldJets j = data.at(r1);
    double v1 = bc.v1;
    if (bc.kind == JangBoundary::Kind::matched) {
      const double rho_t = j.rho.d1 / std::sqrt(j.g11.value);
      v1 = j.rho.value * j.kb.value / rho_t;
    }
    if (!(std::abs(v1) < 1.0)) {
      throw DataError("jang: boundary value v(" + full_precision(r1) + ")=" + full_precision(v1) +
                      " outside (-1, 1)");
    }
    sol.r_start = r1;
    sol.v_start = v1;
    x = {v1, 0.0, 0.0, 0.0, 0.0};
    const Rates k = rates(j, x, with_f);
    min_muJw = k.muJw;
    push_row(r1, j, x, k.dx[0], min_muJw);
    next = static_cast<std::size_t>(
        std::upper_bound(grid.values().begin(), grid.values().end(), r1) -
        grid.values().begin());
  }

  auto system = [&](const State& st, State& dxdt, double r) {
    dxdt = rates(data.at(r), st, with_f).dx;
  };
  auto stepper =
      odeint::make_controlled(opt.atol, opt.rtol, odeint::runge_kutta_dopri5<State>());

  double t = sol.r_start;
  const double r_end = grid.back();
  const double track_from = grid.is_ball() ? grid[1] : sol.r_start;
  double dt = bc.kind == JangBoundary::Kind::center ? sol.r_start : 1e-3 * (r_end - t);
  constexpr std::size_t kMaxSteps = 5'000'000;
  State dxdt{};
  system(x, dxdt, t);

  // Steps follow the error control only; node values come from the
  // fourth-order dense output of the accepted step.
  auto record_nodes = [&](double t_old, const State& x_old, const State& d_old, double t_new,
                          const State& x_new, const State& d_new, bool include_end) {
    while (next < grid.size() && (grid[next] < t_new || (include_end && grid[next] == t_new))) {
      State xi = x_new;
      if (grid[next] != t_new) {
        stepper.stepper().calc_state(grid[next], xi, x_old, d_old, t_old, x_new, d_new, t_new);
      }
      if (!valid(xi)) return false;
      const FieldJets j = data.at_node(next);
      const Rates k = rates(j, xi, with_f);
      min_muJw = std::min(min_muJw, k.muJw);
      push_row(grid[next], j, xi, k.dx[0], min_muJw);
      ++next;
    }
    return true;
  };

  // Steps land on breakpoints; the derivative restarts from the outer side.
  std::vector<double> stops = breakpoints(data);
  stops.erase(std::remove_if(stops.begin(), stops.end(), [&](double b) { return b <= t; }),
              stops.end());
  stops.push_back(r_end);
  std::size_t stop = 0;

  while (next < grid.size()) {
    if (sol.accepted_steps + sol.rejected_steps > kMaxSteps ||
        dt < 1e-15 * std::max(1.0, std::abs(t))) {
      sol.blow_up = BlowUp{t, x[0], "step_underflow"};
      break;
    }
    const double target = stops[stop];
    const bool last = dt >= target - t;
    double h = last ? target - t : dt;
    const double h_used = h;
    const double t_old = t;
    State x_new{};
    State d_new{};
    if (stepper.try_step(system, x, dxdt, t, x_new, d_new, h) == odeint::fail) {
      ++sol.rejected_steps;
      dt = h;
      continue;
    }
    if (!valid(x_new)) {
      t = t_old;
      dt = 0.5 * h_used;
      ++sol.rejected_steps;
      continue;
    }
    ++sol.accepted_steps;
    if (last) t = target;
    dt = h;
    const Rates k = rates(data.at(t), x_new, with_f);
    const bool blown = 1.0 - x_new[0] * x_new[0] < opt.blow_eps;
    const bool fold = !(k.rho_r > 0.0);
    if (!record_nodes(t_old, x, dxdt, t, x_new, d_new, !blown && !fold)) {
      sol.blow_up = BlowUp{t, x_new[0], "velocity"};
      break;
    }
    x = x_new;
    dxdt = d_new;
    if (blown) {
      sol.blow_up = BlowUp{t, x[0], "velocity"};
      break;
    }
    if (fold) {
      sol.blow_up = BlowUp{t, x[0], "rho_r_sign_change"};
      break;
    }
    if (t >= track_from) min_muJw = std::min(min_muJw, k.muJw);
    if (last && stop + 1 < stops.size()) {
      ++stop;
      system(x, dxdt, std::nextafter(t, r_end));
    }
  }
  sol.r_reached = t;
  return sol;
}

JangDiagnostics jang_diagnostics(const InitialData& data, const JangSolution& sol) {
  JangDiagnostics d;
  const std::size_t n = sol.size();
  for (auto* vec : {&d.a_t, &d.a_n, &d.q_s, &d.hK_sq, &d.q_sq, &d.w_norm, &d.muJw,
                    &d.boundary_density}) {
    vec->resize(n);
  }
  d.r = sol.r;
  for (std::size_t i = 0; i < n; ++i) {
    const FieldJets j = data.at(sol.r[i]);
    const double v = sol.v[i];
    const double w = 1.0 - v * v;
    const double rho_t = j.rho.d1 / std::sqrt(j.g11.value);
    double a_t = 0.0;
    double muJw = 0.0;
    if (sol.r[i] == 0.0) {
      // v / rho -> Tr k(0) / 3 at a regular center.
      a_t = rho_t * sol.dv[i] - j.kb.value;
      muJw = sol.min_muJw[i];
    } else {
      a_t = rho_t * v / j.rho.value - j.kb.value;
      const PointGeometry p = evaluate_point(j);
      muJw = p.mu - v * p.Jn;
    }
    d.a_t[i] = a_t;
    d.a_n[i] = -2.0 * a_t / w;
    d.q_s[i] = -2.0 * v * a_t / std::sqrt(w);
    d.hK_sq[i] = d.a_n[i] * d.a_n[i] + 2.0 * a_t * a_t;
    d.q_sq[i] = d.q_s[i] * d.q_s[i];
    d.w_norm[i] = v;
    d.muJw[i] = muJw;
    d.boundary_density[i] = sol.phi[i] * d.q_s[i];
  }
  return d;
}

GerochResidual geroch_residual(const InitialData& data, const JangSolution& sol) {
  GerochResidual out;
  const std::size_t first = sol.size() > 0 && sol.r[0] == 0.0 ? 1 : 0;
  const std::size_t n = sol.size();
  if (n < first + 3) return out;
  out.finite_difference = !data.is_analytic();
  std::vector<double> m_s;
  if (out.finite_difference) {
    m_s = differentiate(std::span(sol.r).subspan(first), std::span(sol.geroch_m).subspan(first), 1);
  }
  for (std::size_t i = first; i < n; ++i) {
    const FieldJets j = data.at(sol.r[i]);
    const double v = sol.v[i];
    const double dv = sol.dv[i];
    const double w = 1.0 - v * v;
    const double g = j.g11.value;
    const double sg = std::sqrt(g);
    const double rho = j.rho.value;
    const double rho_s = sol.rho_s[i];
    double lhs = 0.0;
    if (out.finite_difference) {
      lhs = m_s[i - first] / (sg / std::sqrt(w));
    } else {
      const double rho_t = j.rho.d1 / sg;
      const double rho_t_r = j.rho.d2 / sg - j.rho.d1 * j.g11.d1 / (2.0 * g * sg);
      const double rho_s_r = -v * dv / std::sqrt(w) * rho_t + std::sqrt(w) * rho_t_r;
      const double m_r = 0.5 * j.rho.d1 * (1.0 - rho_s * rho_s) - rho * rho_s * rho_s_r;
      lhs = m_r / (sg / std::sqrt(w));
    }
    const Jet ghat{g / w, j.g11.d1 / w + 2.0 * g * v * dv / (w * w), 0.0};
    const double rbar = scalar_curvature_point(ghat, j.rho);
    const double rhs = 0.25 * rho_s * rho * rho * rbar;
    out.r.push_back(sol.r[i]);
    out.lhs.push_back(lhs);
    out.rhs.push_back(rhs);
    out.max_residual = std::max(out.max_residual, std::abs(lhs - rhs));
  }
  return out;
}

bool ChainReport::holds() const {
  return std::all_of(lines.begin(), lines.end(), [](const ChainLine& l) { return l.holds; });
}

ChainReport verify_mass_inequality_chain(const InitialData& data, const GeometryProfile& prof,
                                         const HorizonScan& scan, const JangSolution& sol,
                                         double r, double tol) {
  const auto it = std::find_if(sol.r.begin(), sol.r.end(), [&](double x) {
    return std::abs(x - r) <= 1e-12 * std::max(1.0, std::abs(r));
  });
  if (it == sol.r.end()) {
    throw DataError("mass chain: r=" + full_precision(r) +
                    " is not a node reached by the Jang solution");
  }
  const std::size_t k = static_cast<std::size_t>(it - sol.r.begin());
  const auto pit = std::lower_bound(prof.r.begin(), prof.r.end(), sol.r[k]);
  const std::size_t p = static_cast<std::size_t>(pit - prof.r.begin());
  if (pit == prof.r.end() || *pit != sol.r[k]) {
    throw DataError("mass chain: r=" + full_precision(r) + " is not a grid node");
  }
  if (contains_horizon(scan, sol.r[k])) {
    throw DataError("mass chain: B_r for r=" + full_precision(r) +
                    " contains an apparent horizon");
  }
  for (std::size_t i = 0; i <= p; ++i) {
    if (prof.theta_plus[i] < 0.0 || prof.theta_minus[i] < 0.0) {
      throw DataError("mass chain: trapped sphere at r=" + full_precision(prof.r[i]) +
                      " inside B_r for r=" + full_precision(r));
    }
  }

  auto boundary = [&](std::size_t i) {
    const FieldJets j = data.at(sol.r[i]);
    const double rho = j.rho.value;
    const double rho_t = j.rho.d1 / std::sqrt(j.g11.value);
    const double v = sol.v[i];
    if (rho == 0.0) return 0.0;
    const double a_t = rho_t * v / rho - j.kb.value;
    return rho * rho * rho_t * v * a_t;
  };

  ChainReport rep;
  rep.r = sol.r[k];
  rep.ball = sol.bc.kind == JangBoundary::Kind::center;
  rep.dec_holds = dec_check(prof).holds;
  rep.m = sol.geroch_m[k];
  rep.Q = sol.Q[k];
  rep.I = sol.I[k];
  rep.B = boundary(k);
  rep.min_muJw = sol.min_muJw[k];

  if (rep.ball) {
    const double rho = prof.rho[p];
    const double rho3 = rho * rho * rho;
    const double tt = prof.theta_plus[p] * prof.theta_minus[p];
    auto line = [&](std::string name, double lhs, double rhs) {
      ChainLine l{std::move(name), lhs, rhs, lhs - rhs, true};
      l.holds = l.margin >= -tol * std::max({1.0, std::abs(lhs), std::abs(rhs)});
      rep.lines.push_back(std::move(l));
    };
    line("m >= Q + B", rep.m, rep.Q + rep.B);
    line("Q >= (4pi/3) rho^3 min", rep.Q, 4.0 * kPi / 3.0 * rho3 * rep.min_muJw);
    line("rho/2 >= (4pi/3) rho^3 min + rho^3 theta+theta-/8", 0.5 * rho,
         4.0 * kPi / 3.0 * rho3 * rep.min_muJw + rho3 * tt / 8.0);
    line("(3/2) Rad/Vol >= min + (3/32pi) theta+theta-", 1.5 * prof.Rad[p] / prof.Vol[p],
         rep.min_muJw + 3.0 / (32.0 * kPi) * tt);
    rep.equality_residual = rep.m - rep.I - rep.B;
    rep.equality_scale = std::max({1.0, std::abs(rep.m), std::abs(rep.I), std::abs(rep.B)});
  } else {
    const double dm = rep.m - sol.geroch_m[0];
    const double dI = rep.I - sol.I[0];
    const double dB = rep.B - boundary(0);
    rep.equality_residual = dm - dI - dB;
    rep.equality_scale = std::max({1.0, std::abs(dm), std::abs(dI), std::abs(dB)});
  }
  return rep;
}

}  // namespace collapse
