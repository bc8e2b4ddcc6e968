#include "collapse/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "collapse/energy.hpp"
#include "collapse/geometry.hpp"
#include "collapse/horizon.hpp"
#include "collapse/report.hpp"

namespace collapse {

namespace {

constexpr double kChainTol = 1e-8;

InitialData level_data(const InitialData& data, int level) {
  return level == 0 ? data : refine(data, 1 << level);
}

ConvergenceLevel level_of(const InitialData& d, double residual) {
  return {d.grid().size(), d.grid().max_spacing(), residual};
}

bool pg_exact(const InitialData& data, const JangBoundary& bc) {
  return data.family() && data.family()->family == Family::painleve_gullstrand &&
         bc.kind == JangBoundary::Kind::matched;
}

// Last profile index such that (inner boundary, r] holds no root and no
// trapped node; npos when even the first node fails.
std::size_t horizon_free_extent(const GeometryProfile& prof, const HorizonScan& scan) {
  std::size_t last = std::numeric_limits<std::size_t>::max();
  for (std::size_t i = 0; i < prof.size(); ++i) {
    if (prof.theta_plus[i] < 0.0 || prof.theta_minus[i] < 0.0) break;
    if (contains_horizon(scan, prof.r[i])) break;
    last = i;
  }
  return last;
}

nlohmann::ordered_json optional_json(const std::optional<double>& x) {
  return x ? nlohmann::ordered_json(*x) : nlohmann::ordered_json();
}

}  // namespace

JangBoundary default_boundary(const InitialData& data) {
  return data.grid().is_ball() ? JangBoundary::center()
                               : JangBoundary::matched(data.grid().front());
}

bool time_symmetric(const InitialData& data) {
  for (FieldName f : {FieldName::ka, FieldName::kb}) {
    for (double x : data.samples(f)) {
      if (x != 0.0) return false;
    }
  }
  return true;
}

ConvergenceReport verify_dE_identity(const InitialData& data, int levels) {
  ConvergenceReport rep;
  rep.name = "dE";
  for (int l = 0; l < levels; ++l) {
    const InitialData d = level_data(data, l);
    const GeometryProfile prof = compute_profile(d);
    const EnergyProfile e = misner_sharp(d, prof);
    double res = 0.0;
    for (std::size_t i = 0; i < e.r.size(); ++i) {
      res = std::max(res, std::abs(e.dE_numeric[i] - e.dE_identity[i]));
    }
    rep.levels.push_back(level_of(d, res));
  }
  finish(rep);
  return rep;
}

ConvergenceReport verify_geroch_identity(const InitialData& data, const JangBoundary& bc,
                                         const JangOptions& options, int levels) {
  ConvergenceReport rep;
  rep.name = "geroch";
  for (int l = 0; l < levels; ++l) {
    const InitialData d = level_data(data, l);
    const JangSolution sol = solve_jang(d, bc, options);
    const GerochResidual g = geroch_residual(d, sol);
    const double res = g.r.empty() ? std::numeric_limits<double>::quiet_NaN() : g.max_residual;
    rep.levels.push_back(level_of(d, res));
  }
  finish(rep);
  return rep;
}

ChainSuite verify_chain_suite(const InitialData& data, const JangBoundary& bc,
                              const JangOptions& options, int levels) {
  ChainSuite suite;
  suite.equality.name = "chain_equality";
  suite.equality.gated = time_symmetric(data) || pg_exact(data, bc);
  const bool tabulated = !data.is_analytic();
  for (int l = 0; l < levels; ++l) {
    const InitialData d = level_data(data, l);
    const GeometryProfile prof = compute_profile(d);
    const HorizonScan hs = scan(d, prof);
    const JangSolution sol = solve_jang(d, bc, options);
    const std::size_t extent = horizon_free_extent(prof, hs);
    const bool finest = l + 1 == levels;
    double eq = 0.0;
    std::size_t count = 0;
    for (std::size_t k = 0; k < sol.size(); ++k) {
      if (sol.r[k] <= prof.r.front() || extent == std::numeric_limits<std::size_t>::max() ||
          sol.r[k] > prof.r[extent]) {
        continue;
      }
      const ChainReport c = verify_mass_inequality_chain(d, prof, hs, sol, sol.r[k], kChainTol);
      eq = std::max(eq, std::abs(c.equality_residual) / c.equality_scale);
      ++count;
      if (!finest) continue;
      suite.dec_holds = c.dec_holds;
      suite.r_last = c.r;
      if (suite.worst_margin.size() < c.lines.size()) {
        suite.worst_margin.resize(c.lines.size(), std::numeric_limits<double>::infinity());
      }
      // On tabulated data with an exact equality, m >= Q + B is saturated up
      // to discretization error, which the equality residual measures.
      const double slack =
          tabulated && suite.equality.gated ? std::abs(c.equality_residual) : 0.0;
      for (std::size_t i = 0; i < c.lines.size(); ++i) {
        const ChainLine& line = c.lines[i];
        const double scale = std::max({1.0, std::abs(line.lhs), std::abs(line.rhs)});
        suite.worst_margin[i] = std::min(suite.worst_margin[i], line.margin / scale);
        const bool ok = line.holds || line.margin >= -(kChainTol * scale + slack);
        suite.inequalities_hold = suite.inequalities_hold && ok;
      }
    }
    if (finest) suite.radii = count;
    suite.equality.levels.push_back(
        level_of(d, count > 0 ? eq : std::numeric_limits<double>::quiet_NaN()));
  }
  finish(suite.equality);
  return suite;
}

PgOracle verify_pg_oracle(const InitialData& data, const JangOptions& options, double tol) {
  PgOracle out;
  if (!data.family() || data.family()->family != Family::painleve_gullstrand) return out;
  out.applicable = true;
  out.mass = data.family()->mass;
  out.r1 = data.grid().front();
  auto errors = [&](const JangOptions& opt, PgOracle& o) {
    const JangSolution sol = solve_jang(data, JangBoundary::matched(out.r1), opt);
    double v_err = sol.regular() ? 0.0 : std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < sol.size(); ++i) {
      const double exact = -std::sqrt(2.0 * out.mass / sol.r[i]);
      v_err = std::max(v_err, std::abs(sol.v[i] - exact) / std::abs(exact));
      o.m_error = std::max(o.m_error, std::abs(sol.geroch_m[i] - out.mass));
      o.rho_s_error = std::max(
          o.rho_s_error, std::abs(sol.rho_s[i] - std::sqrt(1.0 - 2.0 * out.mass / sol.r[i])));
    }
    return v_err;
  };
  out.v_rel_error = errors(options, out);
  JangOptions half = options;
  half.rtol *= 0.5;
  half.atol *= 0.5;
  PgOracle scratch;
  out.v_rel_error_half_rtol = errors(half, scratch);
  out.passed = out.v_rel_error <= tol && out.m_error <= tol * std::max(1.0, out.mass) &&
               out.rho_s_error <= tol && out.v_rel_error_half_rtol <= out.v_rel_error;
  return out;
}

VerifyResult run_verify(const InitialData& data, const VerifyOptions& opt,
                        const std::string& config_digest) {
  using json = nlohmann::ordered_json;
  VerifyResult res;
  const JangBoundary bc = opt.bc.value_or(default_boundary(data));
  json& rep = res.report;
  rep["schema"] = "collapse-kit/verify/v1";
  rep["config_digest"] = config_digest;
  rep["conventions"] = {{"j_sign", kJSignConvention}, {"mo_measure", kMoMeasure}};
  json input;
  input["label"] = data.label();
  input["domain"] = std::string(to_string(data.grid().kind()));
  input["n"] = data.grid().size();
  input["analytic"] = data.is_analytic();
  input["family"] = data.family() ? json(std::string(to_string(data.family()->family))) : json();
  rep["input"] = input;
  rep["jang"] = {{"bc", to_string(bc)},
                 {"rtol", opt.jang.rtol},
                 {"atol", opt.jang.atol},
                 {"blow_eps", opt.jang.blow_eps}};
  rep["levels"] = opt.levels;
  json checks = json::object();
  for (const std::string& name : opt.checks) {
    if (name == "geroch") {
      ConvergenceReport c = verify_geroch_identity(data, bc, opt.jang, opt.levels);
      checks["geroch"] = to_json(c);
      res.passed = res.passed && c.passed;
    } else if (name == "de") {
      ConvergenceReport c = verify_dE_identity(data, opt.levels);
      checks["de"] = to_json(c);
      res.passed = res.passed && c.passed;
    } else if (name == "chain") {
      json j;
      if (!data.grid().is_ball() && bc.kind == JangBoundary::Kind::center) {
        j["applicable"] = false;
      } else {
        const ChainSuite s = verify_chain_suite(data, bc, opt.jang, opt.levels);
        const bool gate_ineq = s.dec_holds && data.grid().is_ball();
        j["applicable"] = true;
        j["radii"] = s.radii;
        j["r_last"] = optional_json(s.r_last);
        j["dec_holds"] = s.dec_holds;
        j["inequalities_gated"] = gate_ineq;
        j["inequalities_hold"] = s.inequalities_hold;
        json worst = json::array();
        for (double w : s.worst_margin) worst.push_back(w);
        j["worst_relative_margins"] = worst;
        j["equality"] = to_json(s.equality);
        const bool ok = (!gate_ineq || s.inequalities_hold) &&
                        (!s.equality.gated || s.equality.passed);
        j["passed"] = ok;
        res.passed = res.passed && ok;
      }
      checks["chain"] = j;
    } else if (name == "pg") {
      const PgOracle p = verify_pg_oracle(data, opt.jang);
      json j;
      j["applicable"] = p.applicable;
      if (p.applicable) {
        j["mass"] = p.mass;
        j["r1"] = p.r1;
        j["v_rel_error"] = p.v_rel_error;
        j["v_rel_error_half_rtol"] = p.v_rel_error_half_rtol;
        j["geroch_m_error"] = p.m_error;
        j["rho_s_error"] = p.rho_s_error;
        j["passed"] = p.passed;
        res.passed = res.passed && p.passed;
      }
      checks["pg"] = j;
    } else {
      throw DataError("verify: unknown check '" + name + "' (expected geroch, de, chain, pg)");
    }
  }
  rep["checks"] = checks;
  rep["passed"] = res.passed;
  return res;
}

}  // namespace collapse
