#include "commands.hpp"

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "collapse/data_io.hpp"
#include "collapse/energy.hpp"
#include "collapse/geometry.hpp"
#include "collapse/horizon.hpp"
#include "collapse/report.hpp"
#include "collapse/verify.hpp"

namespace collapse::cli {

namespace {

using ojson = nlohmann::ordered_json;

void with_output(const std::string& path, const std::function<void(std::ostream&)>& write) {
  if (path.empty() || path == "-") {
    write(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) throw DataError("cannot open '" + path + "' for writing");
  write(os);
  if (!os) throw DataError("failed writing '" + path + "'");
}

InitialData load_input(const InputOptions& in) {
  InitialData data = load_data(in.path, LoadOptions{in.use_family});
  const auto violations = validate(data);
  if (!violations.empty()) {
    std::ostringstream msg;
    msg << "input '" << in.path << "' fails validation:";
    for (const auto& v : violations) {
      msg << "\n  " << v.what << " (index " << v.index << ", r=" << full_precision(v.r) << ")";
    }
    throw DataError(msg.str());
  }
  return data;
}

void provenance(CsvWriter& csv, const std::string& digest, const InitialData& data) {
  csv.comment("config_digest=" + digest);
  csv.comment(std::string("j_sign=") + kJSignConvention);
  csv.comment(std::string("mo_measure=") + kMoMeasure);
  csv.comment("label=" + data.label());
  csv.comment("domain=" + std::string(to_string(data.grid().kind())) +
              (data.grid().is_ball() ? "" : " (annulus-based radius and volume)"));
}

ojson provenance_json(const std::string& digest, const InitialData& data) {
  ojson j;
  j["config_digest"] = digest;
  j["conventions"] = {{"j_sign", kJSignConvention}, {"mo_measure", kMoMeasure}};
  j["label"] = data.label();
  j["domain"] = std::string(to_string(data.grid().kind()));
  j["annulus_based"] = !data.grid().is_ball();
  j["n"] = data.grid().size();
  j["analytic"] = data.is_analytic();
  j["family"] = data.family() ? ojson(family_to_json(*data.family())) : ojson();
  return j;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string with_suffix(const std::string& path, const std::string& suffix) {
  if (path.empty() || path == "-") return path;
  const auto slash = path.find_last_of('/');
  const auto dot = path.find_last_of('.');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) {
    return path + "." + suffix;
  }
  return path.substr(0, dot) + "." + suffix + path.substr(dot);
}

void write_criterion(std::ostream& os, const CriterionReport& rep, const std::string& digest,
                     const InitialData& data) {
  CsvWriter csv(os);
  provenance(csv, digest, data);
  csv.comment("mode=" + std::string(to_string(rep.mode)));
  csv.comment(std::string("dec_holds=") + (rep.dec_holds ? "true" : "false"));
  csv.comment(std::string("consistency=") + (rep.consistent() ? "ok" : "violated"));
  csv.header({"r", "lhs_matter", "lhs_bending", "rhs", "margin", "fires", "horizon_in_ball"});
  for (const auto& row : rep.rows) {
    csv.cell(row.r).cell(row.lhs_matter).cell(row.lhs_bending).cell(row.rhs).cell(row.margin);
    csv.cell(row.fires).cell(row.horizon_in_ball);
    csv.end_row();
  }
}

void write_malec(std::ostream& os, const MalecReport& rep, const std::string& digest,
                 const InitialData& data) {
  CsvWriter csv(os);
  provenance(csv, digest, data);
  csv.comment("mode=" + std::string(to_string(rep.mode)));
  if (!rep.maximal) {
    csv.comment("HYPOTHESIS VIOLATED: data not maximal, max |Tr_g k| = " +
                full_precision(rep.max_trace));
  }
  csv.comment("measure_disagreements=" + std::to_string(rep.measure_disagreements));
  csv.header({"r", "lhs", "lhs_coord", "rhs", "fires", "fires_coord"});
  for (const auto& row : rep.rows) {
    csv.cell(row.r).cell(row.lhs).cell(row.lhs_coord).cell(row.rhs).cell(row.fires);
    csv.cell(row.fires_coord);
    csv.end_row();
  }
}

std::string optional_text(const std::optional<double>& x) {
  return x ? rounded(*x) : std::string("none");
}

}  // namespace

int run_generate(const GenerateOptions& opt, const std::string& digest) {
  FamilySpec spec = opt.spec;
  spec.family = parse_family(opt.family);
  spec.grid.domain = opt.domain.empty()
                         ? (spec.grid.r_min > 0.0 ? DomainKind::annulus : DomainKind::ball)
                         : parse_domain(opt.domain);
  if (opt.spacing == "uniform") {
    spec.grid.spacing = Spacing::uniform;
  } else if (opt.spacing == "geometric") {
    spec.grid.spacing = Spacing::geometric;
  } else {
    throw DataError("unknown spacing '" + opt.spacing + "' (expected uniform or geometric)");
  }
  const InitialData built = build_family(spec);
  const std::string label = opt.label.empty() ? built.label() : opt.label;
  const InitialData data(built.grid(), built.g11(), built.rho(), built.ka(), built.kb(), label,
                         built.family());
  const auto violations = validate(data);
  if (!violations.empty()) {
    throw DataError("generated data fail validation: " + violations.front().what);
  }
  with_output(opt.out, [&](std::ostream& os) { write_data(os, data); });
  if (!opt.csv.empty()) {
    with_output(opt.csv, [&](std::ostream& os) { write_data_csv(os, data); });
  }
  std::cerr << "generate: " << to_string(spec.family) << ", " << data.grid().size()
            << " samples on [" << rounded(data.grid().front()) << ", "
            << rounded(data.grid().back()) << "] (" << to_string(data.grid().kind())
            << "), digest " << digest << "\n";
  return kOk;
}

int run_analyze(const AnalyzeOptions& opt, const std::string& digest) {
  const InitialData data = load_input(opt.input);
  const GeometryProfile prof = compute_profile(data);
  const HorizonScan hs = scan(data, prof);
  const DecReport dec = dec_check(prof);
  with_output(opt.out, [&](std::ostream& os) {
    CsvWriter csv(os);
    provenance(csv, digest, data);
    if (prof.center_limit) {
      csv.comment("center row: R, mu, Jn are one-sided limits; H, thetaP, thetaM are absent");
    }
    csv.header({"r", "R", "mu", "Jn", "H", "TrSk", "thetaP", "thetaM", "Rad", "Vol"});
    for (std::size_t i = 0; i < prof.size(); ++i) {
      const bool limit = prof.center_limit && i == 0;
      csv.cell(prof.r[i]).cell(prof.R[i]).cell(prof.mu[i]).cell(prof.Jn[i]);
      limit ? csv.cell(std::string_view{}) : csv.cell(prof.H[i]);
      csv.cell(prof.TrSk[i]);
      limit ? csv.cell(std::string_view{}) : csv.cell(prof.theta_plus[i]);
      limit ? csv.cell(std::string_view{}) : csv.cell(prof.theta_minus[i]);
      csv.cell(prof.Rad[i]).cell(prof.Vol[i]);
      csv.end_row();
    }
  });
  if (!opt.json.empty()) {
    ojson j = provenance_json(digest, data);
    j["dec"] = {{"holds", dec.holds},
                {"worst_r", dec.worst_r},
                {"worst_margin", dec.worst_margin}};
    j["horizons"] = ojson::parse(to_json(hs).dump());
    j["horizon_free"] = hs.horizon_free();
    auto column = [&](const std::vector<double>& v, bool center_absent) {
      ojson a = ojson::array();
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (center_absent && prof.center_limit && i == 0) {
          a.push_back(nullptr);
        } else {
          a.push_back(v[i]);
        }
      }
      return a;
    };
    j["geometry"] = {{"r", column(prof.r, false)},          {"R", column(prof.R, false)},
                     {"mu", column(prof.mu, false)},        {"Jn", column(prof.Jn, false)},
                     {"H", column(prof.H, true)},           {"TrSk", column(prof.TrSk, false)},
                     {"thetaP", column(prof.theta_plus, true)},
                     {"thetaM", column(prof.theta_minus, true)},
                     {"Rad", column(prof.Rad, false)},      {"Vol", column(prof.Vol, false)}};
    with_output(opt.json, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
  }
  std::cerr << "analyze: DEC " << (dec.holds ? "holds" : "fails") << " (worst margin "
            << rounded(dec.worst_margin) << " at r=" << rounded(dec.worst_r) << "); "
            << hs.future_roots.size() << " future and " << hs.past_roots.size()
            << " past horizon roots; outermost " << optional_text(hs.outermost()) << "\n";
  return kOk;
}

int run_criterion(const CriterionOptions& opt, const std::string& digest) {
  const InitialData data = load_input(opt.input);
  std::vector<Mode> modes;
  if (opt.mode == "both") {
    modes = {Mode::future, Mode::past};
  } else {
    modes = {parse_mode(opt.mode)};
  }
  const GeometryProfile prof = compute_profile(data);
  const HorizonScan hs = scan(data, prof);
  for (Mode mode : modes) {
    const CriterionReport rep = trapped_surface_criterion(prof, hs, mode);
    const std::string out =
        modes.size() > 1 ? with_suffix(opt.out, std::string(to_string(mode))) : opt.out;
    with_output(out, [&](std::ostream& os) { write_criterion(os, rep, digest, data); });
    std::cerr << "criterion " << to_string(mode) << ": first firing radius "
              << optional_text(rep.first_firing_radius) << ", DEC "
              << (rep.dec_holds ? "holds" : "fails") << ", consistency "
              << (rep.consistent() ? "ok" : "VIOLATED") << "\n";
    if (!opt.malec.empty()) {
      const MalecReport mo = malec_omurchadha_criterion(data, prof, mode, opt.max_trace_tol);
      const std::string path =
          modes.size() > 1 ? with_suffix(opt.malec, std::string(to_string(mode))) : opt.malec;
      with_output(path, [&](std::ostream& os) { write_malec(os, mo, digest, data); });
      std::cerr << "maximal-slice criterion " << to_string(mode) << ": "
                << (mo.maximal ? "" : "hypothesis violated, ") << "first firing radius "
                << optional_text(mo.first_firing_radius) << "\n";
    }
  }
  return kOk;
}

int run_jang(const JangCliOptions& opt, const std::string& digest) {
  const InitialData data = load_input(opt.input);
  const JangBoundary bc = opt.bc.empty() ? default_boundary(data) : parse_boundary(opt.bc);
  const JangSolution sol = solve_jang(data, bc, opt.jang);
  const JangDiagnostics diag = jang_diagnostics(data, sol);
  with_output(opt.out, [&](std::ostream& os) {
    CsvWriter csv(os);
    provenance(csv, digest, data);
    csv.comment("bc=" + to_string(bc) + " v_start=" + full_precision(sol.v_start));
    csv.comment("rtol=" + full_precision(opt.jang.rtol) +
                " blow_eps=" + full_precision(opt.jang.blow_eps));
    if (sol.blow_up) {
      csv.comment("blow_up r=" + full_precision(sol.blow_up->r) +
                  " v=" + full_precision(sol.blow_up->v) + " kind=" + sol.blow_up->kind);
    } else {
      csv.comment("regular on [" + full_precision(sol.r.front()) + ", " +
                  full_precision(sol.r.back()) + "]");
    }
    if (opt.jang.reconstruct_f) {
      csv.header({"r", "v", "s", "phi", "rho_s", "geroch_m", "a_t", "q_s", "f"});
    } else {
      csv.header({"r", "v", "s", "phi", "rho_s", "geroch_m", "a_t", "q_s"});
    }
    for (std::size_t i = 0; i < sol.size(); ++i) {
      csv.cell(sol.r[i]).cell(sol.v[i]).cell(sol.s[i]).cell(sol.phi[i]).cell(sol.rho_s[i]);
      csv.cell(sol.geroch_m[i]).cell(diag.a_t[i]).cell(diag.q_s[i]);
      if (opt.jang.reconstruct_f) csv.cell(sol.f[i]);
      csv.end_row();
    }
  });
  std::cerr << "jang: " << to_string(bc) << ", reached r=" << rounded(sol.r_reached);
  if (sol.blow_up) {
    std::cerr << ", blow-up (" << sol.blow_up->kind << ") at r=" << rounded(sol.blow_up->r);
  } else {
    std::cerr << ", regular; v(end)=" << rounded(sol.v.back())
              << ", geroch_m(end)=" << rounded(sol.geroch_m.back());
  }
  std::cerr << "\n";
  return kOk;
}

int run_energy(const EnergyOptions& opt, const std::string& digest) {
  const InitialData data = load_input(opt.input);
  const GeometryProfile prof = compute_profile(data);
  const HorizonScan hs = scan(data, prof);
  const EnergyProfile e = misner_sharp(data, prof);
  const EnergyBoundsReport bounds = energy_bounds_check(data, prof, e, hs);
  with_output(opt.out, [&](std::ostream& os) {
    CsvWriter csv(os);
    provenance(csv, digest, data);
    csv.comment(std::string("dec_holds=") + (bounds.dec_holds ? "true" : "false") +
                (bounds.dec_holds ? "" : " (verdicts advisory)"));
    csv.comment("outermost_root=" +
                (bounds.outermost_root ? full_precision(*bounds.outermost_root) : std::string("none")) +
                " bound=" + full_precision(bounds.bound));
    csv.comment("rigidity_candidate=" + std::string(to_string(bounds.candidate)) + " confirmed=" +
                (bounds.rigidity_confirmed ? (*bounds.rigidity_confirmed ? "true" : "false")
                                       : "no-metadata"));
    csv.header({"r", "E", "dE_numeric", "dE_identity", "untrapped", "monotone_ok", "bound_ok",
                "rigidity_flag"});
    for (std::size_t i = 0; i < e.r.size(); ++i) {
      csv.cell(e.r[i]).cell(e.E[i]).cell(e.dE_numeric[i]).cell(e.dE_identity[i]);
      csv.cell(static_cast<bool>(bounds.untrapped[i])).cell(static_cast<bool>(bounds.monotone_ok[i]));
      csv.cell(static_cast<bool>(bounds.bound_ok[i])).cell(to_string(bounds.rigidity[i]));
      csv.end_row();
    }
  });
  std::cerr << "energy: E(end)=" << rounded(e.E.back()) << "; monotone "
            << (bounds.all_monotone ? "ok" : "FAILS") << ", positivity "
            << (bounds.all_positive ? "ok" : "FAILS") << ", bound " << (bounds.all_bound ? "ok" : "FAILS")
            << ", rigidity " << to_string(bounds.candidate) << "\n";
  return kOk;
}

int run_verify(const VerifyCliOptions& opt, const std::string& digest) {
  const InitialData data = load_input(opt.input);
  VerifyOptions v;
  v.checks = split_list(opt.checks);
  if (v.checks.empty()) throw DataError("verify: --check lists no suites");
  if (opt.refine < 1) throw DataError("verify: --refine must be at least 1");
  v.levels = opt.refine;
  if (!opt.bc.empty()) v.bc = parse_boundary(opt.bc);
  v.jang = opt.jang;
  const VerifyResult res = collapse::run_verify(data, v, digest);
  with_output(opt.out, [&](std::ostream& os) { os << res.report.dump(2) << '\n'; });
  std::cerr << "verify:";
  for (const auto& [name, check] : res.report["checks"].items()) {
    const bool has = check.contains("passed");
    std::cerr << " " << name << "="
              << (has ? (check["passed"].get<bool>() ? "pass" : "FAIL") : "n/a");
    if (check.contains("order") && check["order"].is_number()) {
      std::cerr << " (order " << rounded(check["order"].get<double>()) << ")";
    }
  }
  std::cerr << "\n";
  return res.passed ? kOk : kVerificationFailure;
}

int run_sweep(const SweepCliOptions& opt, const std::string& digest) {
  const SweepSummary s = soundness_sweep(opt.config);
  ojson j;
  j["schema"] = "collapse-kit/sweep/v1";
  j["config_digest"] = digest;
  j["conventions"] = {{"j_sign", kJSignConvention}, {"mo_measure", kMoMeasure}};
  j["seed"] = opt.config.seed;
  j["trials"] = s.trials;
  j["attempts"] = s.attempts;
  j["discarded_non_dec"] = s.discarded_non_dec;
  j["firing_trials"] = s.firing_trials;
  j["firing_rows"] = s.firing_rows;
  j["violations"] = s.violations;
  j["near_miss_margin"] = s.near_miss_margin;
  ojson trials = ojson::array();
  for (const auto& t : s.accepted) {
    ojson tj;
    tj["index"] = t.index;
    tj["family"] = family_to_json(t.spec);
    tj["firing_rows"] = t.firing_rows;
    tj["violations"] = t.violations;
    tj["max_margin"] = t.max_margin;
    trials.push_back(tj);
  }
  j["accepted"] = trials;
  with_output(opt.out, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
  std::cerr << "sweep: " << s.trials << " DEC trials (" << s.discarded_non_dec
            << " draws discarded), " << s.firing_trials << " firing, " << s.violations
            << " violations, near-miss margin " << rounded(s.near_miss_margin) << "\n";
  return s.violations == 0 && s.trials == opt.config.trials ? kOk : kVerificationFailure;
}

}  // namespace collapse::cli
