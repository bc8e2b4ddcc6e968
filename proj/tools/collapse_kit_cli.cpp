#include <exception>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "collapse/report.hpp"
#include "commands.hpp"

namespace {

using namespace collapse;
using namespace collapse::cli;

void add_input(CLI::App* sub, InputOptions& in) {
  sub->add_option("input", in.path, "Initial-data JSON file")->required();
  sub->add_flag("--use-family", in.use_family,
                "Rebuild analytic providers from the embedded family metadata");
}

void add_jang_options(CLI::App* sub, JangOptions& jang, std::string& bc) {
  sub->add_option("--bc", bc,
                  "Jang boundary condition: center | r1=<x>,v1=<y> | r1=<x>,matched "
                  "(default: center on a ball, matched at the inner boundary on an annulus)");
  sub->add_option("--rtol", jang.rtol, "Relative tolerance of the Jang integrator")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  sub->add_option("--atol", jang.atol, "Absolute tolerance of the Jang integrator")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  sub->add_option("--blow-eps", jang.blow_eps, "Stop once 1 - v^2 falls below this")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  sub->add_flag("--reconstruct-f", jang.reconstruct_f, "Integrate the Jang graph function f");
}

// The effective configuration without output destinations, which do not
// change any report content.
std::string effective_config(const CLI::App* sub) {
  std::istringstream in(sub->config_to_str(true, false));
  std::string text = sub->get_name() + "\n";
  std::string line;
  while (std::getline(in, line)) {
    const std::string key = line.substr(0, line.find('='));
    if (key == "out" || key == "csv" || key == "json" || key == "malec") continue;
    text += line + "\n";
  }
  return text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"collapse-kit: trapped surfaces, Jang equation and quasilocal energy of "
               "spherically symmetric initial data"};
  app.set_config("--config", "", "TOML configuration file; command-line flags take precedence");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.require_subcommand(1);
  app.footer("Environment: COLLAPSE_KIT_THREADS caps the number of worker threads.\n"
             "Exit status: 0 success, 1 usage or validation error, 2 verification failure.");

  GenerateOptions gen;
  auto* generate = app.add_subcommand("generate", "Sample a closed-form initial-data family");
  generate->add_option("--family", gen.family,
                       "minkowski|schwarzschild_ts|painleve_gullstrand|constant_density_star|"
                       "uniform_collapse|gaussian_blob (aliases mk, ts, pg, cds, uc, blob)")
      ->required();
  generate->add_option("--mass", gen.spec.mass, "Mass m (schwarzschild_ts, painleve_gullstrand)")
      ->capture_default_str();
  generate->add_option("--mu0", gen.spec.mu0, "Central density (constant_density_star)")
      ->capture_default_str();
  generate->add_option("--rstar", gen.spec.star_radius, "Star radius (constant_density_star)")
      ->capture_default_str();
  generate->add_option("--K0", gen.spec.collapse_rate, "Collapse rate K0 (uniform_collapse)")
      ->capture_default_str();
  generate->add_option("--beta", gen.spec.anisotropy, "Anisotropy beta (uniform_collapse)")
      ->capture_default_str();
  generate->add_option("--L", gen.spec.scale, "Length scale L (uniform_collapse)")
      ->capture_default_str();
  generate->add_option("--amplitude", gen.spec.amplitude, "Total mass A (gaussian_blob)")
      ->capture_default_str();
  generate->add_option("--width", gen.spec.width, "Width w (gaussian_blob)")
      ->capture_default_str();
  generate->add_option("--domain", gen.domain,
                       "ball|annulus (default: ball when rmin = 0, otherwise annulus)");
  generate->add_option("--rmin", gen.spec.grid.r_min, "Inner radius")->capture_default_str();
  generate->add_option("--rmax", gen.spec.grid.r_max, "Outer radius")->capture_default_str();
  generate->add_option("--n", gen.spec.grid.count, "Number of samples")->capture_default_str();
  generate->add_option("--spacing", gen.spacing, "uniform|geometric")->capture_default_str();
  generate->add_option("--stretch", gen.spec.grid.stretch, "Cell growth factor (geometric)")
      ->capture_default_str();
  generate->add_flag("--tabulated", gen.spec.tabulated,
                     "Store sampled tables instead of analytic providers");
  generate->add_option("--label", gen.label, "Label stored in the data file");
  generate->add_option("--out", gen.out, "Data file (default: stdout)");
  generate->add_option("--csv", gen.csv, "Also write r,g11,rho,ka,kb as CSV");

  AnalyzeOptions ana;
  auto* analyze = app.add_subcommand("analyze", "Geometry, constraints and horizons");
  add_input(analyze, ana.input);
  analyze->add_option("--out", ana.out, "Geometry CSV (default: stdout)");
  analyze->add_option("--json", ana.json, "Also write geometry, DEC and horizon scan as JSON");

  CriterionOptions cri;
  auto* criterion = app.add_subcommand("criterion", "Trapped-surface criterion on centered balls");
  add_input(criterion, cri.input);
  criterion->add_option("--mode", cri.mode, "future|past|both")
      ->capture_default_str()
      ->check(CLI::IsMember({"future", "past", "both"}));
  criterion->add_option("--out", cri.out,
                        "Report CSV (default: stdout); with --mode both, .future/.past suffixes");
  criterion->add_option("--malec", cri.malec, "Also write the maximal-slice criterion CSV");
  criterion->add_option("--max-trace-tol", cri.max_trace_tol,
                        "Relative tolerance on |Tr_g k| for the maximal-slice hypothesis")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);

  JangCliOptions jan;
  auto* jang = app.add_subcommand("jang", "Solve the reduced generalized Jang equation");
  add_input(jang, jan.input);
  add_jang_options(jang, jan.jang, jan.bc);
  jang->add_option("--out", jan.out, "Solution CSV (default: stdout)");

  EnergyOptions ene;
  auto* energy = app.add_subcommand("energy", "Misner-Sharp energy, monotonicity and bounds");
  add_input(energy, ene.input);
  energy->add_option("--out", ene.out, "Energy CSV (default: stdout)");

  VerifyCliOptions ver;
  auto* verify = app.add_subcommand("verify", "Convergence-checked identity suites");
  add_input(verify, ver.input);
  verify->add_option("--check", ver.checks, "Comma-separated suites: geroch,de,chain,pg")
      ->capture_default_str();
  verify->add_option("--refine", ver.refine, "Number of refinement levels (n, 2n-1, 4n-3, ...)")
      ->capture_default_str()
      ->check(CLI::Range(1, 8));
  add_jang_options(verify, ver.jang, ver.bc);
  verify->add_option("--out", ver.out, "JSON report (default: stdout)");

  SweepCliOptions swp;
  SweepConfig& sc = swp.config;
  auto* sweep = app.add_subcommand("sweep", "Seeded soundness sweep of the criterion");
  sweep->add_option("--seed", sc.seed, "Random seed")->capture_default_str();
  sweep->add_option("--trials", sc.trials, "Accepted DEC draws")->capture_default_str();
  sweep->add_option("--max-attempts", sc.max_attempts, "Cap on draws")->capture_default_str();
  sweep->add_option("--n", sc.grid_count, "Samples per draw")->capture_default_str();
  sweep->add_option("--cds-compactness-min", sc.cds_compactness_min,
                    "constant_density_star compactness (8 pi/3) mu0 r_*^2, lower bound")
      ->capture_default_str();
  sweep->add_option("--cds-compactness-max", sc.cds_compactness_max,
                    "constant_density_star compactness, upper bound")->capture_default_str();
  sweep->add_option("--cds-radius-min", sc.cds_radius_min, "Star radius, lower bound")
      ->capture_default_str();
  sweep->add_option("--cds-radius-max", sc.cds_radius_max, "Star radius, upper bound")
      ->capture_default_str();
  sweep->add_option("--uc-k0-min", sc.uc_k0_min, "uniform_collapse K0, lower bound")
      ->capture_default_str();
  sweep->add_option("--uc-k0-max", sc.uc_k0_max, "uniform_collapse K0, upper bound")
      ->capture_default_str();
  sweep->add_option("--uc-scale-min", sc.uc_scale_min, "uniform_collapse L, lower bound")
      ->capture_default_str();
  sweep->add_option("--uc-scale-max", sc.uc_scale_max, "uniform_collapse L, upper bound")
      ->capture_default_str();
  sweep->add_option("--uc-beta-fraction-min", sc.uc_beta_fraction_min,
                    "uniform_collapse beta as a fraction of the DEC threshold (3/2) K0 L, lower bound")
      ->capture_default_str();
  sweep->add_option("--uc-beta-fraction-max", sc.uc_beta_fraction_max,
                    "Upper bound of the beta fraction; above 1 the draw breaks DEC and is discarded")
      ->capture_default_str();
  sweep->add_option("--extent-min", sc.extent_min, "Domain radius over r_* or 1/K0, lower bound")
      ->capture_default_str();
  sweep->add_option("--extent-max", sc.extent_max, "Upper bound of the domain radius ratio")
      ->capture_default_str();
  sweep->add_option("--out", swp.out, "JSON summary (default: stdout)");

  for (auto* sub : app.get_subcommands({})) {
    sub->allow_config_extras(CLI::config_extras_mode::error);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsageError;
  }

  try {
    CLI::App* sub = app.get_subcommands().front();
    const std::string id = digest(effective_config(sub));
    if (sub == generate) return run_generate(gen, id);
    if (sub == analyze) return run_analyze(ana, id);
    if (sub == criterion) return run_criterion(cri, id);
    if (sub == jang) return run_jang(jan, id);
    if (sub == energy) return run_energy(ene, id);
    if (sub == verify) return run_verify(ver, id);
    if (sub == sweep) return run_sweep(swp, id);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  }
  return kUsageError;
}
