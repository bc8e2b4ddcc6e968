#include "collapse/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "collapse/numerics.hpp"
#include "collapse/parallel.hpp"

namespace collapse {

namespace {
constexpr double kPi = std::numbers::pi;

double signed_density(double mu, double jn, Mode mode) {
  return mode == Mode::future ? mu - jn : mu + jn;
}
}  // namespace

std::string_view to_string(Mode mode) { return mode == Mode::future ? "future" : "past"; }

Mode parse_mode(std::string_view text) {
  if (text == "future") return Mode::future;
  if (text == "past") return Mode::past;
  throw DataError("unknown mode '" + std::string(text) + "' (expected future or past)");
}

CriterionReport trapped_surface_criterion(const GeometryProfile& prof, const HorizonScan& scan,
                                          Mode mode) {
  if (prof.domain != DomainKind::ball) {
    throw DataError("the trapped-surface criterion is stated for centered balls; "
                    "annulus domains are unsupported");
  }
  CriterionReport rep;
  rep.mode = mode;
  rep.dec_holds = dec_check(prof).holds;
  const auto& theta = mode == Mode::future ? prof.theta_plus : prof.theta_minus;

  double running_min = signed_density(prof.mu[0], prof.Jn[0], mode);
  bool trapped_seen = false;
  rep.rows.reserve(prof.size() - 1);
  for (std::size_t i = 1; i < prof.size(); ++i) {
    running_min = std::min(running_min, signed_density(prof.mu[i], prof.Jn[i], mode));
    trapped_seen = trapped_seen || theta[i] < 0.0;
    CriterionRow row;
    row.r = prof.r[i];
    row.lhs_matter = running_min;
    row.lhs_bending = 3.0 / (32.0 * kPi) * prof.theta_plus[i] * prof.theta_minus[i];
    row.rhs = 1.5 * prof.Rad[i] / prof.Vol[i];
    row.margin = row.lhs_matter + row.lhs_bending - row.rhs;
    row.fires = row.margin > 0.0;
    row.horizon_in_ball = trapped_seen || contains_horizon(scan, row.r);
    if (row.fires) {
      if (!rep.first_firing_radius) rep.first_firing_radius = row.r;
      if (!row.horizon_in_ball) ++rep.violations;
    }
    rep.rows.push_back(row);
  }
  return rep;
}

MalecReport malec_omurchadha_criterion(const InitialData& data, const GeometryProfile& prof,
                                       Mode mode, double max_trace_tol) {
  MalecReport rep;
  rep.mode = mode;
  double max_k = 0.0;
  for (std::size_t i = 0; i < prof.size(); ++i) {
    rep.max_trace = std::max(rep.max_trace, std::abs(prof.TrGk[i]));
    max_k = std::max(max_k, std::sqrt(prof.kNormSq[i]));
  }
  rep.maximal = rep.max_trace <= max_trace_tol * max_k;

  auto density = [&](double x) {
    const FieldJets j = data.at(x);
    const PointGeometry p = evaluate_point(j);
    return 4.0 * kPi * signed_density(p.mu, p.Jn, mode) * j.rho.value * j.rho.value;
  };
  const auto proper = cumulative_integral(
      prof.r, [&](double x) { return density(x) * std::sqrt(data.g11().at(x).value); });
  const auto coord = cumulative_integral(prof.r, density);

  for (std::size_t i = 1; i < prof.size(); ++i) {
    MalecRow row{prof.r[i], proper[i], coord[i], prof.Rad[i], proper[i] > prof.Rad[i],
                 coord[i] > prof.Rad[i]};
    if (row.fires && !rep.first_firing_radius) rep.first_firing_radius = row.r;
    const double scale = std::max(std::abs(row.lhs), std::abs(row.lhs_coord));
    if (std::abs(row.lhs - row.lhs_coord) > 1e-3 * scale) ++rep.measure_disagreements;
    rep.rows.push_back(row);
  }
  return rep;
}

namespace {

// Uniform double in [0, 1) from the top 53 bits; identical on every platform.
double unit(std::mt19937_64& gen) { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }

double draw(std::mt19937_64& gen, double lo, double hi) { return lo + (hi - lo) * unit(gen); }

FamilySpec draw_spec(std::mt19937_64& gen, const SweepConfig& cfg) {
  FamilySpec spec;
  spec.grid.domain = DomainKind::ball;
  spec.grid.r_min = 0.0;
  spec.grid.count = cfg.grid_count;
  const bool star = unit(gen) < 0.5;
  if (star) {
    spec.family = Family::constant_density_star;
    const double compactness = draw(gen, cfg.cds_compactness_min, cfg.cds_compactness_max);
    spec.star_radius = draw(gen, cfg.cds_radius_min, cfg.cds_radius_max);
    const double c = compactness / (spec.star_radius * spec.star_radius);
    spec.mu0 = 3.0 * c / (8.0 * kPi);
    spec.grid.r_max = spec.star_radius * draw(gen, cfg.extent_min, cfg.extent_max);
  } else {
    spec.family = Family::uniform_collapse;
    spec.collapse_rate = draw(gen, cfg.uc_k0_min, cfg.uc_k0_max);
    spec.scale = draw(gen, cfg.uc_scale_min, cfg.uc_scale_max);
    const double fraction = draw(gen, cfg.uc_beta_fraction_min, cfg.uc_beta_fraction_max);
    spec.anisotropy = fraction * 1.5 * spec.collapse_rate * spec.scale;
    spec.grid.r_max = draw(gen, cfg.extent_min, cfg.extent_max) / spec.collapse_rate;
  }
  return spec;
}

SweepTrial evaluate_trial(std::size_t index, const FamilySpec& spec) {
  SweepTrial t;
  t.index = index;
  t.family = spec.family;
  t.spec = spec;
  const InitialData data = build_family(spec);
  const GeometryProfile prof = compute_profile(data);
  t.dec_holds = dec_check(prof).holds;
  if (!t.dec_holds) return t;
  const HorizonScan hs = scan(data, prof);
  t.max_margin = -std::numeric_limits<double>::infinity();
  for (Mode mode : {Mode::future, Mode::past}) {
    const CriterionReport rep = trapped_surface_criterion(prof, hs, mode);
    t.violations += rep.violations;
    for (const auto& row : rep.rows) {
      t.firing_rows += row.fires ? 1 : 0;
      t.max_margin = std::max(t.max_margin, row.margin);
    }
  }
  return t;
}

}  // namespace

SweepSummary soundness_sweep(const SweepConfig& cfg) {
  SweepSummary sum;
  sum.near_miss_margin = -std::numeric_limits<double>::infinity();
  std::mt19937_64 gen(cfg.seed);
  std::size_t index = 0;
  while (sum.trials < cfg.trials && sum.attempts < cfg.max_attempts) {
    const std::size_t batch =
        std::min(cfg.trials - sum.trials + 8, cfg.max_attempts - sum.attempts);
    std::vector<FamilySpec> specs;
    specs.reserve(batch);
    for (std::size_t k = 0; k < batch; ++k) specs.push_back(draw_spec(gen, cfg));
    std::vector<SweepTrial> results(batch);
    parallel_for(batch, [&](std::size_t k) { results[k] = evaluate_trial(index + k, specs[k]); });
    for (auto& t : results) {
      if (sum.trials >= cfg.trials) break;
      ++sum.attempts;
      if (!t.dec_holds) {
        ++sum.discarded_non_dec;
        continue;
      }
      ++sum.trials;
      sum.firing_rows += t.firing_rows;
      sum.firing_trials += t.firing_rows > 0 ? 1 : 0;
      sum.violations += t.violations;
      if (t.firing_rows == 0) sum.near_miss_margin = std::max(sum.near_miss_margin, t.max_margin);
      sum.accepted.push_back(std::move(t));
    }
    index += batch;
  }
  return sum;
}

}  // namespace collapse
