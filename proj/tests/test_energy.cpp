#include <cmath>

#include <doctest.h>

#include "collapse/energy.hpp"
#include "support.hpp"

using namespace collapse;
using namespace collapse::test;

namespace {

struct Run {
  GeometryProfile profile;
  HorizonScan scan;
  EnergyProfile energy;
  EnergyBoundsReport report;
};

Run run(const InitialData& d) {
  Run out;
  out.profile = compute_profile(d);
  out.scan = scan(d, out.profile);
  out.energy = misner_sharp(d, out.profile);
  out.report = energy_bounds_check(d, out.profile, out.energy, out.scan);
  return out;
}

}  // namespace

TEST_SUITE("energy") {

TEST_CASE("Misner-Sharp energy equals the mass on both Schwarzschild slicings") {
  for (Family f : {Family::schwarzschild_ts, Family::painleve_gullstrand}) {
    CAPTURE(to_string(f));
    FamilySpec s = annulus(f, 2.5, 30.0, 129);
    s.mass = 1.0;
    const Run r = run(build_family(s));
    for (double e : r.energy.E) CHECK(std::abs(e - 1.0) <= 1e-10);
    for (double e : r.energy.E_alt) CHECK(std::abs(e - 1.0) <= 1e-10);
  }
}

TEST_CASE("minkowski energy vanishes and is a rigidity candidate") {
  const Run r = run(build_family(ball(Family::minkowski, 3.0, 65)));
  for (double e : r.energy.E) CHECK(std::abs(e) <= 1e-14);
  CHECK(r.report.holds());
  CHECK(r.report.candidate == Rigidity::minkowski_candidate);
  REQUIRE(r.report.rigidity_confirmed.has_value());
  CHECK(*r.report.rigidity_confirmed);
  CHECK(to_string(Rigidity::minkowski_candidate) == "minkowski_candidate");
}

TEST_CASE("the two energy formulas agree and match the mass function") {
  const Run r = run(build_family(blob(0.3, 1.0, 8.0, 257)));
  for (std::size_t i = 0; i < r.energy.r.size(); ++i) {
    CHECK(std::abs(r.energy.E[i] - r.energy.E_alt[i]) <= 1e-15 * std::max(1.0, r.energy.rho[i]));
  }
  const double expected[] = {0.024332576503597242, 0.12827798865873602, 0.2861964882932306};
  const double radii[] = {0.5, 1.0, 2.0};
  for (int k = 0; k < 3; ++k) {
    const std::size_t i = static_cast<std::size_t>(std::lround(radii[k] / 8.0 * 256));
    REQUIRE(r.energy.r[i] == radii[k]);
    CHECK(r.energy.E[i] == doctest::Approx(expected[k]).epsilon(1e-12));
  }
}

TEST_CASE("dE identity is exact for analytic providers") {
  for (const FamilySpec& s :
       {uniform_collapse(1.0, 0.7, 1.0, 2.0, 129), blob(0.3, 1.0, 6.0, 129),
        annulus(Family::painleve_gullstrand, 0.5, 10.0, 129)}) {
    const Run r = run(build_family(s));
    CHECK_FALSE(r.energy.finite_difference);
    for (std::size_t i = 1; i < r.energy.r.size(); ++i) {
      CHECK(r.energy.dE_numeric[i] ==
            doctest::Approx(r.energy.dE_identity[i]).epsilon(1e-10).scale(1.0));
    }
  }
}

TEST_CASE("outermost-horizon bound saturates on painleve_gullstrand") {
  const Run r = run(build_family(annulus(Family::painleve_gullstrand, 0.5, 10.0, 129)));
  REQUIRE(r.report.outermost_root.has_value());
  CHECK(std::abs(*r.report.outermost_root - 2.0) <= 1e-10);
  CHECK(r.report.bound == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(r.report.all_bound);
  CHECK(r.report.candidate == Rigidity::schwarzschild_candidate);
  REQUIRE(r.report.rigidity_confirmed.has_value());
  CHECK(*r.report.rigidity_confirmed);
  for (std::size_t i = 0; i < r.energy.r.size(); ++i) {
    if (r.energy.r[i] > 2.0) CHECK(r.energy.E[i] - r.report.bound >= -1e-10);
  }
  CHECK(r.report.schwarzschild_flags > 0);
}

TEST_CASE("monotonicity and positivity on DEC data") {
  FamilySpec cds = ball(Family::constant_density_star, 3.0, 129);
  cds.mu0 = 0.02;
  cds.star_radius = 2.0;
  for (const FamilySpec& s :
       {cds, blob(0.3, 1.0, 6.0, 129), uniform_collapse(1.0, 1.0, 1.0, 0.9, 129)}) {
    const Run r = run(build_family(s));
    CHECK(r.report.dec_holds);
    CHECK(r.report.all_monotone);
    CHECK(r.report.all_positive);
    CHECK(r.report.holds());
    for (const auto& iv : r.report.intervals) CHECK(iv.monotone_ok);
  }
}

TEST_CASE("time-reversed collapse: the untrapped core stays monotone") {
  // theta- < 0 beyond 1/(2 K0), theta+ > 0 everywhere.
  const InitialData d = time_reversed(build_family(uniform_collapse(2.0, 0.0, 1.0, 1.0, 129)));
  const Run r = run(d);
  REQUIRE_FALSE(r.report.intervals.empty());
  CHECK(r.report.intervals.front().kind == RegionKind::expanding);
  CHECK(r.report.all_monotone);
  CHECK(r.scan.past_roots.size() == 1);
  CHECK(r.scan.future_roots.empty());
}

TEST_CASE("energy is invariant under time reversal") {
  const InitialData d = build_family(uniform_collapse(1.3, 0.4, 1.0, 1.0, 65));
  const Run a = run(d);
  const Run b = run(time_reversed(d));
  for (std::size_t i = 0; i < a.energy.r.size(); ++i) {
    CHECK(b.energy.E[i] == doctest::Approx(a.energy.E[i]).epsilon(1e-14));
    CHECK(b.energy.dE_identity[i] == doctest::Approx(a.energy.dE_identity[i]).epsilon(1e-14));
  }
}

}
