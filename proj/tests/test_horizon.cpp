#include <cmath>
#include <stdexcept>

#include <doctest.h>

#include "collapse/horizon.hpp"
#include "support.hpp"

using namespace collapse;
using namespace collapse::test;

namespace {

HorizonScan scan_of(const InitialData& d) { return scan(d, compute_profile(d)); }

}  // namespace

TEST_SUITE("horizon") {

TEST_CASE("painleve_gullstrand future horizon at r = 2m") {
  const HorizonScan s = scan_of(build_family(annulus(Family::painleve_gullstrand, 0.5, 10.0, 129)));
  REQUIRE(s.future_roots.size() == 1);
  CHECK(std::abs(s.future_roots[0].r - 2.0) <= 1e-10);
  CHECK(s.future_roots[0].slope_sign > 0);
  CHECK(s.past_roots.empty());
  REQUIRE(s.outermost().has_value());
  CHECK(*s.outermost() == s.future_roots[0].r);
  CHECK_FALSE(s.horizon_free());
  CHECK(contains_horizon(s, 3.0));
  CHECK_FALSE(contains_horizon(s, 1.5));
  CHECK_THROWS_AS(contains_horizon(s, 11.0), std::out_of_range);
  REQUIRE(s.trapped.size() == 1);
  CHECK(s.trapped[0].kind == RegionKind::future_trapped);
  REQUIRE(s.untrapped.size() == 1);
  CHECK(s.untrapped[0].kind == RegionKind::expanding);
}

TEST_CASE("tabulated horizon location converges at second order or better") {
  double err[3];
  const std::size_t ns[3] = {129, 257, 513};
  for (int k = 0; k < 3; ++k) {
    const HorizonScan s =
        scan_of(build_family(annulus(Family::painleve_gullstrand, 0.5, 10.0, ns[k], true)));
    REQUIRE(s.future_roots.size() == 1);
    err[k] = std::abs(s.future_roots[0].r - 2.0);
  }
  const double h0 = 9.5 / 128, h2 = 9.5 / 512;
  CHECK(std::log(err[0] / err[2]) / std::log(h0 / h2) >= 2.0);
}

TEST_CASE("uniform collapse K0 = 2 has a theta+ root at r = 1/2") {
  const HorizonScan s = scan_of(build_family(uniform_collapse(2.0, 2.9, 1.0, 1.0, 257)));
  REQUIRE(s.future_roots.size() == 1);
  CHECK(s.future_roots[0].r == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(s.past_roots.empty());
  REQUIRE_FALSE(s.untrapped.empty());
  CHECK(s.untrapped.front().kind == RegionKind::expanding);
  CHECK(s.untrapped.front().first == 0);
}

TEST_CASE("time reversal exchanges future and past roots") {
  const InitialData d = build_family(annulus(Family::painleve_gullstrand, 0.5, 10.0, 129));
  const HorizonScan s = scan_of(time_reversed(d));
  CHECK(s.future_roots.empty());
  REQUIRE(s.past_roots.size() == 1);
  CHECK(std::abs(s.past_roots[0].r - 2.0) <= 1e-10);
  REQUIRE(s.trapped.size() == 1);
  CHECK(s.trapped[0].kind == RegionKind::past_trapped);
}

TEST_CASE("regular data are horizon-free") {
  for (const FamilySpec& sp :
       {ball(Family::minkowski, 3.0, 65), blob(0.3, 1.0, 6.0, 129),
        annulus(Family::schwarzschild_ts, 2.5, 10.0, 65)}) {
    const HorizonScan s = scan_of(build_family(sp));
    CHECK(s.horizon_free());
    CHECK_FALSE(s.outermost().has_value());
    CHECK(s.trapped.empty());
    CHECK(s.untrapped.size() == 1);
  }
}

TEST_CASE("scan serializes its roots") {
  const auto j = to_json(scan_of(build_family(annulus(Family::painleve_gullstrand, 0.5, 10.0, 65))));
  REQUIRE(j.contains("future_roots"));
  CHECK(j["future_roots"].size() == 1);
  CHECK(j["future_roots"][0]["r"].get<double>() == doctest::Approx(2.0));
}

}
