#include <cmath>

#include <doctest.h>

#include "collapse/geometry.hpp"
#include "support.hpp"

using namespace collapse;
using namespace collapse::test;

TEST_SUITE("geometry") {

TEST_CASE("vacuum slicings have vanishing constraints") {
  for (Family f : {Family::painleve_gullstrand, Family::schwarzschild_ts}) {
    CAPTURE(to_string(f));
    const InitialData d = build_family(annulus(f, 2.5, 20.0, 257));
    const GeometryProfile p = compute_profile(d);
    for (std::size_t i = 0; i < p.size(); ++i) {
      CHECK(std::abs(p.mu[i]) <= 1e-10);
      CHECK(std::abs(p.Jn[i]) <= 1e-10);
    }
  }
}

TEST_CASE("uniform collapse densities match the closed forms") {
  const double k0 = 1.7, beta = 0.8, L = 1.3;
  const InitialData d = build_family(uniform_collapse(k0, beta, L, 2.0, 129));
  const GeometryProfile p = compute_profile(d);
  REQUIRE(p.center_limit);
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double mu = 3.0 * k0 * k0 / (8.0 * kPi) + k0 * k0 * beta * p.r[i] / (4.0 * kPi * L);
    CHECK(p.mu[i] == doctest::Approx(mu).epsilon(1e-12));
    CHECK(p.Jn[i] == doctest::Approx(-k0 * beta / (4.0 * kPi * L)).epsilon(1e-12));
    CHECK(p.R[i] == doctest::Approx(0.0).scale(1.0).epsilon(1e-10));
  }
  CHECK(std::isinf(p.H[0]));
  CHECK(std::isinf(p.theta_plus[0]));
}

TEST_CASE("constant density star: curvature, radius and volume") {
  FamilySpec s = ball(Family::constant_density_star, 0.9, 129);
  s.mu0 = 3.0 / (8.0 * kPi);  // c = 1
  s.star_radius = 0.95;
  const InitialData d = build_family(s);
  const GeometryProfile p = compute_profile(d);
  for (std::size_t i = 0; i < p.size(); ++i) {
    CHECK(p.R[i] == doctest::Approx(6.0).epsilon(1e-10));
    CHECK(p.Rad[i] == doctest::Approx(std::asin(p.r[i])).epsilon(1e-11));
    const double r = p.r[i];
    const double vol = 4.0 * kPi * 0.5 * (std::asin(r) - r * std::sqrt(1.0 - r * r));
    CHECK(p.Vol[i] == doctest::Approx(vol).epsilon(1e-10));
  }
}

TEST_CASE("minkowski radius and volume") {
  const GeometryProfile p = compute_profile(build_family(ball(Family::minkowski, 2.0, 65)));
  for (std::size_t i = 0; i < p.size(); ++i) {
    CHECK(p.Rad[i] == doctest::Approx(p.r[i]).epsilon(1e-14));
    CHECK(p.Vol[i] == doctest::Approx(4.0 * kPi * std::pow(p.r[i], 3) / 3.0).epsilon(1e-13));
  }
  const GeometryProfile a =
      compute_profile(build_family(annulus(Family::minkowski, 1.0, 2.0, 65)));
  CHECK(a.annulus_based());
  CHECK(a.Rad.back() == doctest::Approx(1.0));
  CHECK(a.Vol.back() == doctest::Approx(4.0 * kPi * 7.0 / 3.0));
}

TEST_CASE("expansion product identity theta+ theta- = H^2 - TrSk^2") {
  for (const FamilySpec& s :
       {uniform_collapse(2.0, 1.0, 1.0, 1.5, 97), blob(0.3, 1.0, 5.0, 97, true),
        annulus(Family::painleve_gullstrand, 0.5, 8.0, 97)}) {
    const GeometryProfile p = compute_profile(build_family(s));
    for (std::size_t i = p.center_limit ? 1 : 0; i < p.size(); ++i) {
      const double lhs = p.theta_plus[i] * p.theta_minus[i];
      const double rhs = p.H[i] * p.H[i] - p.TrSk[i] * p.TrSk[i];
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12).scale(p.H[i] * p.H[i]));
    }
  }
}

TEST_CASE("time reversal keeps mu, flips Jn and swaps the expansions") {
  const InitialData d = build_family(uniform_collapse(1.2, 0.6, 1.0, 2.0, 65));
  const GeometryProfile p = compute_profile(d);
  const GeometryProfile q = compute_profile(time_reversed(d));
  for (std::size_t i = 0; i < p.size(); ++i) {
    CHECK(q.mu[i] == doctest::Approx(p.mu[i]).epsilon(1e-14));
    CHECK(q.Jn[i] == doctest::Approx(-p.Jn[i]).epsilon(1e-14));
    if (i > 0) {
      CHECK(q.theta_plus[i] == doctest::Approx(p.theta_minus[i]).epsilon(1e-14));
      CHECK(q.theta_minus[i] == doctest::Approx(p.theta_plus[i]).epsilon(1e-14));
    }
  }
}

TEST_CASE("pointwise scalar curvature of a round sphere metric") {
  // g11 = 1/(1 - r^2), rho = r: the unit 3-sphere, R = 6.
  const double r = 0.4;
  const double u = 1.0 - r * r;
  const Jet g{1.0 / u, 2.0 * r / (u * u), 2.0 / (u * u) + 8.0 * r * r / (u * u * u)};
  CHECK(scalar_curvature_point(g, Jet{r, 1.0, 0.0}) == doctest::Approx(6.0).epsilon(1e-13));
}

TEST_CASE("dominant energy condition threshold on uniform collapse") {
  const double k0 = 1.0, L = 1.0;
  const double threshold = 1.5 * k0 * L;
  const auto holds = [&](double beta) {
    return dec_check(compute_profile(build_family(uniform_collapse(k0, beta, L, 1.0, 33)))).holds;
  };
  CHECK(holds(0.0));
  CHECK(holds(0.99 * threshold));
  CHECK_FALSE(holds(1.01 * threshold));
  const DecReport rep =
      dec_check(compute_profile(build_family(uniform_collapse(k0, 1.01 * threshold, L, 1.0, 33))));
  CHECK(rep.worst_index == 0);
  CHECK(rep.worst_margin < 0.0);
}

}
