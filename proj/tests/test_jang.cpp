#include <cmath>
#include <vector>

#include <doctest.h>

#include "collapse/jang.hpp"
#include "support.hpp"

using namespace collapse;
using namespace collapse::test;

TEST_SUITE("jang") {

TEST_CASE("boundary condition parsing") {
  CHECK(parse_boundary("center").kind == JangBoundary::Kind::center);
  const JangBoundary v = parse_boundary("r1=3,v1=-0.5");
  CHECK(v.kind == JangBoundary::Kind::value);
  CHECK(v.r1 == 3.0);
  CHECK(v.v1 == -0.5);
  const JangBoundary m = parse_boundary("r1=2.5,matched");
  CHECK(m.kind == JangBoundary::Kind::matched);
  CHECK(m.r1 == 2.5);
  CHECK(parse_boundary(to_string(v)).v1 == v.v1);
  CHECK_THROWS_AS(parse_boundary("r1=3"), DataError);
  CHECK_THROWS_AS(parse_boundary("edge"), DataError);
  CHECK_THROWS_AS(parse_boundary("r1=x,matched"), DataError);
}

TEST_CASE("invalid boundary data are rejected") {
  const InitialData pg = build_family(annulus(Family::painleve_gullstrand, 3.0, 10.0, 65));
  CHECK_THROWS_AS(solve_jang(pg, JangBoundary::center()), DataError);
  CHECK_THROWS_AS(solve_jang(pg, JangBoundary::value(3.0, 1.0)), DataError);
  CHECK_THROWS_AS(solve_jang(pg, JangBoundary::value(12.0, 0.0)), DataError);
}

TEST_CASE("painleve_gullstrand exact solution v = -sqrt(2m/r)") {
  const InitialData pg = build_family(annulus(Family::painleve_gullstrand, 3.0, 10.0, 129));
  const JangSolution sol = solve_jang(pg, JangBoundary::matched(3.0));
  REQUIRE(sol.regular());
  CHECK(sol.v_start == doctest::Approx(-0.816496580927726).epsilon(1e-14));
  CHECK(sol.r.back() == 10.0);
  CHECK(std::abs(sol.v.back() + 0.4472135954999579) <= 1e-9);
  for (std::size_t i = 0; i < sol.size(); ++i) {
    const double r = sol.r[i];
    CHECK(std::abs(sol.v[i] / -std::sqrt(2.0 / r) - 1.0) <= 1e-8);
    CHECK(std::abs(sol.geroch_m[i] - 1.0) <= 1e-8);
    CHECK(std::abs(sol.rho_s[i] - std::sqrt(1.0 - 2.0 / r)) <= 1e-8);
  }
  const GerochResidual g = geroch_residual(pg, sol);
  CHECK_FALSE(g.finite_difference);
  CHECK(g.max_residual <= 1e-8);
}

TEST_CASE("minkowski center solution is trivial") {
  const InitialData d = build_family(ball(Family::minkowski, 2.0, 65));
  const JangSolution sol = solve_jang(d, JangBoundary::center());
  REQUIRE(sol.regular());
  for (std::size_t i = 0; i < sol.size(); ++i) {
    CHECK(sol.v[i] == 0.0);
    CHECK(sol.geroch_m[i] == doctest::Approx(0.0).scale(1.0).epsilon(1e-15));
    CHECK(sol.s[i] == doctest::Approx(sol.r[i]).epsilon(1e-12));
  }
  CHECK(geroch_residual(d, sol).max_residual <= 1e-12);
}

TEST_CASE("uniform collapse center solution matches an independent integration") {
  const InitialData d = build_family(uniform_collapse(1.0, 1.0, 1.0, 0.8, 257));
  const JangSolution sol = solve_jang(d, JangBoundary::center());
  REQUIRE(sol.regular());
  const JangDiagnostics diag = jang_diagnostics(d, sol);
  const struct {
    double r, v, a_t;
  } ref[] = {{0.25, -0.26525109013041687, -0.06100436052166747},
             {0.5, -0.555030129363049, -0.11006025872609793},
             {0.8, -0.8826322762977136, -0.10329034537214188}};
  for (const auto& e : ref) {
    const std::size_t i = node_index(d, e.r);
    REQUIRE(sol.r[i] == doctest::Approx(e.r).epsilon(1e-15));
    CHECK(std::abs(sol.v[i] - e.v) <= 1e-7);
    CHECK(std::abs(diag.a_t[i] - e.a_t) <= 1e-7);
  }
}

TEST_CASE("warping function and diagnostic identities") {
  const InitialData d = build_family(uniform_collapse(1.0, 0.5, 1.0, 0.9, 129));
  const JangSolution sol = solve_jang(d, JangBoundary::center());
  const JangDiagnostics diag = jang_diagnostics(d, sol);
  for (std::size_t i = 1; i < sol.size(); ++i) {
    const double v = sol.v[i];
    const double w = 1.0 - v * v;
    const double rho_t = 1.0;  // g11 = 1, rho = r
    CHECK(sol.phi[i] == sol.rho_s[i]);
    CHECK(sol.rho_s[i] == doctest::Approx(std::sqrt(w) * rho_t).epsilon(1e-14));
    CHECK(sol.geroch_m[i] ==
          doctest::Approx(0.5 * sol.r[i] * (1.0 - sol.rho_s[i] * sol.rho_s[i])).epsilon(1e-14));
    CHECK(diag.a_n[i] == doctest::Approx(-2.0 * diag.a_t[i] / w).epsilon(1e-13));
    CHECK(diag.boundary_density[i] ==
          doctest::Approx(sol.phi[i] * diag.q_s[i]).epsilon(1e-12).scale(1e-12));
    CHECK(diag.hK_sq[i] ==
          doctest::Approx(diag.a_n[i] * diag.a_n[i] + 2.0 * diag.a_t[i] * diag.a_t[i]));
  }
}

TEST_CASE("center integration blows up inside the horizon") {
  for (double beta : {0.0, 1.0, 2.9}) {
    CAPTURE(beta);
    const InitialData d = build_family(uniform_collapse(2.0, beta, 1.0, 1.0, 257));
    const JangSolution sol = solve_jang(d, JangBoundary::center());
    REQUIRE(sol.blow_up.has_value());
    CHECK(sol.blow_up->kind == "velocity");
    CHECK(sol.blow_up->r <= 0.5);
    CHECK(sol.blow_up->r > 0.45);
    CHECK(1.0 - sol.blow_up->v * sol.blow_up->v < 1e-6);
    for (double v : sol.v) CHECK(std::abs(v) < 1.0);
    CHECK(sol.r.back() <= sol.blow_up->r);
  }
}

TEST_CASE("time reversal flips the Jang velocity") {
  const InitialData d = build_family(uniform_collapse(1.0, 0.5, 1.0, 0.9, 129));
  const JangSolution a = solve_jang(d, JangBoundary::center());
  const JangSolution b = solve_jang(time_reversed(d), JangBoundary::center());
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(b.v[i] == doctest::Approx(-a.v[i]).epsilon(1e-9).scale(1e-9));
    CHECK(b.geroch_m[i] == doctest::Approx(a.geroch_m[i]).epsilon(1e-9).scale(1e-9));
  }
}

TEST_CASE("mass-inequality chain on uniform collapse at r = 0.8") {
  const InitialData d = build_family(uniform_collapse(1.0, 1.0, 1.0, 0.8, 1025));
  const GeometryProfile p = compute_profile(d);
  const HorizonScan hs = scan(d, p);
  const JangSolution sol = solve_jang(d, JangBoundary::center());
  const ChainReport c = verify_mass_inequality_chain(d, p, hs, sol, 0.8);
  REQUIRE(c.lines.size() == 4);
  CHECK(c.lines[0].margin == doctest::Approx(0.00883808878527051).epsilon(1e-6));
  CHECK(c.lines[1].margin == doctest::Approx(0.0031535009088812516).epsilon(1e-5));
  CHECK(c.lines[2].margin == doctest::Approx(0.014722826928608379).epsilon(1e-6));
  CHECK(c.lines[3].margin == doctest::Approx(0.37988427291647686).epsilon(1e-7));
  CHECK(c.min_muJw == doctest::Approx(0.11250133227407434).epsilon(1e-7));
  CHECK(c.holds());
  CHECK(c.dec_holds);
}

TEST_CASE("chain is refused when the ball holds a horizon") {
  const InitialData d = build_family(uniform_collapse(2.0, 1.0, 1.0, 1.0, 129));
  const GeometryProfile p = compute_profile(d);
  const HorizonScan hs = scan(d, p);
  const JangSolution sol = solve_jang(d, JangBoundary::center());
  CHECK_THROWS_AS(verify_mass_inequality_chain(d, p, hs, sol, 0.75), DataError);
}

TEST_CASE("graph function reconstruction") {
  const InitialData d = build_family(uniform_collapse(1.0, 0.5, 1.0, 0.9, 129));
  JangOptions opt;
  opt.reconstruct_f = true;
  const JangSolution sol = solve_jang(d, JangBoundary::center(), opt);
  REQUIRE(sol.f.size() == sol.size());
  CHECK(sol.f.front() == 0.0);
  CHECK(solve_jang(d, JangBoundary::center()).f.empty());
}

}

TEST_SUITE("jang") {

TEST_CASE("integration lands on the star surface") {
  FamilySpec s = ball(Family::constant_density_star, 3.0, 129);
  s.mu0 = 0.02;
  s.star_radius = 2.1;  // between nodes
  const InitialData d = build_family(s);
  REQUIRE(breakpoints(d) == std::vector<double>{2.1});
  const JangSolution sol = solve_jang(d, JangBoundary::center());
  REQUIRE(sol.regular());
  const GeometryProfile p = compute_profile(d);
  const HorizonScan hs = scan(d, p);
  // Time-symmetric: v = 0 and m = Q = I exactly.
  for (std::size_t i = 1; i < sol.size(); ++i) {
    CHECK(sol.v[i] == 0.0);
    const ChainReport c = verify_mass_inequality_chain(d, p, hs, sol, sol.r[i]);
    CHECK(std::abs(c.equality_residual) <= 1e-8 * c.equality_scale);
    CHECK(c.holds());
  }
}

}
