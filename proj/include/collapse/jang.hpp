#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "collapse/geometry.hpp"
#include "collapse/horizon.hpp"
#include "collapse/radial_data.hpp"

namespace collapse {

// Boundary condition for the reduced Jang ODE.
struct JangBoundary {
  enum class Kind { center, value, matched };
  Kind kind = Kind::center;
  double r1 = 0.0;
  double v1 = 0.0;  // used by Kind::value

  static JangBoundary center() { return {}; }
  static JangBoundary value(double r1, double v1) { return {Kind::value, r1, v1}; }
  // v(r1) = Tr_S k / H = rho k_b / rho_t at r1.
  static JangBoundary matched(double r1) { return {Kind::matched, r1, 0.0}; }
};

// "center", "r1=<x>,v1=<y>", or "r1=<x>,matched".
JangBoundary parse_boundary(std::string_view text);
std::string to_string(const JangBoundary& bc);

struct JangOptions {
  double rtol = 1e-9;
  double atol = 1e-12;
  double blow_eps = 1e-6;      // stop once 1 - v^2 falls below this
  bool reconstruct_f = false;  // integrate the graph function f as well
};

struct BlowUp {
  double r = 0.0;
  double v = 0.0;
  std::string kind;  // "velocity", "rho_r_sign_change", "step_underflow"
};

// Node values of the Jang solution on the grid nodes reached by the
// integration. The first row is the start point (the center or r1).
//   dv/dr = sqrt(g11) k_a + sqrt(g11) (2 k_b - 2 rho_t v / rho) / (1 - v^2)
//           - v d/dr ln(g11^{-1/2} rho_r)
// Along with v: s (arclength of the Jang metric, ds/dr = sqrt(g11 / (1 - v^2))),
// Q = int 4 pi rho^2 rho_r (mu - v Jn) dr and
// I = int (1/4) rho^2 rho_r (16 pi (mu - v Jn) + |h - K|^2 + 2 |q|^2) dr.
struct JangSolution {
  JangBoundary bc;
  double r_start = 0.0;
  double v_start = 0.0;
  std::vector<double> r;
  std::vector<double> v;
  std::vector<double> dv;        // right-hand side of the ODE at the node
  std::vector<double> s;
  std::vector<double> phi;       // warping function, equal to rho_s
  std::vector<double> rho_s;     // sqrt(1 - v^2) rho_t
  std::vector<double> geroch_m;  // (rho / 2)(1 - rho_s^2)
  std::vector<double> Q;
  std::vector<double> I;
  std::vector<double> min_muJw;  // running minimum of mu - v Jn up to the node
  std::vector<double> f;         // empty unless reconstructed
  std::optional<BlowUp> blow_up;
  double r_reached = 0.0;
  std::size_t accepted_steps = 0;
  std::size_t rejected_steps = 0;

  std::size_t size() const { return r.size(); }
  bool regular() const { return !blow_up.has_value(); }
};

// Throws DataError for |v1| >= 1, a center condition on an annulus, or r1
// outside the domain.
JangSolution solve_jang(const InitialData& data, const JangBoundary& bc,
                        const JangOptions& options = {});

struct JangDiagnostics {
  std::vector<double> r;
  std::vector<double> a_t;    // rho_t v / rho - k_b
  std::vector<double> a_n;    // -2 a_t / (1 - v^2)
  std::vector<double> q_s;    // -2 v a_t / sqrt(1 - v^2)
  std::vector<double> hK_sq;  // a_n^2 + 2 a_t^2
  std::vector<double> q_sq;   // q_s^2
  std::vector<double> w_norm;
  std::vector<double> muJw;   // mu - v Jn
  std::vector<double> boundary_density;  // phi q_s, equal to -2 rho_t v a_t
};

JangDiagnostics jang_diagnostics(const InitialData& data, const JangSolution& sol);

// m_s and (1/4) rho_s rho^2 Rbar at every node past the start point. Rbar is
// the scalar curvature of ds^2 + rho^2 dOmega^2. m_s uses the chain rule for
// analytic data and, for tabulated data, finite differences in r divided by
// ds/dr.
struct GerochResidual {
  std::vector<double> r;
  std::vector<double> lhs;
  std::vector<double> rhs;
  double max_residual = 0.0;
  bool finite_difference = false;
};

GerochResidual geroch_residual(const InitialData& data, const JangSolution& sol);

struct ChainLine {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  bool holds = true;  // margin >= -tol * max(1, |lhs|, |rhs|)
};

// The mass-inequality chain at one node radius r of a center-condition
// solution on a horizon-free ball:
//   m >= Q + B,  Q >= (4 pi / 3) rho^3 min,
//   rho / 2 >= (4 pi / 3) rho^3 min + rho^3 theta+ theta- / 8,
//   (3/2) Rad / Vol >= min + (3 / 32 pi) theta+ theta-,
// with B = rho^2 rho_t v a_t and min = min over the ball of mu - v Jn, and the
// integrated equality m = I + B. Annulus solutions report only the equality
// between r1 and r.
struct ChainReport {
  double r = 0.0;
  bool ball = true;
  double m = 0.0;
  double Q = 0.0;
  double I = 0.0;
  double B = 0.0;
  double min_muJw = 0.0;
  std::vector<ChainLine> lines;
  double equality_residual = 0.0;
  double equality_scale = 1.0;
  bool dec_holds = true;
  bool holds() const;
};

// Throws DataError when B_r contains a horizon or trapped sphere, or when the
// solution does not reach r.
ChainReport verify_mass_inequality_chain(const InitialData& data, const GeometryProfile& profile,
                                         const HorizonScan& scan, const JangSolution& sol,
                                         double r, double tol = 1e-8);

}  // namespace collapse
