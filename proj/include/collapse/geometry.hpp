#pragma once

#include <cstddef>
#include <vector>

#include "collapse/radial_data.hpp"

namespace collapse {

// Pointwise geometry of one sphere S_r, from the field jets at r > 0.
//
// With the proper-radius derivative d/dt = g11^{-1/2} d/dr:
//   R      = -4 rho_tt / rho + 2 (1 - rho_t^2) / rho^2
//   16 pi mu = R + (Tr_g k)^2 - |k|^2,  Tr_g k = ka + 2 kb,  |k|^2 = ka^2 + 2 kb^2
//   8 pi J(n) = 2 (rho_t / rho)(ka - kb) - 2 d_t kb
//   H = 2 rho_t / rho,  Tr_S k = 2 kb,  theta_pm = H +- Tr_S k
struct PointGeometry {
  double rho_t = 0.0;
  double rho_tt = 0.0;
  double kb_t = 0.0;
  double R = 0.0;
  double mu = 0.0;
  double Jn = 0.0;
  double H = 0.0;
  double TrSk = 0.0;
  double theta_plus = 0.0;
  double theta_minus = 0.0;
  double TrGk = 0.0;
  double kNormSq = 0.0;
};

PointGeometry evaluate_point(const FieldJets& jets);

// Scalar curvature of g11 dr^2 + rho^2 dOmega^2 alone.
double scalar_curvature_point(const Jet& g11, const Jet& rho);

struct GeometryProfile {
  DomainKind domain = DomainKind::ball;
  std::vector<double> r;
  std::vector<double> R;
  std::vector<double> mu;
  std::vector<double> Jn;
  std::vector<double> H;
  std::vector<double> TrSk;
  std::vector<double> theta_plus;
  std::vector<double> theta_minus;
  std::vector<double> Rad;
  std::vector<double> Vol;
  std::vector<double> TrGk;
  std::vector<double> kNormSq;
  std::vector<double> rho;
  std::vector<double> rho_t;
  std::vector<double> kb;

  // Ball domains: row 0 holds one-sided limits (R, mu, Jn extrapolated from the
  // first positive nodes; H and theta_pm are +inf).
  bool center_limit = false;
  std::size_t size() const { return r.size(); }
  // Radius and volume are measured from the annulus inner boundary.
  bool annulus_based() const { return domain == DomainKind::annulus; }
};

GeometryProfile compute_profile(const InitialData& data);

std::vector<double> scalar_curvature(const InitialData& data);

struct ConstraintDensities {
  std::vector<double> mu;
  std::vector<double> Jn;
};
ConstraintDensities constraint_densities(const InitialData& data);

struct Expansions {
  std::vector<double> H;
  std::vector<double> TrSk;
  std::vector<double> theta_plus;
  std::vector<double> theta_minus;
};
Expansions expansions(const InitialData& data);

struct RadiusVolume {
  std::vector<double> Rad;
  std::vector<double> Vol;
  bool annulus_based = false;
};
// Rad = int sqrt(g11) dr, Vol = 4 pi int sqrt(g11) rho^2 dr from the inner
// boundary, five-point Gauss-Legendre per cell.
RadiusVolume radius_volume(const InitialData& data);

struct DecReport {
  std::vector<double> margin;  // mu - |Jn|
  bool holds = true;
  std::size_t worst_index = 0;
  double worst_r = 0.0;
  double worst_margin = 0.0;
};
// Dominant energy condition mu >= |J(n)|; `tolerance` absorbs roundoff in
// vacuum regions.
DecReport dec_check(const GeometryProfile& profile, double tolerance = 1e-12);

}  // namespace collapse
