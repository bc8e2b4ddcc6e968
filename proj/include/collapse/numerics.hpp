#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace collapse {

// Finite-difference weights for the derivative of order `order` at `z`
// on the stencil `x` (Fornberg's recursion). Works on arbitrary spacing.
std::vector<double> fd_weights(double z, std::span<const double> x, int order);

// Node-wise derivative of tabulated samples. Order 1 uses three-point stencils
// (centered inside, one-sided at the ends); order 2 uses three points inside and
// four at the ends. Both are exact on quadratics and second order on smooth data.
// Throws std::invalid_argument for fewer than 3 (order 1) or 4 (order 2) points.
std::vector<double> differentiate(std::span<const double> r, std::span<const double> f,
                                  int order);

// Index i of the cell [r[i], r[i+1]] containing x (clamped to the end cells).
std::size_t locate_cell(std::span<const double> r, double x);

// Local four-point Lagrange interpolation (cubic order).
double interpolate_cubic(std::span<const double> r, std::span<const double> f, double x);

// Quadratic extrapolation of samples at r[1..3] to r[0].
double extrapolate_to_first(std::span<const double> r, std::span<const double> f);

struct GaussRule {
  std::array<double, 5> nodes;
  std::array<double, 5> weights;
};

// Five-point Gauss-Legendre rule on [-1, 1].
const GaussRule& gauss_legendre5();

// Integral over [a, b] with the five-point rule.
template <class F>
double integrate_cell(F&& f, double a, double b) {
  const auto& rule = gauss_legendre5();
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  double acc = 0.0;
  for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
    acc += rule.weights[q] * f(mid + half * rule.nodes[q]);
  }
  return half * acc;
}

// Cumulative integral from r[0] to each node, one Gauss rule per cell,
// accumulated left to right.
template <class F>
std::vector<double> cumulative_integral(std::span<const double> r, F&& f) {
  std::vector<double> out(r.size(), 0.0);
  for (std::size_t i = 1; i < r.size(); ++i) {
    out[i] = out[i - 1] + integrate_cell(f, r[i - 1], r[i]);
  }
  return out;
}

}  // namespace collapse
