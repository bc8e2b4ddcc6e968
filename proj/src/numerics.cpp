#include "collapse/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace collapse {

std::vector<double> fd_weights(double z, std::span<const double> x, int order) {
  const std::size_t n = x.size();
  const int m = order;
  // c[i][k]: weight of x[i] for the k-th derivative.
  std::vector<std::vector<double>> c(n, std::vector<double>(m + 1, 0.0));
  double c1 = 1.0;
  double c4 = x[0] - z;
  c[0][0] = 1.0;
  for (std::size_t i = 1; i < n; ++i) {
    const int mn = std::min(static_cast<int>(i), m);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = x[i] - z;
    for (std::size_t j = 0; j < i; ++j) {
      const double c3 = x[i] - x[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) {
          c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        }
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k) {
        c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
      }
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = c[i][m];
  return w;
}

std::vector<double> differentiate(std::span<const double> r, std::span<const double> f,
                                  int order) {
  if (order != 1 && order != 2) {
    throw std::invalid_argument("derivative order must be 1 or 2");
  }
  if (r.size() != f.size()) {
    throw std::invalid_argument("derivative: sample count does not match grid");
  }
  const std::size_t n = r.size();
  const std::size_t needed = order == 1 ? 3 : 4;
  if (n < needed) {
    throw std::invalid_argument("derivative of order " + std::to_string(order) +
                                " needs at least " + std::to_string(needed) + " points");
  }
  std::vector<double> out(n);
  const std::size_t edge = order == 1 ? 3 : 4;
  auto apply = [&](std::size_t i, std::size_t first, std::size_t count) {
    const auto w = fd_weights(r[i], r.subspan(first, count), order);
    double acc = 0.0;
    for (std::size_t k = 0; k < count; ++k) acc += w[k] * f[first + k];
    out[i] = acc;
  };
  apply(0, 0, edge);
  for (std::size_t i = 1; i + 1 < n; ++i) apply(i, i - 1, 3);
  apply(n - 1, n - edge, edge);
  return out;
}

std::size_t locate_cell(std::span<const double> r, double x) {
  const auto it = std::upper_bound(r.begin(), r.end(), x);
  std::size_t i = it == r.begin() ? 0 : static_cast<std::size_t>(it - r.begin()) - 1;
  return std::min(i, r.size() - 2);
}

double interpolate_cubic(std::span<const double> r, std::span<const double> f, double x) {
  const std::size_t n = r.size();
  const std::size_t cell = locate_cell(r, x);
  const std::size_t count = std::min<std::size_t>(4, n);
  std::size_t first = cell == 0 ? 0 : cell - 1;
  first = std::min(first, n - count);
  const auto w = fd_weights(x, r.subspan(first, count), 0);
  double acc = 0.0;
  for (std::size_t k = 0; k < count; ++k) acc += w[k] * f[first + k];
  return acc;
}

double extrapolate_to_first(std::span<const double> r, std::span<const double> f) {
  const auto w = fd_weights(r[0], r.subspan(1, 3), 0);
  return w[0] * f[1] + w[1] * f[2] + w[2] * f[3];
}

const GaussRule& gauss_legendre5() {
  static const GaussRule rule = [] {
    const double a = std::sqrt(5.0 - 2.0 * std::sqrt(10.0 / 7.0)) / 3.0;
    const double b = std::sqrt(5.0 + 2.0 * std::sqrt(10.0 / 7.0)) / 3.0;
    const double wa = (322.0 + 13.0 * std::sqrt(70.0)) / 900.0;
    const double wb = (322.0 - 13.0 * std::sqrt(70.0)) / 900.0;
    return GaussRule{{-b, -a, 0.0, a, b}, {wb, wa, 128.0 / 225.0, wa, wb}};
  }();
  return rule;
}

}  // namespace collapse
