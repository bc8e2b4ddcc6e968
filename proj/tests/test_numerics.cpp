#include <cmath>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "collapse/numerics.hpp"

using namespace collapse;

TEST_SUITE("numerics") {

TEST_CASE("finite-difference weights reproduce polynomial derivatives") {
  const std::vector<double> x{0.0, 0.3, 0.7, 1.2};
  const auto w1 = fd_weights(0.3, x, 1);
  const auto w2 = fd_weights(0.3, x, 2);
  double d1 = 0.0;
  double d2 = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double f = x[i] * x[i] * x[i] - 2.0 * x[i];
    d1 += w1[i] * f;
    d2 += w2[i] * f;
  }
  CHECK(d1 == doctest::Approx(3.0 * 0.09 - 2.0).epsilon(1e-12));
  CHECK(d2 == doctest::Approx(6.0 * 0.3).epsilon(1e-12));
}

TEST_CASE("differentiate is exact on quadratics on a nonuniform grid") {
  std::vector<double> r;
  for (int i = 0; i < 12; ++i) r.push_back(0.1 * i + 0.01 * i * i);
  std::vector<double> f;
  for (double x : r) f.push_back(2.0 * x * x - x + 3.0);
  const auto d1 = differentiate(r, f, 1);
  const auto d2 = differentiate(r, f, 2);
  for (std::size_t i = 0; i < r.size(); ++i) {
    CHECK(d1[i] == doctest::Approx(4.0 * r[i] - 1.0).epsilon(1e-10));
    CHECK(d2[i] == doctest::Approx(4.0).epsilon(1e-9));
  }
}

TEST_CASE("differentiate is second order on smooth data") {
  auto max_error = [](int n) {
    std::vector<double> r;
    std::vector<double> f;
    for (int i = 0; i < n; ++i) {
      r.push_back(2.0 * i / (n - 1));
      f.push_back(std::sin(r.back()));
    }
    const auto d = differentiate(r, f, 1);
    double e = 0.0;
    for (int i = 0; i < n; ++i) e = std::max(e, std::abs(d[i] - std::cos(r[i])));
    return e;
  };
  const double order = std::log2(max_error(65) / max_error(129));
  CHECK(order > 1.9);
}

TEST_CASE("differentiate rejects short inputs") {
  const std::vector<double> r{0.0, 1.0};
  CHECK_THROWS_AS(differentiate(r, r, 1), std::invalid_argument);
}

TEST_CASE("cubic interpolation and first-node extrapolation") {
  std::vector<double> r{0.0, 0.5, 1.0, 1.5, 2.0};
  std::vector<double> f;
  for (double x : r) f.push_back(x * x * x - x);
  CHECK(interpolate_cubic(r, f, 0.8) == doctest::Approx(0.512 - 0.8).epsilon(1e-13));
  std::vector<double> q;
  for (double x : r) q.push_back(3.0 - 2.0 * x + x * x);
  CHECK(extrapolate_to_first(r, q) == doctest::Approx(3.0).epsilon(1e-13));
  CHECK(locate_cell(r, 1.2) == 2);
  CHECK(locate_cell(r, -1.0) == 0);
  CHECK(locate_cell(r, 9.0) == 3);
}

TEST_CASE("five-point Gauss-Legendre is exact through degree nine") {
  const double v = integrate_cell([](double x) { return std::pow(x, 9) + x * x; }, 0.0, 2.0);
  CHECK(v == doctest::Approx(102.4 + 8.0 / 3.0).epsilon(1e-13));
  const std::vector<double> r{0.0, 1.0, 3.0};
  const auto c = cumulative_integral(r, [](double x) { return x; });
  CHECK(c[0] == 0.0);
  CHECK(c[1] == doctest::Approx(0.5));
  CHECK(c[2] == doctest::Approx(4.5));
}

}
