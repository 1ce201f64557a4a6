#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"
#include "wspdiff/calculus.hpp"
#include "wspdiff/common.hpp"
#include "wspdiff/grid.hpp"
#include "wspdiff/interp.hpp"

using namespace wspdiff;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("grid factories lay out nodes as documented") {
  const Grid1D c = Grid1D::circle(16);
  CHECK(c.size() == 16);
  CHECK(c.node(0) == doctest::Approx(0.0));
  CHECK(c.node(15) == doctest::Approx(15.0 / 16.0));
  CHECK(c.spacing() == doctest::Approx(1.0 / 16.0));

  const Grid1D i = Grid1D::interval(9, 2.0);
  CHECK(i.node(0) == doctest::Approx(0.0));
  CHECK(i.node(8) == doctest::Approx(2.0));
  CHECK(i.spacing() == doctest::Approx(0.25));

  CHECK_THROWS_AS(Grid1D::circle(4), invalid_argument_error);
  CHECK_THROWS_AS(Grid1D::interval(8, -1.0), invalid_argument_error);
}

TEST_CASE("integrate is exact on trigonometric and linear data") {
  const Grid1D c = Grid1D::circle(64);
  const SampledFunction f = SampledFunction::sample(
      c, [](double x) { return 1.0 + 0.3 * std::cos(2.0 * kPi * 3.0 * x); });
  CHECK(integrate(f) == doctest::Approx(1.0).epsilon(1e-14));

  const Grid1D iv = Grid1D::interval(33, 1.0);
  const SampledFunction g = SampledFunction::sample(iv, [](double x) { return 2.0 * x; });
  CHECK(integrate(g) == doctest::Approx(1.0).epsilon(1e-14));

  const SampledFunction h = SampledFunction::sample(iv, [](double) { return -1.5; });
  CHECK(lp_integral(h, 3.0) == doctest::Approx(std::pow(1.5, 3.0)).epsilon(1e-14));
}

TEST_CASE("spectral circle derivative and FD interval derivative") {
  const Grid1D c = Grid1D::circle(64);
  const SampledFunction f =
      SampledFunction::sample(c, [](double x) { return std::sin(2.0 * kPi * x); });
  const SampledFunction df = derivative(f);
  for (std::size_t i = 0; i < c.size(); ++i) {
    CHECK(df.values[i] ==
          doctest::Approx(2.0 * kPi * std::cos(2.0 * kPi * c.node(i))).epsilon(1e-10));
  }

  // 4th-order finite differences are exact for quartics.
  const Grid1D iv = Grid1D::interval(257, 1.0);
  const SampledFunction g = SampledFunction::sample(iv, [](double x) { return std::pow(x, 4); });
  const SampledFunction dg = derivative(g);
  for (std::size_t i = 0; i < iv.size(); i += 16) {
    CHECK(dg.values[i] == doctest::Approx(4.0 * std::pow(iv.node(i), 3)).epsilon(1e-8));
  }

  const SampledFunction d2f = derivative_k(f, 2);
  for (std::size_t i = 0; i < c.size(); i += 8) {
    CHECK(d2f.values[i] ==
          doctest::Approx(-4.0 * kPi * kPi * std::sin(2.0 * kPi * c.node(i))).epsilon(1e-9));
  }
}

TEST_CASE("circle antiderivative is spectrally accurate and pinned at 0") {
  const Grid1D c = Grid1D::circle(128);
  const SampledFunction f =
      SampledFunction::sample(c, [](double x) { return 1.0 + std::cos(2.0 * kPi * x); });
  const std::vector<double> F = circle_antiderivative(f);
  CHECK(F[0] == doctest::Approx(0.0).epsilon(1e-14));
  for (std::size_t i = 0; i < c.size(); i += 8) {
    const double x = c.node(i);
    CHECK(F[i] == doctest::Approx(x + std::sin(2.0 * kPi * x) / (2.0 * kPi)).epsilon(1e-12));
  }
}

TEST_CASE("mollify reproduces linear data and preserves circle mass") {
  const Grid1D iv = Grid1D::interval(129, 1.0);
  const SampledFunction lin = SampledFunction::sample(iv, [](double x) { return 2.0 + 3.0 * x; });
  const SampledFunction ml = mollify(lin, 0.05);
  for (std::size_t i = 0; i < iv.size(); ++i) {
    CHECK(ml.values[i] == doctest::Approx(lin.values[i]).epsilon(1e-12));
  }

  const Grid1D c = Grid1D::circle(128);
  const SampledFunction f = SampledFunction::sample(
      c, [](double x) { return x < 0.5 ? 1.0 : 0.0; });
  const SampledFunction mf = mollify(f, 0.03);
  CHECK(integrate(mf) == doctest::Approx(integrate(f)).epsilon(1e-12));
  double lo = 1e300, hi = -1e300;
  for (double v : mf.values) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  CHECK(lo >= -1e-12);
  CHECK(hi <= 1.0 + 1e-12);
}

TEST_CASE("fft round trip, power-of-two and general length") {
  for (std::size_t n : {16u, 12u}) {
    std::vector<std::complex<double>> a(n), b;
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = {std::sin(0.7 * i) + 0.2, std::cos(1.3 * i)};
    }
    b = a;
    fft(b, false);
    fft(b, true);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(std::abs(b[i] - a[i]) <= 1e-12);
    }
  }
}

TEST_CASE("gauss panels and graded quadrature handle endpoint singularities") {
  const double i5 = integrate_gauss([](double x) { return std::pow(x, 5); }, 0.0, 1.0);
  CHECK(i5 == doctest::Approx(1.0 / 6.0).epsilon(1e-14));

  const double s = integrate_graded([](double x) { return std::pow(x, -0.4); }, 0.0, 1.0, true,
                                    false);
  CHECK(s == doctest::Approx(1.0 / 0.6).epsilon(1e-9));

  // Beta(0.7, 0.7) with singularities at both ends.
  const double beta = integrate_graded(
      [](double x) { return std::pow(x, -0.3) * std::pow(1.0 - x, -0.3); }, 0.0, 1.0, true, true);
  const double exact = std::exp(2.0 * std::lgamma(0.7) - std::lgamma(1.4));
  CHECK(beta == doctest::Approx(exact).epsilon(1e-8));
}

TEST_CASE("monotone cubic interpolation stays monotone and inverts") {
  const std::vector<double> x = {0.0, 0.2, 0.5, 0.6, 1.0};
  const std::vector<double> y = {0.0, 0.05, 0.6, 0.8, 1.0};
  const MonotoneCubic sp(x, y);
  for (std::size_t i = 0; i < x.size(); ++i) {
    CHECK(sp(x[i]) == doctest::Approx(y[i]).epsilon(1e-14));
  }
  double prev = -1e300;
  for (int i = 0; i <= 400; ++i) {
    const double v = sp(i / 400.0);
    CHECK(v >= prev - 1e-13);
    prev = v;
  }
  for (double yq : {0.1, 0.37, 0.92}) {
    CHECK(sp(sp.inverse(yq)) == doctest::Approx(yq).epsilon(1e-10));
  }
}

TEST_CASE("cubic hermite interpolates nodes and reproduces linear data") {
  const std::vector<double> x = {0.0, 0.25, 0.5, 0.75, 1.0};
  const std::vector<double> y = {1.0, 0.2, -0.4, 0.9, 0.3};
  const CubicHermite sp(x, y);
  for (std::size_t i = 0; i < x.size(); ++i) {
    CHECK(sp(x[i]) == doctest::Approx(y[i]).epsilon(1e-14));
  }
  std::vector<double> ylin(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) ylin[i] = 3.0 * x[i] - 1.0;
  const CubicHermite lin(x, ylin);
  for (double xq : {0.1, 0.33, 0.61, 0.99}) {
    CHECK(lin(xq) == doctest::Approx(3.0 * xq - 1.0).epsilon(1e-13));
  }
}
