#include <cmath>
#include <vector>

#include "doctest.h"
#include "wspdiff/calculus.hpp"
#include "wspdiff/common.hpp"
#include "wspdiff/grid.hpp"
#include "wspdiff/norms.hpp"

using namespace wspdiff;

namespace {

constexpr double kPi = 3.14159265358979323846;

double bump(double u) {
  if (u <= 0.0 || u >= 1.0) return 0.0;
  return std::exp(4.0 - 1.0 / (u * (1.0 - u)));
}

/// Plain pair-sum Gagliardo^p oracle on a circle grid: trapezoid in both
/// variables, periodic distance, no band or tail treatment.  Second-order
/// accurate for sigma p well below 1, and completely independent of the
/// library's banded scheme.
double brute_gagliardo_p(const SampledFunction& f, double sigma, double p) {
  const std::size_t n = f.grid.size();
  const double h = f.grid.spacing();
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double dx = std::min(h * (j - i), 1.0 - h * (j - i));
      if (dx <= 0.0) continue;
      acc += 2.0 * std::pow(std::abs(f.values[i] - f.values[j]), p) *
             std::pow(dx, -1.0 - sigma * p) * h * h;
    }
  }
  return acc;
}

}  // namespace

TEST_CASE("SobolevIndex validates and decomposes s = k + sigma") {
  const SobolevIndex idx = SobolevIndex::create(1.5, 2.0);
  CHECK(idx.k == 1);
  CHECK(idx.sigma == doctest::Approx(0.5));
  CHECK_THROWS_AS(SobolevIndex::create(-0.1, 2.0), invalid_argument_error);
  CHECK_THROWS_AS(SobolevIndex::create(1.0, 0.5), invalid_argument_error);
}

TEST_CASE("integer norms of a pure mode match closed forms") {
  const Grid1D c = Grid1D::circle(256);
  const SampledFunction f =
      SampledFunction::sample(c, [](double x) { return std::sin(2.0 * kPi * x); });
  CHECK(lp_norm(f, 2.0) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-13));

  const NormReport r = wsp_norm(f, SobolevIndex::create(1.0, 2.0));
  CHECK(r.lp_part == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-13));
  REQUIRE(r.parts.size() == 1);
  CHECK(r.parts[0].second == doctest::Approx(2.0 * kPi / std::sqrt(2.0)).epsilon(1e-12));
  CHECK(r.total == doctest::Approx(r.lp_part + r.parts[0].second).epsilon(1e-14));

  const NormReport r2 = wsp_norm(f, SobolevIndex::create(2.0, 2.0));
  REQUIRE(r2.parts.size() == 2);
  CHECK(r2.parts[1].second ==
        doctest::Approx(4.0 * kPi * kPi / std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("gagliardo seminorm agrees with an independent dense pair sum") {
  const Grid1D c = Grid1D::circle(2048);
  const SampledFunction f =
      SampledFunction::sample(c, [](double x) { return std::sin(2.0 * kPi * x); });
  const double sigma = 0.15, p = 2.0;
  const double lib = gagliardo_seminorm_1d(f, sigma, p, false).value;
  const double brute = std::pow(brute_gagliardo_p(f, sigma, p), 1.0 / p);
  CHECK(lib == doctest::Approx(brute).epsilon(2e-3));
}

TEST_CASE("line-domain scaling identities hold to rounding error") {
  const Grid1D g = Grid1D::line(1025, 1.0);
  const SampledFunction f =
      SampledFunction::sample(g, [](double x) { return bump((x - 0.2) / 0.6); });
  const double lam = 3.0;
  const SampledFunction fl = scaling_op(f, lam);
  for (double s : {0.5, 1.0, 1.7}) {
    for (double p : {1.5, 2.0}) {
      const SobolevIndex idx = SobolevIndex::create(s, p);
      const double ratio = top_seminorm(fl, idx) / top_seminorm(f, idx);
      CHECK(ratio == doctest::Approx(std::pow(lam, (s - 1.0) - 1.0 / p)).epsilon(1e-12));
      const double lpr = lp_norm(fl, p) / lp_norm(f, p);
      CHECK(lpr == doctest::Approx(std::pow(lam, -1.0 - 1.0 / p)).epsilon(1e-12));
    }
  }
  CHECK_THROWS_AS(scaling_op(SampledFunction::sample(Grid1D::circle(64), [](double x) { return x; }),
                             2.0),
                  invalid_argument_error);
}

TEST_CASE("norm is subadditive and p = 1 is flagged") {
  const Grid1D c = Grid1D::circle(512);
  const SampledFunction f =
      SampledFunction::sample(c, [](double x) { return std::sin(2.0 * kPi * x); });
  const SampledFunction g = SampledFunction::sample(
      c, [](double x) { return 0.4 * std::cos(2.0 * kPi * 2.0 * x); });
  SampledFunction sum = f;
  for (std::size_t i = 0; i < c.size(); ++i) sum.values[i] += g.values[i];
  const SobolevIndex idx = SobolevIndex::create(0.7, 2.0);
  CHECK(wsp_norm(sum, idx).total <=
        wsp_norm(f, idx).total + wsp_norm(g, idx).total + 1e-10);

  const NormReport r1 = wsp_norm(f, SobolevIndex::create(0.5, 1.0));
  CHECK(r1.quad.p_equals_1);
}

TEST_CASE("critical embedding ratio is scale-normalized and positive") {
  const Grid1D c = Grid1D::circle(1024);
  const SampledFunction f =
      SampledFunction::sample(c, [](double x) { return bump((x - 0.3) / 0.4); });
  const double r1 = critical_embedding_ratio(f, 2.0, 4.0);
  CHECK(r1 > 0.0);
  // Doubling f doubles numerator and denominator: ratio invariant.
  SampledFunction f2 = f;
  for (double& v : f2.values) v *= 2.0;
  CHECK(critical_embedding_ratio(f2, 2.0, 4.0) == doctest::Approx(r1).epsilon(1e-12));
}
