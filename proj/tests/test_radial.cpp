#include <cmath>
#include <vector>

#include "doctest.h"
#include "wspdiff/common.hpp"
#include "wspdiff/constructions.hpp"
#include "wspdiff/norms.hpp"
#include "wspdiff/radial.hpp"

using namespace wspdiff;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("radial dimensions validate and expose sphere areas") {
  CHECK(RadialDim::create(2).sphere_area() == doctest::Approx(2.0 * kPi));
  CHECK(RadialDim::create(3).sphere_area() == doctest::Approx(4.0 * kPi));
  CHECK_THROWS_AS(RadialDim::create(4), invalid_argument_error);
}

TEST_CASE("scalar lift norms match hand-computed polynomial integrals") {
  // f = r(1 - r) vanishes at both ends as radial profiles must.
  const RadialProfile prof = RadialProfile::sample(4097, [](double r) { return r * (1.0 - r); });

  // Disc: ||F||_2^2 = 2 pi int r^2(1-r)^2 r dr = pi/30,
  //       ||DF||_2^2 = 2 pi int (1-2r)^2 r dr = pi/3.
  const RadialFunction F2 = radial_lift_function(prof, RadialDim::create(2));
  const NormReport l2 = radial_wsp_norm(F2, SobolevIndex::create(0.0, 2.0));
  CHECK(l2.total == doctest::Approx(std::sqrt(kPi / 30.0)).epsilon(1e-5));

  const NormReport w12 = radial_wsp_norm(F2, SobolevIndex::create(1.0, 2.0));
  REQUIRE(w12.parts.size() == 1);
  CHECK(w12.parts[0].second == doctest::Approx(std::sqrt(kPi / 3.0)).epsilon(1e-4));
  CHECK(w12.total == doctest::Approx(w12.lp_part + w12.parts[0].second).epsilon(1e-12));

  // Ball: ||F||_2^2 = 4 pi int r^2(1-r)^2 r^2 dr = 4 pi/105,
  //       ||DF||_2^2 = 4 pi int (1-2r)^2 r^2 dr = 8 pi/15.
  const RadialFunction F3 = radial_lift_function(prof, RadialDim::create(3));
  const NormReport l23 = radial_wsp_norm(F3, SobolevIndex::create(0.0, 2.0));
  CHECK(l23.total == doctest::Approx(std::sqrt(4.0 * kPi / 105.0)).epsilon(1e-5));
  const NormReport w123 = radial_wsp_norm(F3, SobolevIndex::create(1.0, 2.0));
  CHECK(w123.parts[0].second == doctest::Approx(std::sqrt(8.0 * kPi / 15.0)).epsilon(1e-4));
}

TEST_CASE("field lift gradient magnitude includes the angular part") {
  // U(x) = f(r) x/r with f = r(1-r):
  // |DU|^2 = f'^2 + (f/r)^2, integral = 2 pi (1/6 + 1/12) = pi/2.
  const RadialProfile prof = RadialProfile::sample(4097, [](double r) { return r * (1.0 - r); });
  const RadialField U = radial_lift_field(prof, RadialDim::create(2));
  const NormReport w = radial_wsp_norm(U, SobolevIndex::create(1.0, 2.0));
  CHECK(w.lp_part == doctest::Approx(std::sqrt(2.0 * kPi / 60.0)).epsilon(1e-4));
  CHECK(w.parts[0].second == doctest::Approx(std::sqrt(kPi / 2.0)).epsilon(1e-4));
}

TEST_CASE("ball Monte Carlo is deterministic per seed and consistent across seeds") {
  const RadialProfile prof = RadialProfile::sample(1025, [](double r) {
    const double u = (r - 0.2) / 0.5;
    return u <= 0.0 || u >= 1.0 ? 0.0 : std::sin(kPi * u) * std::sin(kPi * u);
  });
  const RadialFunction F = radial_lift_function(prof, RadialDim::create(3));
  const SobolevIndex idx = SobolevIndex::create(1.5, 2.0);

  RadialQuadOptions o1;
  o1.mc_seed = 0x5EED;
  const NormReport a = radial_wsp_norm(F, idx, o1);
  const NormReport b = radial_wsp_norm(F, idx, o1);
  CHECK(a.total == b.total);  // bitwise reproducible
  CHECK(a.quad.mc_seed.has_value());
  CHECK(*a.quad.mc_seed == 0x5EED);

  RadialQuadOptions o2;
  o2.mc_seed = 0xC0FFEE;
  const NormReport c = radial_wsp_norm(F, idx, o2);
  const double g1 = a.parts.back().second, g2 = c.parts.back().second;
  const double se = std::sqrt(std::pow(a.quad.est_rel_err * g1, 2) +
                              std::pow(c.quad.est_rel_err * g2, 2));
  CHECK(std::abs(a.total - c.total) <= 3.0 * se);
}

TEST_CASE("ball displacement profile construction validates resolution") {
  const RadialProfile prof = make_u_alpha_eps_ball(0.15, 0.05, 1025);
  CHECK(prof.values.front() == doctest::Approx(0.0));
  CHECK(prof.values.back() == doctest::Approx(0.0));
  double vmax = 0.0;
  for (double v : prof.values) vmax = std::max(vmax, v);
  CHECK(vmax > 0.5);  // reaches the power-law mid-section
  CHECK_THROWS_AS(make_u_alpha_eps_ball(0.15, 0.001, 129), invalid_argument_error);
}

TEST_CASE("radial norms reject smoothness beyond the implemented range") {
  const RadialProfile prof = RadialProfile::sample(257, [](double r) { return r * (1.0 - r); });
  const RadialFunction F = radial_lift_function(prof, RadialDim::create(2));
  CHECK_THROWS_AS(radial_wsp_norm(F, SobolevIndex::create(2.5, 2.0)), invalid_argument_error);
}
