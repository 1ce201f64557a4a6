#include <cmath>
#include <variant>
#include <vector>

#include "doctest.h"
#include "wspdiff/calculus.hpp"
#include "wspdiff/common.hpp"
#include "wspdiff/diffeo_ops.hpp"
#include "wspdiff/grid.hpp"
#include "wspdiff/norms.hpp"
#include "wspdiff/paths.hpp"

using namespace wspdiff;

namespace {

constexpr double kPi = 3.14159265358979323846;

CircleDiffeo wobble(const Grid1D& grid, double a, double phase) {
  std::vector<double> lift(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = grid.node(i);
    lift[i] = x + a * std::sin(2.0 * kPi * x + phase);
  }
  return CircleDiffeo::create(grid, std::move(lift));
}

double sup_lift_diff(const CircleDiffeo& a, const CircleDiffeo& b) {
  double sup = 0.0;
  for (std::size_t i = 0; i < a.grid().size(); ++i) {
    sup = std::max(sup, std::abs(a.lift()[i] - b.lift()[i]));
  }
  return sup;
}

}  // namespace

TEST_CASE("composition and inversion act as group operations") {
  const Grid1D g = Grid1D::circle(2048);
  const CircleDiffeo phi = wobble(g, 0.08, 0.3);
  const CircleDiffeo id = CircleDiffeo::identity(g);

  CHECK(sup_lift_diff(compose(phi, id), phi) <= 1e-13);
  CHECK(sup_lift_diff(compose(id, phi), phi) <= 1e-13);
  CHECK(sup_lift_diff(compose(phi, invert(phi)), id) <= 1e-7);
  CHECK(sup_lift_diff(compose(invert(phi), phi), id) <= 1e-7);

  const CircleDiffeo t1 = translation(g, 0.3);
  const CircleDiffeo t2 = translation(g, 0.45);
  CHECK(sup_lift_diff(compose(t1, t2), translation(g, 0.75)) <= 1e-12);

  // Interval variant.
  const Grid1D iv = Grid1D::interval(1025, 1.0);
  std::vector<double> v(iv.size());
  for (std::size_t i = 0; i < iv.size(); ++i) {
    const double x = iv.node(i);
    v[i] = x + 0.06 * std::sin(kPi * x) * std::sin(kPi * x);
  }
  v.front() = 0.0;
  v.back() = 1.0;
  const IntervalDiffeo psi = IntervalDiffeo::create(iv, std::move(v));
  const IntervalDiffeo rt = compose(psi, invert(psi));
  for (std::size_t i = 0; i < iv.size(); i += 64) {
    CHECK(rt.values()[i] == doctest::Approx(iv.node(i)).epsilon(1e-7));
  }
}

TEST_CASE("closed-form arc distance matches a direct quadrature") {
  const Grid1D g = Grid1D::circle(1024);
  const CircleDiffeo id = CircleDiffeo::identity(g);
  const CircleDiffeo phi = wobble(g, 0.05, 0.0);
  CHECK(h1dot_distance_closed_form(id, id) == doctest::Approx(0.0).epsilon(1e-12));

  const std::vector<double> dphi = circle_diffeo_derivative(phi);
  std::vector<double> root(dphi.size());
  for (std::size_t i = 0; i < dphi.size(); ++i) root[i] = std::sqrt(dphi[i]);
  const double inner = integrate(SampledFunction::create(g, std::move(root)));
  CHECK(h1dot_distance_closed_form(id, phi) == doctest::Approx(std::acos(inner)).epsilon(1e-10));
  // Symmetry.
  CHECK(h1dot_distance_closed_form(phi, id) ==
        doctest::Approx(h1dot_distance_closed_form(id, phi)).epsilon(1e-12));
}

TEST_CASE("affine path endpoints, length positivity, and translation cost") {
  const Grid1D g = Grid1D::circle(1024);
  const TimeGrid times = TimeGrid::create(64);
  CHECK(times.t(0) == doctest::Approx(0.0));
  CHECK(times.t(64) == doctest::Approx(1.0));

  const CircleDiffeo a = wobble(g, 0.05, 0.1);
  const CircleDiffeo b = wobble(g, 0.07, 1.7);
  const DiffPath path = affine_path(AnyDiffeo(a), AnyDiffeo(b), times);
  CHECK(sup_lift_diff(std::get<CircleDiffeo>(path.maps.front()), a) <= 1e-13);
  CHECK(sup_lift_diff(std::get<CircleDiffeo>(path.maps.back()), b) <= 1e-13);
  CHECK(path_length(path, SobolevIndex::create(1.0, 2.0)) > 0.0);

  // Rigid rotation by 1/2 at unit speed costs exactly its L^p norm: 1/2.
  const DiffPath rot = affine_path(AnyDiffeo(translation(g, 0.5)), times);
  CHECK(path_length(rot, SobolevIndex::create(1.2, 2.0)) ==
        doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("reverse and concatenate preserve and add lengths") {
  const Grid1D g = Grid1D::circle(512);
  const TimeGrid times = TimeGrid::create(32);
  const CircleDiffeo a = wobble(g, 0.06, 0.4);
  const CircleDiffeo b = wobble(g, 0.04, 2.0);
  const SobolevIndex idx = SobolevIndex::create(1.0, 2.0);

  const DiffPath p1 = affine_path(AnyDiffeo(a), times);
  const DiffPath p2 = affine_path(AnyDiffeo(a), AnyDiffeo(b), times);
  const double l1 = path_length(p1, idx);
  const double l2 = path_length(p2, idx);
  CHECK(path_length(reverse(p1), idx) == doctest::Approx(l1).epsilon(1e-10));
  const DiffPath joined = concatenate(p1, p2);
  CHECK(path_length(joined, idx) == doctest::Approx(l1 + l2).epsilon(2e-2));
}

TEST_CASE("flows of constant and stationary fields behave as ODE solutions") {
  const Grid1D g = Grid1D::circle(512);
  const TimeGrid times = TimeGrid::create(128);

  const SampledFunction c = SampledFunction::sample(g, [](double) { return 0.37; });
  const DiffPath rot = flow(c, times);
  CHECK(sup_lift_diff(std::get<CircleDiffeo>(rot.maps.back()), translation(g, 0.37)) <= 1e-10);

  // Autonomous field: the extracted velocity field at mid-path is the field.
  const SampledFunction u = SampledFunction::sample(
      g, [](double x) { return 0.2 + 0.1 * std::sin(2.0 * kPi * x); });
  const DiffPath fp = flow(u, times);
  const SampledFunction mid = extract_vector_field(fp, 64);
  double sup = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    sup = std::max(sup, std::abs(mid.values[i] - u.values[i]));
  }
  CHECK(sup <= 1e-4);
}

TEST_CASE("path shortening never lengthens and pins endpoints") {
  const Grid1D g = Grid1D::circle(256);
  const TimeGrid times = TimeGrid::create(16);
  const CircleDiffeo b = wobble(g, 0.09, 0.9);
  const DiffPath path = affine_path(AnyDiffeo(b), times);
  const SobolevIndex idx = SobolevIndex::create(1.0, 2.0);
  ShortenOptions opts;
  opts.iterations = 10;
  const DiffPath shorter = path_shorten(path, idx, opts);
  CHECK(path_length(shorter, idx) <= path_length(path, idx) + 1e-12);
  CHECK(sup_lift_diff(std::get<CircleDiffeo>(shorter.maps.front()),
                      std::get<CircleDiffeo>(path.maps.front())) <= 1e-13);
  CHECK(sup_lift_diff(std::get<CircleDiffeo>(shorter.maps.back()),
                      std::get<CircleDiffeo>(path.maps.back())) <= 1e-13);
}

TEST_CASE("square-root-slope geodesics join their endpoints") {
  const Grid1D g = Grid1D::circle(1024);
  const TimeGrid times = TimeGrid::create(32);
  const CircleDiffeo a = wobble(g, 0.05, 0.2);
  const CircleDiffeo b = wobble(g, 0.06, 1.1);
  const DiffPath path = lenells_sphere_path(a, b, 2.0, times);
  // Endpoints agree with a and b up to a rotation (the chart forgets phase).
  for (const auto& [target, idx] :
       std::vector<std::pair<const CircleDiffeo*, std::size_t>>{{&a, 0}, {&b, 32}}) {
    const auto& got = std::get<CircleDiffeo>(path.maps[idx]);
    double sup = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double da = target->lift()[i] - target->lift()[0];
      const double dg = got.lift()[i] - got.lift()[0];
      sup = std::max(sup, std::abs(da - dg));
    }
    CHECK(sup <= 1e-8);
  }
}
