#include <cmath>
#include <vector>

#include "doctest.h"
#include "wspdiff/calculus.hpp"
#include "wspdiff/common.hpp"
#include "wspdiff/constructions.hpp"
#include "wspdiff/diffeo_ops.hpp"
#include "wspdiff/grid.hpp"
#include "wspdiff/norms.hpp"

using namespace wspdiff;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("two-slope map hits its kink and endpoint values exactly") {
  const PsiParams params = PsiParams::create(2.0, 0.5);
  CHECK(params.breakpoint() == doctest::Approx(0.25));
  const Grid1D g = Grid1D::interval(1025, 1.0);
  const IntervalDiffeo psi = make_psi(params, g, 0.0);
  CHECK(psi.values().front() == doctest::Approx(0.0));
  CHECK(psi.values().back() == doctest::Approx(1.0));
  CHECK(psi.values()[256] == doctest::Approx(0.5).epsilon(1e-14));  // node at 0.25
  // Slope 2 below the kink, (1 - (1-delta)) / (1 - breakpoint) = 2/3 above.
  CHECK(psi.values()[128] == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(psi.values()[512] == doctest::Approx(0.5 + (2.0 / 3.0) * 0.25).epsilon(1e-13));

  // Slope 1 is the identity.
  const IntervalDiffeo id = make_psi(PsiParams::create(1.0, 0.3), g, 0.0);
  for (std::size_t i = 0; i < g.size(); i += 100) {
    CHECK(id.values()[i] == doctest::Approx(g.node(i)).epsilon(1e-14));
  }
}

TEST_CASE("homotopy field slopes integrate back to the target map slope") {
  const PsiParams params = PsiParams::create(5.0, 0.2);
  double acc = 0.0;
  const int m = 4000;
  for (int j = 0; j <= m; ++j) {
    const double t = static_cast<double>(j) / m;
    const HomotopyField f = psi_homotopy_field(t, params);
    acc += (j == 0 || j == m ? 0.5 : 1.0) * f.slope_up;
  }
  acc /= m;
  CHECK(std::exp(acc) == doctest::Approx(params.slope).epsilon(1e-6));

  const HomotopyField f = psi_homotopy_field(0.3, params);
  CHECK(f.value(0.0) == doctest::Approx(0.0));
  CHECK(f.value(1.0) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(f.value(f.breakpoint) ==
        doctest::Approx(f.slope_up * f.breakpoint).epsilon(1e-13));
  CHECK(f.deriv(0.5 * f.breakpoint) == doctest::Approx(f.slope_up));
  CHECK(f.deriv(0.5 + 0.5 * f.breakpoint) == doctest::Approx(-f.slope_down));
}

TEST_CASE("closed-form homotopy regions bound and pin the sampled Gagliardo sum") {
  const PsiParams params = PsiParams::create(4.0, 0.1);
  const double sigma = 0.25, p = 2.0, t = 0.3;
  const HomotopyField field = psi_homotopy_field(t, params);

  const RegionIntegrals ri = psi_homotopy_region_integrals(t, params, sigma, p);
  const double bound_p = 2.0 * ri.sum();

  // Numeric Gagliardo of the piecewise-constant derivative, sampled densely.
  const Grid1D g = Grid1D::interval(8193, 1.0);
  const SampledFunction du =
      SampledFunction::sample(g, [&](double y) { return field.deriv(y); });
  const double numeric = std::pow(gagliardo_seminorm_1d(du, sigma, p, false).value, p);

  // The summed regions give the seminorm of the zero-extended field on the
  // whole line, which dominates the interval-only double integral; the cross
  // region alone equals the interval value exactly for a two-slope field.
  CHECK(bound_p >= numeric);
  CHECK(2.0 * ri.i3 == doctest::Approx(numeric).epsilon(0.03));

  // The three-part norm assembles from the same closed forms.
  const HomotopyNormParts parts = psi_homotopy_norm(t, params, sigma, p);
  CHECK(parts.gagliardo == doctest::Approx(std::pow(bound_p, 1.0 / p)).epsilon(1e-12));
  CHECK(parts.total() ==
        doctest::Approx(parts.lp + parts.w1p + parts.gagliardo).epsilon(1e-14));
}

TEST_CASE("envelope bounds the homotopy norm and integrates in closed form") {
  const double sigma = 0.25, p = 2.0;
  // The envelope has integrable power singularities at both ends, so the
  // numeric cross-check needs endpoint-graded panels.
  const double num = integrate_graded(
      [&](double t) { return psi_homotopy_envelope(t, sigma, p); }, 0.0, 1.0, true, true, 64);
  CHECK(num == doctest::Approx(psi_homotopy_envelope_integral(sigma, p)).epsilon(1e-4));

  for (double lam : {4.0, 64.0}) {
    const PsiParams params = PsiParams::create(lam, 0.1);
    for (int j = 1; j < 20; ++j) {
      const double t = j / 20.0;
      const double ratio = psi_homotopy_norm(t, params, sigma, p).total() /
                           psi_homotopy_envelope(t, sigma, p);
      CHECK(ratio < 10.0);
    }
  }
}

TEST_CASE("power-law displacement field is pinned at the seam") {
  const Grid1D g = Grid1D::circle(2048);
  const SampledFunction u = make_u_alpha_eps(0.15, 0.05, g);
  CHECK(u.values.front() == doctest::Approx(0.0));
  double lo = 1e300;
  for (double v : u.values) lo = std::min(lo, v);
  CHECK(lo >= -1e-6);
  // Power-law mid-section survives mollification.
  const std::size_t i_mid = 2048 * 3 / 10;  // x = 0.3
  CHECK(u.values[i_mid] == doctest::Approx(std::pow(0.3, 0.85)).epsilon(1e-3));
}

TEST_CASE("displacement pair satisfies the conjugation identity") {
  const Grid1D g = Grid1D::circle(2048);
  const std::size_t n = g.size();
  const DisplacementPair dp = displacement_pair(0.15, 0.05, g, 128);
  CHECK(dp.t0 == doctest::Approx(displacement_flow_time(0.15)).epsilon(1e-14));
  CHECK(dp.phi.fixes_zero(1e-9));

  // psi o phi^{-1} = phi^{-1} o T_{1/2}.  The right side needs no
  // interpolation (x_i + 1/2 is a node), so each node's mismatch must be
  // explained by the sampled psi's variation over the cell the evaluation
  // point lands in: psi climbs by ~1 inside a couple of cells (the
  // compression window), and monotone interpolation cannot do better there.
  const CircleDiffeo phi_inv = invert(dp.phi);
  const CircleDiffeo lhs = compose(dp.psi, phi_inv);
  double worst_excess = 0.0;
  double sup_resolved = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = (i + n / 2) % n;
    const double rhs = phi_inv.lift()[j] + (i + n / 2 >= n ? 1.0 : 0.0);
    const double mismatch = std::abs(lhs.lift()[i] - rhs);

    const double y = phi_inv.lift()[i];
    const double fy = y - std::floor(y);
    const std::size_t cell = std::min(n - 1, static_cast<std::size_t>(fy / g.spacing()));
    const double hi = cell + 1 < n ? dp.psi.lift()[cell + 1] : dp.psi.lift()[0] + 1.0;
    const double cell_var = hi - dp.psi.lift()[cell];

    worst_excess = std::max(worst_excess, mismatch - cell_var);
    if (cell_var < 1e-3) sup_resolved = std::max(sup_resolved, mismatch);
  }
  CHECK(worst_excess <= 5e-4);   // every mismatch is resolution-explained
  CHECK(sup_resolved <= 1e-3);   // and the identity is tight where resolved
}

TEST_CASE("spike pair sits on the sphere with mass concentrated on ~ n^{-q}") {
  const double q = 2.0, nf = 3.0, eps = 0.01;
  const Grid1D g = Grid1D::circle(8192);
  const SpikePair pair = spike_pair(q, nf, eps, g);
  CHECK(pair.spike_width == doctest::Approx(std::pow(nf, -q)).epsilon(1e-14));
  CHECK(lp_norm(pair.f, q) == doctest::Approx(q).epsilon(1e-12));
  CHECK(lp_norm(pair.g, q) == doctest::Approx(q).epsilon(1e-6));

  // Pulled-back diffeomorphism concentrates its derivative on the spike.
  const CircleDiffeo rho = lenells_inverse(pair.g, q);
  const std::vector<double> drho = circle_diffeo_derivative(rho);
  double measure = 0.0;
  for (double d : drho) {
    if (d > 1.0) measure += g.spacing();
  }
  CHECK(measure == doctest::Approx(pair.spike_width).epsilon(0.10));

  // Sampled chord distance matches the plateau closed form when resolved.
  double acc = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    acc += std::pow(std::abs(pair.f.values[i] - pair.g.values[i]), q) * g.spacing();
  }
  CHECK(std::pow(acc, 1.0 / q) ==
        doctest::Approx(spike_lq_distance(q, nf, eps)).epsilon(0.01));
}

TEST_CASE("spike closed forms match frozen reference values") {
  CHECK(spike_lq_distance(1.0, 10.0, 0.01) == doctest::Approx(1.7821605).epsilon(1e-6));
  CHECK(spike_chord_limit(4.0) == doctest::Approx(4.0 * std::pow(2.0, 0.25)).epsilon(1e-14));
  // Monotone approach to the limit.
  const double d1 = spike_lq_distance(2.0, 10.0, 0.01);
  const double d2 = spike_lq_distance(2.0, 100.0, 0.01);
  CHECK(std::abs(d2 - spike_chord_limit(2.0)) < std::abs(d1 - spike_chord_limit(2.0)));
}

TEST_CASE("lenells chart round trip and sphere radius") {
  const Grid1D g = Grid1D::circle(1024);
  std::vector<double> lift(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double x = g.node(i);
    lift[i] = x + 0.05 * std::sin(2.0 * kPi * x) + 0.02 * std::sin(4.0 * kPi * x + 0.4);
  }
  const CircleDiffeo phi = CircleDiffeo::create(g, std::move(lift));
  for (double q : {1.0, 2.0, 4.0}) {
    const SampledFunction f = lenells_forward(phi, q);
    CHECK(lp_norm(f, q) == doctest::Approx(q).epsilon(1e-12));
    const CircleDiffeo rt = lenells_inverse(f, q);
    double sup = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      sup = std::max(sup, std::abs((rt.lift()[i] - rt.lift()[0]) -
                                   (phi.lift()[i] - phi.lift()[0])));
    }
    CHECK(sup <= 1e-10);
  }
}

TEST_CASE("support splitting recomposes and errors out when impossible") {
  const Grid1D g = Grid1D::circle(2048);
  std::vector<double> lift(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double x = g.node(i);
    const double u = (x - 0.2) / 0.6;
    lift[i] = x + (u <= 0.0 || u >= 1.0 ? 0.0 : 0.05 * std::sin(kPi * u) * std::sin(kPi * u));
  }
  const CircleDiffeo phi = CircleDiffeo::create(g, std::move(lift));
  const SupportSplit split = support_split(phi, 0.1);
  const CircleDiffeo glued = compose(split.phi1, split.phi2);
  double sup = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    sup = std::max(sup, std::abs(glued.lift()[i] - phi.lift()[i]));
  }
  CHECK(sup <= 1e-6);
  // phi2 is the identity on [0, cut_lo].
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g.node(i) < split.cut_lo) {
      CHECK(split.phi2.lift()[i] == doctest::Approx(g.node(i)).epsilon(1e-12));
    }
  }

  // A map that hurls [0, delta] past 1 - delta leaves no identity window.
  std::vector<double> steep(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double x = g.node(i);
    steep[i] = x <= 0.1 ? 9.0 * x : 0.9 + (x - 0.1) / 9.0;
  }
  const CircleDiffeo hurl = CircleDiffeo::create(g, std::move(steep));
  CHECK_THROWS_AS(support_split(hurl, 0.25), numerical_error);
  // And the margin parameter itself is range-checked.
  CHECK_THROWS_AS(support_split(phi, 0.4), invalid_argument_error);
}

TEST_CASE("radial two-slope map stores its dimension and radial part") {
  const PsiParams params = PsiParams::create(3.0, 0.2);
  const RadialMap map = make_radial_psi(params, RadialDim::create(2), 513, 0.0);
  CHECK(map.dim.n == 2);
  const IntervalDiffeo ref = make_psi(params, Grid1D::interval(513, 1.0), 0.0);
  for (std::size_t i = 0; i < map.radial.values().size(); i += 32) {
    CHECK(map.radial.values()[i] == doctest::Approx(ref.values()[i]).epsilon(1e-13));
  }
}
