#include "wspdiff/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <utility>
#include <variant>
#include <vector>

#include "wspdiff/calculus.hpp"
#include "wspdiff/common.hpp"
#include "wspdiff/diffeo_ops.hpp"
#include "wspdiff/norms.hpp"
#include "wspdiff/paths.hpp"

namespace wspdiff {

namespace {

constexpr double kPi = 3.14159265358979323846;

/// C^1 cubic step: 0 at u <= 0, 1 at u >= 1.
double smoothstep(double u) {
  if (u <= 0.0) return 0.0;
  if (u >= 1.0) return 1.0;
  return u * u * (3.0 - 2.0 * u);
}

void require_unit_interval_grid(const Grid1D& grid, const char* where) {
  if (grid.domain() != Domain::kInterval || grid.span() != 1.0) {
    throw invalid_argument_error(std::string(where) + ": expected an interval grid over [0, 1]");
  }
}

void require_circle_grid(const Grid1D& grid, const char* where) {
  if (grid.domain() != Domain::kCircle) {
    throw invalid_argument_error(std::string(where) + ": expected a circle grid");
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Two-slope ramp maps
// ---------------------------------------------------------------------------

PsiParams PsiParams::create(double slope, double delta) {
  if (!(slope >= 1.0) || !std::isfinite(slope)) {
    throw invalid_argument_error("PsiParams: slope must be finite and >= 1");
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    throw invalid_argument_error("PsiParams: delta must lie in (0, 1)");
  }
  return PsiParams{slope, delta};
}

IntervalDiffeo make_psi(const PsiParams& params, Grid1D grid, double h) {
  require_unit_interval_grid(grid, "make_psi");
  const double xstar = params.breakpoint();
  const double s2 = params.second_slope();
  const std::size_t n = grid.size();
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = grid.node(i);
    v[i] = x <= xstar ? params.slope * x : (1.0 - params.delta) + s2 * (x - xstar);
  }
  v.front() = 0.0;
  v.back() = 1.0;
  IntervalDiffeo psi = IntervalDiffeo::create(grid, std::move(v));
  return h > 0.0 ? mollify(psi, h) : psi;
}

// ---------------------------------------------------------------------------
// Affine-homotopy velocity field and its closed forms
// ---------------------------------------------------------------------------

HomotopyField psi_homotopy_field(double t, const PsiParams& params) {
  if (!(t >= 0.0 && t <= 1.0)) {
    throw invalid_argument_error("psi_homotopy_field: t must lie in [0, 1]");
  }
  const double lam = params.lambda();
  const double del = params.delta;
  HomotopyField u;
  u.t = t;
  u.slope_up = lam / (1.0 + lam * t);
  u.slope_down =
      lam * (1.0 - del) / (lam * (1.0 - t) * (1.0 - del) + del * (lam + 1.0));
  u.breakpoint = (1.0 - del) * (1.0 + lam * t) / (lam + 1.0);
  return u;
}

double HomotopyField::value(double y) const {
  if (y <= 0.0 || y >= 1.0) return 0.0;
  return y <= breakpoint ? slope_up * y : slope_down * (1.0 - y);
}

double HomotopyField::deriv(double y) const {
  if (y < 0.0 || y > 1.0) return 0.0;
  return y <= breakpoint ? slope_up : -slope_down;
}

RegionIntegrals psi_homotopy_region_integrals(double t, const PsiParams& params, double sigma,
                                              double p) {
  if (!(sigma > 0.0 && sigma < 1.0) || !(p >= 1.0)) {
    throw invalid_argument_error("psi_homotopy_region_integrals: need sigma in (0,1), p >= 1");
  }
  const double sp = sigma * p;
  if (!(sp < 1.0)) {
    throw invalid_argument_error(
        "psi_homotopy_region_integrals: closed forms require sigma * p < 1");
  }
  const HomotopyField u = psi_homotopy_field(t, params);
  const double kk = 1.0 / ((1.0 - sp) * sp);
  const double ys = u.breakpoint;
  const double qa = std::pow(ys, 1.0 - sp);
  const double qb = std::pow(1.0 - ys, 1.0 - sp);
  const double ca = std::pow(u.slope_up, p);
  const double cb = std::pow(u.slope_down, p);
  const double cab = std::pow(u.slope_up + u.slope_down, p);
  RegionIntegrals r;
  r.i1 = ca * kk * qa;
  r.i2 = cb * kk * (1.0 - qa);
  r.i3 = cab * kk * (qa + qb - 1.0);
  r.i4 = cb * kk * qb;
  r.i5 = ca * kk * (1.0 - qb);
  return r;
}

HomotopyNormParts psi_homotopy_norm(double t, const PsiParams& params, double sigma, double p) {
  const HomotopyField u = psi_homotopy_field(t, params);
  const RegionIntegrals reg = psi_homotopy_region_integrals(t, params, sigma, p);
  const double ys = u.breakpoint;
  const double ca = std::pow(u.slope_up, p);
  const double cb = std::pow(u.slope_down, p);
  HomotopyNormParts parts;
  parts.lp = std::pow(
      (ca * std::pow(ys, p + 1.0) + cb * std::pow(1.0 - ys, p + 1.0)) / (p + 1.0), 1.0 / p);
  parts.w1p = std::pow(ca * ys + cb * (1.0 - ys), 1.0 / p);
  parts.gagliardo = std::pow(2.0 * reg.sum(), 1.0 / p);
  return parts;
}

double psi_homotopy_length(const PsiParams& params, double sigma, double p,
                           bool homogeneous_only) {
  const auto integrand = [&](double t) {
    const HomotopyNormParts parts = psi_homotopy_norm(t, params, sigma, p);
    return homogeneous_only ? parts.gagliardo : parts.total();
  };
  return integrate_graded(integrand, 0.0, 1.0, /*singular_at_a=*/true, /*singular_at_b=*/true);
}

double psi_homotopy_envelope(double t, double sigma, double p) {
  const double expo = -1.0 + (1.0 - sigma * p) / p;
  return std::pow(1.0 - t, expo) + std::pow(t, expo);
}

double psi_homotopy_envelope_integral(double sigma, double p) {
  return 2.0 * p / (1.0 - sigma * p);
}

// ---------------------------------------------------------------------------
// Power-law displacement fields
// ---------------------------------------------------------------------------

SampledFunction make_u_alpha_eps(double alpha, double eps, Grid1D circle_grid) {
  require_circle_grid(circle_grid, "make_u_alpha_eps");
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw invalid_argument_error("make_u_alpha_eps: alpha must lie in (0, 1)");
  }
  if (!(eps > 0.0 && eps < 0.5)) {
    throw invalid_argument_error("make_u_alpha_eps: eps must lie in (0, 1/2)");
  }
  const double ramp = std::pow(eps, -alpha);
  const double tail = 4.0 * std::pow(0.75, 1.0 - alpha);
  SampledFunction u = SampledFunction::sample(circle_grid, [&](double x) {
    if (x < eps) return ramp * x;
    if (x < 0.75) return std::pow(x, 1.0 - alpha);
    return tail * (1.0 - x);
  });
  SampledFunction um = mollify(u, eps / 4.0);
  // Mollification across the periodic seam leaves a small positive residue at
  // x = 0.  The displacement argument needs the origin to stay fixed under the
  // flow, so subtract a C^1 bump that restores u(0) = 0 without touching the
  // field outside a neighbourhood of the seam.
  const double drift = um.values.front();
  const double w = 0.5 * eps;
  const std::size_t n = um.values.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double x = um.grid.node(i);
    const double d = std::min(x, 1.0 - x);
    if (d < w) {
      const double c = std::cos(0.5 * kPi * d / w);
      // The bump can overshoot where the mollified field is already small;
      // clamp so the field stays nonnegative and the flow never crosses the
      // fixed point backwards.
      um.values[i] = std::max(0.0, um.values[i] - drift * c * c);
    }
  }
  um.values.front() = 0.0;
  return SampledFunction::create(um.grid, std::move(um.values));
}

RadialProfile make_u_alpha_eps_ball(double alpha, double eps, std::size_t n_r) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw invalid_argument_error("make_u_alpha_eps_ball: alpha must lie in (0, 1)");
  }
  if (!(eps > 0.0 && eps < 0.5)) {
    throw invalid_argument_error("make_u_alpha_eps_ball: eps must lie in (0, 1/2)");
  }
  if (static_cast<double>(n_r) * eps < 8.0) {
    throw invalid_argument_error(
        "make_u_alpha_eps_ball: grid too coarse to resolve the eps bridge (need n_r * eps >= 8)");
  }
  return RadialProfile::sample(n_r, [&](double r) {
    if (r <= 0.5 * eps || r >= 0.75) return 0.0;
    double v = std::pow(r, 1.0 - alpha);
    if (r < eps) v *= smoothstep((r - 0.5 * eps) / (0.5 * eps));
    if (r > 2.0 / 3.0) v *= 1.0 - smoothstep((r - 2.0 / 3.0) / (0.75 - 2.0 / 3.0));
    return v;
  });
}

double displacement_flow_time(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw invalid_argument_error("displacement_flow_time: alpha must lie in (0, 1)");
  }
  return 1.0 / (alpha * std::pow(2.0, alpha));
}

DisplacementPair displacement_pair(double alpha, double eps, Grid1D circle_grid,
                                   std::size_t time_steps) {
  SampledFunction u = make_u_alpha_eps(alpha, eps, circle_grid);
  const double t0 = displacement_flow_time(alpha);

  std::vector<double> scaled(u.values.size());
  for (std::size_t i = 0; i < scaled.size(); ++i) scaled[i] = t0 * u.values[i];
  SampledFunction ut0 = SampledFunction::create(circle_grid, std::move(scaled));

  DiffPath to_phi = flow(ut0, TimeGrid::create(time_steps));
  CircleDiffeo phi = std::get<CircleDiffeo>(to_phi.maps.back());
  CircleDiffeo shift = translation(circle_grid, 0.5);
  CircleDiffeo psi = compose(invert(phi), compose(shift, phi));

  DisplacementPair pair{std::move(u), t0, std::move(to_phi), std::move(phi), std::move(psi)};
  return pair;
}

// ---------------------------------------------------------------------------
// Square-root-slope sphere chart
// ---------------------------------------------------------------------------

SampledFunction lenells_forward(const CircleDiffeo& phi, double q) {
  if (!(q >= 1.0)) throw invalid_argument_error("lenells_forward: q must be >= 1");
  const std::vector<double> dphi = circle_diffeo_derivative(phi);
  std::vector<double> f(dphi.size());
  for (std::size_t i = 0; i < dphi.size(); ++i) {
    if (!(dphi[i] > 1e-12)) {
      throw numerical_error(
          "lenells_forward: spectral derivative of the map is not strictly positive; "
          "the map is too rough for this grid");
    }
    f[i] = q * std::pow(dphi[i], 1.0 / q);
  }
  return SampledFunction::create(phi.grid(), std::move(f));
}

CircleDiffeo lenells_inverse(const SampledFunction& f, double q, double* mass_out) {
  require_circle_grid(f.grid, "lenells_inverse");
  if (!(q >= 1.0)) throw invalid_argument_error("lenells_inverse: q must be >= 1");
  std::vector<double> w(f.values.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!(f.values[i] > 0.0)) {
      throw invalid_argument_error(
          "lenells_inverse: the chart inverts positive sphere points only");
    }
    w[i] = std::pow(f.values[i] / q, q);
  }
  SampledFunction density = SampledFunction::create(f.grid, std::move(w));
  const double mass = integrate(density);
  if (mass_out != nullptr) *mass_out = mass;
  if (!(mass > 0.0) || !std::isfinite(mass)) {
    throw numerical_error("lenells_inverse: density has non-positive mass");
  }
  for (double& wi : density.values) wi /= mass;
  std::vector<double> lift = circle_antiderivative(density);
  return CircleDiffeo::create(f.grid, std::move(lift));
}

// ---------------------------------------------------------------------------
// Spike pairs
// ---------------------------------------------------------------------------

SpikePair spike_pair(double q, double n_factor, double eps, Grid1D circle_grid) {
  require_circle_grid(circle_grid, "spike_pair");
  if (!(q >= 1.0)) throw invalid_argument_error("spike_pair: q must be >= 1");
  if (!(n_factor > 1.0)) throw invalid_argument_error("spike_pair: n_factor must be > 1");
  if (!(eps > 0.0 && eps < 1.0)) throw invalid_argument_error("spike_pair: eps must lie in (0, 1)");

  const double width = std::pow(n_factor, -q);
  const double c = std::pow(1.0 + std::pow(eps, q) * (1.0 - width), -1.0 / q);

  SampledFunction f = SampledFunction::sample(circle_grid, [&](double) { return q; });
  SampledFunction g = SampledFunction::sample(circle_grid, [&](double x) {
    return x < width ? c * q * n_factor : c * q * eps;
  });
  g = mollify(g, std::min(eps, width) / 4.0);
  // Mollification moves a little mass off the sphere ||g||_q = q; rescale so
  // the sampled pair sits exactly where the closed-form chord formulas assume.
  const double mass = lp_norm(g, q) / q;
  double c_eff = c;
  if (mass > 0.0) {
    for (double& v : g.values) v /= mass;
    c_eff = c / mass;
  }
  return SpikePair{std::move(f), std::move(g), c_eff, width};
}

double spike_lq_distance(double q, double n_factor, double eps) {
  const double width = std::pow(n_factor, -q);
  const double c = std::pow(1.0 + std::pow(eps, q) * (1.0 - width), -1.0 / q);
  const double dq = width * std::pow(std::abs(c * n_factor - 1.0), q) +
                    (1.0 - width) * std::pow(1.0 - c * eps, q);
  return q * std::pow(dq, 1.0 / q);
}

double spike_chord_limit(double q) { return std::pow(2.0, 1.0 / q) * q; }

// ---------------------------------------------------------------------------
// Support splitting
// ---------------------------------------------------------------------------

SupportSplit support_split(const CircleDiffeo& phi, double delta) {
  if (!(delta > 0.0 && delta <= 0.25)) {
    throw invalid_argument_error("support_split: delta must lie in (0, 1/4]");
  }
  if (!phi.fixes_zero(1e-9)) {
    throw invalid_argument_error("support_split: the map must fix the basepoint");
  }
  const Grid1D& grid = phi.grid();
  const std::size_t n = grid.size();

  // Displacement with the integer part of the lift at 0 removed, so the
  // basepoint displacement is ~0.
  const double shift = std::floor(phi.lift()[0] + 0.5);
  std::vector<double> disp(n);
  for (std::size_t i = 0; i < n; ++i) disp[i] = phi.lift()[i] - shift - grid.node(i);

  constexpr double kSuppTol = 1e-11;
  std::size_t first = n, last = n;
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(disp[i]) > kSuppTol) {
      if (first == n) first = i;
      last = i;
    }
  }

  SupportSplit out{CircleDiffeo::identity(grid), CircleDiffeo::identity(grid), delta, delta};
  if (first == n) return out;  // phi is the identity

  const double x_first = grid.node(first);
  const double x_last = grid.node(last);
  if (x_last <= 1.0 - delta) {  // all support early: phi1 = phi, phi2 = Id
    out.phi1 = phi;
    return out;
  }
  if (x_first >= delta) {  // all support late: phi2 = phi, phi1 = Id
    out.phi2 = phi;
    return out;
  }

  // General position: phi2 is the identity on [0, delta], a straight bridge
  // on [delta, cut_hi], and phi afterwards.
  CircleDiffeoEval eval(phi);
  double cut_hi = std::min(1.5 * delta, eval.inverse(shift + 1.0 - delta));
  const double cut_lo = delta;
  const double phi_cut = eval(cut_hi) - shift;
  if (!(cut_hi > cut_lo) || !(phi_cut > cut_lo)) {
    throw numerical_error(
        "support_split: the map displaces points across the whole complementary window, so no "
        "identity zone of width delta exists on both sides; shrink delta");
  }

  std::vector<double> lift2(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = grid.node(i);
    if (x <= cut_lo) {
      lift2[i] = x;
    } else if (x >= cut_hi) {
      lift2[i] = phi.lift()[i] - shift;
    } else {
      lift2[i] = cut_lo + (x - cut_lo) * (phi_cut - cut_lo) / (cut_hi - cut_lo);
    }
  }
  out.phi2 = CircleDiffeo::create(grid, std::move(lift2));
  out.phi1 = compose(phi, invert(out.phi2));
  out.cut_lo = cut_lo;
  out.cut_hi = cut_hi;
  return out;
}

// ---------------------------------------------------------------------------
// Radial two-slope map
// ---------------------------------------------------------------------------

RadialMap make_radial_psi(const PsiParams& params, RadialDim dim, std::size_t n_r, double h) {
  return RadialMap{make_psi(params, Grid1D::interval(n_r), h), dim};
}

}  // namespace wspdiff
