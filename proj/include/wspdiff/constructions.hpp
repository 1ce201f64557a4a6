/// @file constructions.hpp
/// @brief The named maps, fields, and closed forms used by the experiment
///        suite: two-slope ramp maps and their affine-homotopy velocity
///        fields (with exact region-by-region fractional energies),
///        power-law displacement fields, square-root-slope sphere charts,
///        spike pairs on the L^q sphere, and support splitting.

#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "wspdiff/grid.hpp"
#include "wspdiff/norms.hpp"
#include "wspdiff/paths.hpp"
#include "wspdiff/radial.hpp"

namespace wspdiff {

// ============================================================================
// Two-slope ramp maps and their affine homotopy
// ============================================================================

/// Parameters of the two-slope ramp map psi: slope Lambda >= 1 on
/// [0, (1-delta)/Lambda], then the complementary slope so that psi(1) = 1.
struct PsiParams {
  double slope;  ///< Lambda (steep initial slope); lambda = Lambda - 1
  double delta;  ///< mass left for the shallow piece, in (0, 1)

  static PsiParams create(double slope, double delta);

  double lambda() const { return slope - 1.0; }
  double breakpoint() const { return (1.0 - delta) / slope; }
  double second_slope() const { return delta * slope / (slope - 1.0 + delta); }
};

/// Sampled two-slope ramp map, mollified with radius h around its kink.
IntervalDiffeo make_psi(const PsiParams& params, Grid1D grid, double h);

/// Closed-form Eulerian velocity u_t of the straight-line homotopy
/// phi_t = (1-t) Id + t psi, for the ramp map with parameters (Lambda,
/// delta).  u_t is piecewise affine: slope A(t) = lambda/(1 + lambda t) up
/// to the moving break y*(t), then slope -B(t) down to u_t(1) = 0.
struct HomotopyField {
  double t = 0.0;
  double slope_up = 0.0;    ///< A(t)
  double slope_down = 0.0;  ///< B(t) (the down piece has slope -B)
  double breakpoint = 0.0;  ///< y*(t)

  double value(double y) const;  ///< u_t(y), zero outside [0, 1]
  double deriv(double y) const;  ///< A, -B, or 0
};

HomotopyField psi_homotopy_field(double t, const PsiParams& params);

/// Exact pairing-region values of the fractional energy of u_t' (which is
/// piecewise constant A / -B / 0 with jumps at 0, y*, 1):
///
///   iint |u'(x) - u'(y)|^p |x-y|^{-1-sigma p} dx dy  over x < y,
///
/// split by which constant pieces the two points fall in.  i1..i4 are the
/// four cross-break regions of the standard derivation; i5 is the remaining
/// cross pairing ((0, y*) against (1, inf)), needed for the sum to equal
/// the full half-plane integral exactly.  Requires sigma*p < 1.
struct RegionIntegrals {
  double i1 = 0.0;  ///< (-inf,0) x (0,y*):    |jump| = A
  double i2 = 0.0;  ///< (-inf,0) x (y*,1):    |jump| = B
  double i3 = 0.0;  ///< (0,y*)   x (y*,1):    |jump| = A+B
  double i4 = 0.0;  ///< (y*,1)   x (1,inf):   |jump| = B
  double i5 = 0.0;  ///< (0,y*)   x (1,inf):   |jump| = A
  double sum() const { return i1 + i2 + i3 + i4 + i5; }
};

RegionIntegrals psi_homotopy_region_integrals(double t, const PsiParams& params, double sigma,
                                              double p);

/// Closed-form pieces of ||u_t||_{W^{1+sigma,p}}: L^p norm, first-derivative
/// L^p seminorm, and the Gagliardo seminorm of u_t' assembled from the
/// region integrals (value 2 * sum, then the p-th root).
struct HomotopyNormParts {
  double lp = 0.0;
  double w1p = 0.0;
  double gagliardo = 0.0;
  double total() const { return lp + w1p + gagliardo; }
};

HomotopyNormParts psi_homotopy_norm(double t, const PsiParams& params, double sigma, double p);

/// Homotopy length  int_0^1 N(t) dt  with N the full norm above (or the
/// Gagliardo part alone when homogeneous_only), integrated with panels
/// graded toward both endpoints where N develops its large-lambda spikes.
double psi_homotopy_length(const PsiParams& params, double sigma, double p,
                           bool homogeneous_only = false);

/// The t-shape that dominates the homotopy integrand at large Lambda:
///   (1-t)^{-1+(1-sigma p)/p} + t^{-1+(1-sigma p)/p}.
double psi_homotopy_envelope(double t, double sigma, double p);

/// Integral over (0,1) of the envelope: 2p/(1 - sigma p).
double psi_homotopy_envelope_integral(double sigma, double p);

// ============================================================================
// Power-law displacement fields
// ============================================================================

/// Circle velocity field equal to eps^{-alpha} x on [0, eps),
/// x^{1-alpha} on [eps, 3/4), and 4 (3/4)^{1-alpha} (1-x) on [3/4, 1),
/// mollified with radius eps/4 (a no-op when eps/4 is below the grid
/// spacing; the kinks are then sharp at grid scale, which the fractional
/// quadrature tolerates).
SampledFunction make_u_alpha_eps(double alpha, double eps, Grid1D circle_grid);

/// Ball-domain radial profile variant: 0 on [0, eps/2], C^1 bridge up to
/// r^{1-alpha} on [eps, 2/3], tapered back to 0 at r = 3/4.  Derivative
/// bounded by O(eps^{-alpha}) on the bridge.
RadialProfile make_u_alpha_eps_ball(double alpha, double eps, std::size_t n_r);

/// The time 1/(alpha 2^alpha) for which the ideal flow of the power-law
/// field moves the origin to 1/2.
double displacement_flow_time(double alpha);

/// Flow-based displacement construction: phi = time-1 flow of t0 * u,
/// psi = phi^{-1} o (x + 1/2) o phi.
struct DisplacementPair {
  SampledFunction field;    ///< u_{alpha,eps} (unscaled)
  double t0 = 0.0;          ///< displacement_flow_time(alpha)
  DiffPath flow_to_phi;     ///< path Id -> phi (field scaled by t0)
  CircleDiffeo phi;
  CircleDiffeo psi;
};

DisplacementPair displacement_pair(double alpha, double eps, Grid1D circle_grid,
                                   std::size_t time_steps);

// ============================================================================
// Square-root-slope sphere chart
// ============================================================================

/// Chart phi -> q (phi')^{1/q} onto the positive part of the radius-q
/// L^q sphere.  phi' is computed spectrally; throws numerical_error if the
/// derivative is not strictly positive at every node.
SampledFunction lenells_forward(const CircleDiffeo& phi, double q);

/// Inverse chart: phi(x) = int_0^x (f/q)^q, computed spectrally.  If f is
/// off the sphere by more than 1e-6 (mass int (f/q)^q != 1), the result is
/// renormalized; the mass actually found is stored in *mass_out when given.
CircleDiffeo lenells_inverse(const SampledFunction& f, double q,
                             double* mass_out = nullptr);

// ============================================================================
// Spike pairs on the positive L^q sphere
// ============================================================================

/// The constant sphere point f = q and the two-plateau spike g with height
/// c q n_factor on (0, n_factor^{-q}) and c q eps elsewhere; c is the exact
/// sphere normalizer (1 + eps^q (1 - n^{-q}))^{-1/q}.
struct SpikePair {
  SampledFunction f;
  SampledFunction g;
  double c = 0.0;
  double spike_width = 0.0;  ///< n_factor^{-q}; sub-grid for large q
};

/// Sampled construction: heights are assigned per node, the plateau step is
/// mollified when the grid resolves it.  For q >= 4 the spike is narrower
/// than any practical grid; use the closed forms below for distances.
SpikePair spike_pair(double q, double n_factor, double eps, Grid1D circle_grid);

/// Exact ||f - g||_{L^q} for the ideal (unmollified) spike pair.
double spike_lq_distance(double q, double n_factor, double eps);

/// Large-n limit of the spike chord: 2^{1/q} q.
double spike_chord_limit(double q);

// ============================================================================
// Support splitting of circle maps fixing the basepoint
// ============================================================================

/// Factorization phi = phi1 o phi2 where phi2 is the identity on [0, delta]
/// and agrees with phi on [cut_hi, 1], while phi1 is the identity on
/// [phi(cut_hi), 1].  Throws numerical_error (with a shrink-delta hint) when
/// phi moves points across the complementary zone so no cut exists.
struct SupportSplit {
  CircleDiffeo phi1;
  CircleDiffeo phi2;
  double cut_lo = 0.0;  ///< end of phi2's identity zone (= delta in general position)
  double cut_hi = 0.0;  ///< from here on, phi2 = phi
};

SupportSplit support_split(const CircleDiffeo& phi, double delta);

// ============================================================================
// Radial two-slope map
// ============================================================================

/// Ball map x -> psi(|x|) x/|x| with a two-slope radial part.
struct RadialMap {
  IntervalDiffeo radial;
  RadialDim dim;
};

RadialMap make_radial_psi(const PsiParams& params, RadialDim dim, std::size_t n_r, double h);

}  // namespace wspdiff
