/// @file paths.hpp
/// @brief Paths of diffeomorphisms, right-trivialized velocity fields, and
///        geodesic-style length functionals.
///
/// A path is a sequence of maps phi_j at uniform times t_j = j/m.  Its
/// right-trivialized velocity at time t_j is
///
///   u_j = (d/dt phi)_j o phi_j^{-1},
///
/// with d/dt taken by 2nd-order central differences (one-sided at the
/// ends).  The length functional integrates ||u_t||_{W^{s,p}} in time with
/// the trapezoid rule, so lengths are right-invariant up to interpolation
/// error and concatenations are additive up to the O(dt^2) junction
/// mismatch of the time stencil.

#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "wspdiff/diffeo_ops.hpp"
#include "wspdiff/grid.hpp"
#include "wspdiff/norms.hpp"

namespace wspdiff {

/// Uniform time grid t_j = j/m, j = 0..m, with m >= 8 steps.
struct TimeGrid {
  std::size_t m;

  static TimeGrid create(std::size_t m);

  double t(std::size_t j) const { return static_cast<double>(j) / static_cast<double>(m); }
  std::size_t nodes() const { return m + 1; }
  double dt() const { return 1.0 / static_cast<double>(m); }
};

/// A discrete path of diffeomorphisms, all of one kind on one grid.
struct DiffPath {
  TimeGrid times;
  std::vector<AnyDiffeo> maps;  ///< size times.nodes()

  static DiffPath create(TimeGrid times, std::vector<AnyDiffeo> maps);

  const Grid1D& grid() const { return diffeo_grid(maps.front()); }
  Domain domain() const { return grid().domain(); }
};

// ============================================================================
// Velocity extraction and length
// ============================================================================

/// Right-trivialized velocity field at time node j, sampled on the path's
/// grid.  Implementation note: u_j is known exactly at the warped nodes
/// phi_j(x_k) (where it equals the time-difference of the maps), so it is
/// resampled from there by monotone-abscissa interpolation — no per-node
/// root finding.
SampledFunction extract_vector_field(const DiffPath& path, std::size_t j);

/// ||u_{t_j}||_{W^{s,p}} for every time node (the length integrand).
/// With homogeneous_only, only the top-order seminorm is measured.
std::vector<double> path_integrand(const DiffPath& path, const SobolevIndex& idx,
                                   bool homogeneous_only = false);

/// Trapezoid-in-time length  int_0^1 ||u_t||_{W^{s,p}} dt.
double path_length(const DiffPath& path, const SobolevIndex& idx,
                   bool homogeneous_only = false);

/// Path run backwards (maps reversed, same time grid).
DiffPath reverse(const DiffPath& path);

/// Concatenation (p then q, each reparametrized to half time); requires
/// equal step counts and a shared grid, and q must start where p ends.
DiffPath concatenate(const DiffPath& p, const DiffPath& q);

// ============================================================================
// Path construction
// ============================================================================

/// Straight-line homotopy (1-t) a + t b between two maps (lift-affine on
/// the circle); valid because convex combinations of increasing maps are
/// increasing.
DiffPath affine_path(const AnyDiffeo& a, const AnyDiffeo& b, TimeGrid times);

/// Affine path from the identity to the target.
DiffPath affine_path(const AnyDiffeo& target, TimeGrid times);

/// Flow of a (possibly time-dependent) velocity field over t in [0, 1]:
/// phi_0 = Id, d/dt phi_t(x) = u(t, phi_t(x)), integrated with classical
/// RK4.  `u` must be 1-periodic in x for circle grids and must vanish at
/// the endpoints for interval grids.  Throws numerical_error if a step
/// destroys strict monotonicity (refine the time grid).
DiffPath flow(const std::function<double(double, double)>& u, Grid1D grid, TimeGrid times);

/// Flow of an autonomous sampled field (cubic-Hermite interpolated).
DiffPath flow(const SampledFunction& u, TimeGrid times);

// ============================================================================
// Square-root-slope sphere geometry
// ============================================================================

/// Path between circle maps that is the preimage of the great-circle-like
/// affine path on the positive sphere ||f||_{L^q} = q under the
/// square-root-slope map f = q (phi')^{1/q}: intermediate sphere points are
/// renormalized affine combinations, pulled back to maps.
DiffPath lenells_sphere_path(const CircleDiffeo& a, const CircleDiffeo& b, double q,
                             TimeGrid times);

/// Closed-form sphere distance for q = 2:  arccos( int sqrt(phi' psi') ).
/// Convention: no radius prefactor (reported alongside results that use it).
double h1dot_distance_closed_form(const CircleDiffeo& phi, const CircleDiffeo& psi);

// ============================================================================
// Length descent
// ============================================================================

/// Options for path_shorten.
struct ShortenOptions {
  int iterations = 50;
  bool homogeneous_only = false;
  int n_basis = 8;          ///< low-frequency perturbation modes per slice
  double initial_step = 0.02;
};

/// Greedy length descent: perturb interior slices along a fixed
/// low-frequency basis (Fourier modes on the circle, endpoint-pinned cubic
/// bumps on the interval), accept only improvements, recompute only the
/// three affected time slices.  Endpoint maps never move.
DiffPath path_shorten(const DiffPath& path, const SobolevIndex& idx,
                      const ShortenOptions& opts = {});

}  // namespace wspdiff
