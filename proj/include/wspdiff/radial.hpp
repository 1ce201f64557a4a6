/// @file radial.hpp
/// @brief Radial lifts of 1-D profiles to functions and vector fields on the
///        unit ball in dimension 2 or 3, with Sobolev norms computed from
///        closed-form pointwise derivative-tensor magnitudes (integer
///        orders) and pair quadrature collapsed over the rotation group
///        (fractional orders: deterministic in dimension 2, stratified
///        Monte Carlo in dimension 3).

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "wspdiff/grid.hpp"
#include "wspdiff/norms.hpp"

namespace wspdiff {

/// Ambient dimension of the ball, restricted to 2 or 3.
struct RadialDim {
  int n = 2;

  static RadialDim create(int n);

  /// Surface measure of the unit sphere S^{n-1}: 2 pi (n=2), 4 pi (n=3).
  double sphere_area() const;
};

/// 1-D profile f on an interval grid over [0, 1], vanishing at both ends so
/// its radial lift extends by zero outside the ball and stays finite at the
/// origin.  support_lo/hi bracket the nodes where the profile is nonzero.
struct RadialProfile {
  Grid1D r_grid = Grid1D::interval(8);
  std::vector<double> values;
  double support_lo = 0.0;
  double support_hi = 0.0;

  static RadialProfile create(Grid1D r_grid, std::vector<double> values);

  /// Sample a callable on an interval grid over [0, 1].
  template <typename F>
  static RadialProfile sample(std::size_t n, F&& f) {
    Grid1D g = Grid1D::interval(n);
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = f(g.node(i));
    return create(std::move(g), std::move(v));
  }
};

/// Scalar lift F(x) = f(|x|).
struct RadialFunction {
  RadialProfile profile;
  RadialDim dim;
};

/// Vector-field lift F(x) = f(|x|) x/|x|.
struct RadialField {
  RadialProfile profile;
  RadialDim dim;
};

RadialFunction radial_lift_function(RadialProfile profile, RadialDim dim);
RadialField radial_lift_field(RadialProfile profile, RadialDim dim);

/// Quadrature controls for the ball norms.
struct RadialQuadOptions {
  std::size_t n_radial = 128;       ///< pair-quadrature radial nodes
  std::size_t n_angular = 64;       ///< pair-quadrature angular nodes (dim 2)
  std::uint64_t mc_seed = 0x5EED;   ///< dimension-3 Monte Carlo seed
  std::size_t mc_samples = 1u << 20;  ///< total Monte Carlo samples (dim 3)
  bool with_error_estimate = true;  ///< half-resolution comparison pass
};

/// W^{s,p} norm of the scalar lift over the unit ball, s <= 2.
NormReport radial_wsp_norm(const RadialFunction& fn, SobolevIndex index,
                           const RadialQuadOptions& options = {});

/// W^{s,p} norm of the vector-field lift over the unit ball, s <= 2;
/// derivative magnitudes are Frobenius norms.
NormReport radial_wsp_norm(const RadialField& field, SobolevIndex index,
                           const RadialQuadOptions& options = {});

}  // namespace wspdiff
