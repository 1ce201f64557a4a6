/// @file diffeo_ops.hpp
/// @brief Pointwise evaluation, composition, and inversion of discrete
///        diffeomorphisms.
///
/// Evaluation between nodes uses the monotone cubic interpolant of the lift
/// (circle) or of the values (interval), so composed and inverted maps stay
/// strictly monotone by construction.  Inversion solves the interpolant by
/// bisection to 1e-12.

#pragma once

#include "wspdiff/grid.hpp"
#include "wspdiff/interp.hpp"

namespace wspdiff {

/// Callable view of a circle diffeomorphism's lift.
class CircleDiffeoEval {
 public:
  explicit CircleDiffeoEval(const CircleDiffeo& phi);

  /// Lift value phi~(x) for any real x (phi~(x+1) = phi~(x)+1).
  double operator()(double x) const;

  /// d(phi~)/dx at any real x.
  double derivative(double x) const;

  /// Lift of the inverse map at any real y.
  double inverse(double y) const;

 private:
  MonotoneCubic spline_;  // lift over [0, 1] including the wrap node
  double lift0_;
};

/// Callable view of an interval diffeomorphism.
class IntervalDiffeoEval {
 public:
  explicit IntervalDiffeoEval(const IntervalDiffeo& phi);

  double operator()(double x) const;
  double derivative(double x) const;
  double inverse(double y) const;

 private:
  MonotoneCubic spline_;
};

/// Composition f after g, resampled on g's grid.
CircleDiffeo compose(const CircleDiffeo& f, const CircleDiffeo& g);
IntervalDiffeo compose(const IntervalDiffeo& f, const IntervalDiffeo& g);
AnyDiffeo compose(const AnyDiffeo& f, const AnyDiffeo& g);

/// Inverse map sampled on the same grid.
CircleDiffeo invert(const CircleDiffeo& phi);
IntervalDiffeo invert(const IntervalDiffeo& phi);
AnyDiffeo invert(const AnyDiffeo& phi);

/// Rigid rotation x -> x + c of the circle (c in R).
CircleDiffeo translation(Grid1D grid, double c);

/// Largest absolute displacement max_i |phi(x_i) - x_i| (circle: of the
/// lift reduced mod 1 to [-1/2, 1/2]).
double max_displacement(const AnyDiffeo& phi);

}  // namespace wspdiff
