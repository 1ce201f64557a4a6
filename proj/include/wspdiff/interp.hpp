/// @file interp.hpp
/// @brief C^1 cubic interpolation: a monotonicity-preserving variant for
///        diffeomorphism data and a plain Hermite variant for general fields.
///
/// Both interpolants build their tangents from divided differences only, so
/// they commute exactly with affine rescaling of the axes.  That property is
/// what lets matched-grid rescaling tests hold to rounding error.

#pragma once

#include <span>
#include <vector>

#include "wspdiff/common.hpp"

namespace wspdiff {

/// Shape-preserving cubic Hermite interpolant for strictly monotone data
/// (Fritsch–Carlson tangent limiting).  The interpolant is C^1, strictly
/// monotone wherever the data are, and is inverted by bisection.
class MonotoneCubic {
 public:
  /// Data must satisfy x strictly increasing and y strictly monotone
  /// (increasing or decreasing); at least 2 points.
  MonotoneCubic(std::span<const double> x, std::span<const double> y);

  /// Evaluate at xq.  Outside [x_front, x_back] the boundary cubic is
  /// extended linearly with the boundary tangent.
  double operator()(double xq) const;

  /// First derivative of the interpolant.
  double derivative(double xq) const;

  /// Solve f(x) = yq by bisection on [x_front, x_back] to |dx| <= tol.
  /// yq must lie inside the value range.
  double inverse(double yq, double tol = 1e-12) const;

  double x_front() const { return x_.front(); }
  double x_back() const { return x_.back(); }
  double y_front() const { return y_.front(); }
  double y_back() const { return y_.back(); }

 private:
  std::size_t cell_of(double xq) const;

  std::vector<double> x_, y_, m_;  // nodes, values, limited tangents
  bool increasing_;
};

/// Plain cubic Hermite interpolant with central-difference tangents
/// (one-sided at the ends).  No shape constraints; used to evaluate sampled
/// velocity fields between nodes, e.g. inside a Runge–Kutta step.
class CubicHermite {
 public:
  /// x strictly increasing, at least 2 points.
  CubicHermite(std::span<const double> x, std::span<const double> y);

  double operator()(double xq) const;

 private:
  std::size_t cell_of(double xq) const;

  std::vector<double> x_, y_, m_;
};

}  // namespace wspdiff
