/// @file calculus.hpp
/// @brief Quadrature, differentiation, and mollification on uniform grids.
///
/// Differentiation conventions:
///   * circle grids: spectral differentiation (radix-2 FFT when the node
///     count is a power of two, dense DFT otherwise) — exact for band-limited
///     data and spectrally accurate for smooth periodic data;
///   * interval/line grids: 4th-order central differences with 4th-order
///     one-sided closures at the two nodes nearest each boundary.
///
/// Mollification convolves with the compactly supported bump
/// exp(1/(u^2-1)) on |u| < 1, scaled to radius h and normalized to unit
/// discrete mass.  Because the discrete kernel is symmetric, linear data are
/// reproduced exactly, so piecewise-linear inputs are unchanged outside an
/// h-neighborhood of their break points.

#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "wspdiff/grid.hpp"

namespace wspdiff {

// ============================================================================
// Quadrature on grids
// ============================================================================

/// Integral of the sampled function over its domain.
/// Circle: periodic rectangle rule (= trapezoid). Interval/line: trapezoid.
double integrate(const SampledFunction& f);

/// Node weights of the rule used by integrate().
std::vector<double> quadrature_weights(const Grid1D& grid);

/// Running integral F(x_i) = int_0^{x_i} f, F(0) = 0 (trapezoid).
/// Works on all domains; for circle grids the final node is x_{n-1}.
std::vector<double> cumulative_integral(const SampledFunction& f);

/// Sum w_i * |v_i|^p with the grid's quadrature weights (pairwise-reduced).
double lp_integral(const SampledFunction& f, double p);

/// Antiderivative F(x_i) = int_0^{x_i} f with F(0) = 0 for circle-grid data,
/// computed spectrally: the mean of f contributes a linear ramp, the
/// oscillatory modes are divided by their frequency.  Spectrally accurate
/// for smooth periodic f (cumulative_integral is only 2nd order).
std::vector<double> circle_antiderivative(const SampledFunction& f);

// ============================================================================
// FFT and differentiation
// ============================================================================

/// In-place complex FFT (inverse when `inverse`).  Radix-2 when the length
/// is a power of two; otherwise a dense O(n^2) transform with the same
/// normalization (forward unnormalized, inverse divides by n).
void fft(std::vector<std::complex<double>>& a, bool inverse);

/// Derivative of a sampled function (see file header for the scheme).
SampledFunction derivative(const SampledFunction& f);

/// k-fold derivative (k >= 0; k = 0 returns a copy).
SampledFunction derivative_k(const SampledFunction& f, int k);

/// Node values of phi' for a circle diffeomorphism: spectral derivative of
/// the periodic displacement lift(x) - x, plus 1.
std::vector<double> circle_diffeo_derivative(const CircleDiffeo& phi);

/// Node values of phi' for an interval diffeomorphism (4th-order FD).
std::vector<double> interval_diffeo_derivative(const IntervalDiffeo& phi);

// ============================================================================
// Mollification
// ============================================================================

/// Smooth a sampled function by bump convolution of radius h.
///
/// Boundary handling: circle — periodic; line — zero extension; interval —
/// linear extension of the boundary cells (exact for inputs whose boundary
/// pieces are linear on a width-h collar).
SampledFunction mollify(const SampledFunction& f, double h);

/// Smooth a circle diffeomorphism: the periodic displacement lift(x) - x is
/// convolved, which preserves the winding and strict monotonicity.
CircleDiffeo mollify(const CircleDiffeo& phi, double h);

/// Smooth an interval diffeomorphism: the displacement values(x) - x is
/// convolved with odd reflection at both endpoints, which pins 0 and span
/// exactly and is exact where the boundary pieces are linear.
IntervalDiffeo mollify(const IntervalDiffeo& phi, double h);

// ============================================================================
// 1-D integrators for oracle-grade reference values
// ============================================================================

/// Integrate f over [a, b] with composite Gauss–Legendre panels;
/// `panels` uniform panels of 7 points each.  Intended for smooth f.
double integrate_gauss(const std::function<double(double)>& f, double a, double b,
                       int panels = 40);

/// Integrate f over [a, b] where f may have an integrable power singularity
/// at either endpoint.  Panels shrink geometrically toward the flagged
/// end(s); each panel uses 7-point Gauss–Legendre.
double integrate_graded(const std::function<double(double)>& f, double a, double b,
                        bool singular_at_a, bool singular_at_b, int levels = 48,
                        double ratio = 0.5);

}  // namespace wspdiff
