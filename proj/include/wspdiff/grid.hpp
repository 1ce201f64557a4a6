/// @file grid.hpp
/// @brief Uniform 1-D grids, sampled functions, and discrete diffeomorphisms
///        of the circle and the interval.
///
/// Conventions used throughout the library:
///   * Circle grids have n nodes x_i = i/n, i = 0..n-1 (period 1, no
///     duplicated endpoint).  Circle maps are stored as lifts: strictly
///     increasing reals with phi(x + 1) = phi(x) + 1, pinned so the node
///     values live near [0, 1).
///   * Interval and line grids have n nodes x_i = span * i/(n-1).  Interval
///     diffeomorphisms fix both endpoints (0 and span).  Line grids describe
///     compactly supported functions on the real axis: values are taken as 0
///     outside [0, span].
///   * The span field is what makes matched-grid rescaling exact: the
///     rescaled object lives on a grid with span/lambda and identical
///     sample values up to the analytic prefactor, so discrete scaling
///     identities hold to rounding error rather than quadrature error.

#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "wspdiff/common.hpp"

namespace wspdiff {

/// Which 1-D domain a grid discretizes.
enum class Domain {
  kCircle,    ///< R / Z, periodic, span fixed to 1
  kInterval,  ///< [0, span] with endpoints as genuine boundary
  kLine       ///< R, functions supported inside [0, span], zero outside
};

/// Human-readable domain name (for reports and error messages).
std::string domain_name(Domain d);

// ============================================================================
// Grid1D
// ============================================================================

/// A uniform grid on one of the three domains.
class Grid1D {
 public:
  /// Periodic grid with n >= 8 nodes x_i = i/n on the unit circle.
  static Grid1D circle(std::size_t n);

  /// Grid with n >= 8 nodes x_i = span * i/(n-1) on [0, span], span > 0.
  static Grid1D interval(std::size_t n, double span = 1.0);

  /// Same node layout as interval(), but tagged as a compactly-supported
  /// line-domain grid (integrals run over all of R, values vanish outside).
  static Grid1D line(std::size_t n, double span = 1.0);

  Domain domain() const { return domain_; }
  std::size_t size() const { return n_; }
  double span() const { return span_; }

  /// Node coordinate x_i.
  double node(std::size_t i) const {
    return domain_ == Domain::kCircle ? span_ * static_cast<double>(i) / static_cast<double>(n_)
                                      : span_ * static_cast<double>(i) / static_cast<double>(n_ - 1);
  }

  /// Spacing between adjacent nodes.
  double spacing() const {
    return domain_ == Domain::kCircle ? span_ / static_cast<double>(n_)
                                      : span_ / static_cast<double>(n_ - 1);
  }

  bool operator==(const Grid1D& o) const {
    return domain_ == o.domain_ && n_ == o.n_ && span_ == o.span_;
  }
  bool operator!=(const Grid1D& o) const { return !(*this == o); }

 private:
  Grid1D(Domain d, std::size_t n, double span) : domain_(d), n_(n), span_(span) {}

  Domain domain_;
  std::size_t n_;
  double span_;
};

// ============================================================================
// SampledFunction
// ============================================================================

/// A real-valued function given by its node values on a Grid1D.
///
/// Values must be finite; the vector length must match the grid.  On line
/// grids the function is understood to be identically zero outside
/// [0, span], so integral operators extend it by zero.
struct SampledFunction {
  Grid1D grid;
  std::vector<double> values;

  /// Validating constructor.
  static SampledFunction create(Grid1D grid, std::vector<double> values);

  /// Convenience: sample a callable at the grid nodes.
  template <typename F>
  static SampledFunction sample(Grid1D grid, F&& f) {
    std::vector<double> v(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) v[i] = f(grid.node(i));
    return create(grid, std::move(v));
  }
};

// ============================================================================
// Diffeomorphisms
// ============================================================================

/// An orientation-preserving diffeomorphism of the circle, stored as a lift.
///
/// Invariants: values are strictly increasing across nodes *including the
/// wraparound* (values[0] + 1 > values[n-1]), and the lift of any full loop
/// increases by exactly 1.  The map need not fix 0; helpers that require a
/// basepoint-fixing map check for it explicitly.
class CircleDiffeo {
 public:
  /// Validating constructor; `lift[i]` is phi~(x_i).
  static CircleDiffeo create(Grid1D grid, std::vector<double> lift);

  /// The identity map on the given circle grid.
  static CircleDiffeo identity(Grid1D grid);

  const Grid1D& grid() const { return grid_; }
  const std::vector<double>& lift() const { return lift_; }

  /// Lift value at node i (i may exceed n; the +1-per-period rule applies).
  double lift_at(std::size_t i) const;

  /// True if the map fixes the basepoint: phi(0) == 0 within tol.
  bool fixes_zero(double tol = 1e-12) const;

 private:
  CircleDiffeo(Grid1D g, std::vector<double> v) : grid_(g), lift_(std::move(v)) {}

  Grid1D grid_;
  std::vector<double> lift_;
};

/// An orientation-preserving diffeomorphism of [0, span].
///
/// Invariants: values strictly increasing, values.front() == 0 and
/// values.back() == span exactly.  Interval and line grids are both
/// accepted; on line grids this represents a map that is the identity
/// outside the window by convention (used for compactly supported
/// displacements).
class IntervalDiffeo {
 public:
  /// Validating constructor.
  static IntervalDiffeo create(Grid1D grid, std::vector<double> values);

  /// The identity map on the given grid.
  static IntervalDiffeo identity(Grid1D grid);

  const Grid1D& grid() const { return grid_; }
  const std::vector<double>& values() const { return values_; }

 private:
  IntervalDiffeo(Grid1D g, std::vector<double> v) : grid_(g), values_(std::move(v)) {}

  Grid1D grid_;
  std::vector<double> values_;
};

/// Either kind of diffeomorphism; paths store sequences of these.
using AnyDiffeo = std::variant<CircleDiffeo, IntervalDiffeo>;

/// Grid of either alternative.
const Grid1D& diffeo_grid(const AnyDiffeo& d);

/// Node values of the map: the lift for a circle map, plain values otherwise.
const std::vector<double>& diffeo_values(const AnyDiffeo& d);

}  // namespace wspdiff
