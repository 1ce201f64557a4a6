#include "wspdiff/diffeo_ops.hpp"

#include <cmath>

namespace wspdiff {

namespace {

/// Lift nodes 0..1 with the wrap value appended, for spline construction.
std::pair<std::vector<double>, std::vector<double>> lift_with_wrap(const CircleDiffeo& phi) {
  const std::size_t n = phi.grid().size();
  std::vector<double> x(n + 1), y(n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = phi.grid().node(i);
    y[i] = phi.lift()[i];
  }
  x[n] = 1.0;
  y[n] = phi.lift()[0] + 1.0;
  return {std::move(x), std::move(y)};
}

}  // namespace

// ---------------------------------------------------------------------------
// CircleDiffeoEval
// ---------------------------------------------------------------------------

CircleDiffeoEval::CircleDiffeoEval(const CircleDiffeo& phi)
    : spline_([&phi] {
        auto [x, y] = lift_with_wrap(phi);
        return MonotoneCubic(x, y);
      }()),
      lift0_(phi.lift()[0]) {}

double CircleDiffeoEval::operator()(double x) const {
  const double k = std::floor(x);
  return spline_(x - k) + k;
}

double CircleDiffeoEval::derivative(double x) const {
  return spline_.derivative(x - std::floor(x));
}

double CircleDiffeoEval::inverse(double y) const {
  // Choose the period so the reduced target lies in the base window
  // [lift(0), lift(0) + 1).
  const double k = std::floor(y - lift0_);
  return spline_.inverse(y - k) + k;
}

// ---------------------------------------------------------------------------
// IntervalDiffeoEval
// ---------------------------------------------------------------------------

IntervalDiffeoEval::IntervalDiffeoEval(const IntervalDiffeo& phi)
    : spline_([&phi] {
        std::vector<double> x(phi.grid().size());
        for (std::size_t i = 0; i < x.size(); ++i) x[i] = phi.grid().node(i);
        return MonotoneCubic(x, phi.values());
      }()) {}

double IntervalDiffeoEval::operator()(double x) const { return spline_(x); }

double IntervalDiffeoEval::derivative(double x) const { return spline_.derivative(x); }

double IntervalDiffeoEval::inverse(double y) const { return spline_.inverse(y); }

// ---------------------------------------------------------------------------
// compose / invert
// ---------------------------------------------------------------------------

CircleDiffeo compose(const CircleDiffeo& f, const CircleDiffeo& g) {
  if (f.grid() != g.grid()) {
    throw invalid_argument_error("compose: circle maps must share a grid");
  }
  const CircleDiffeoEval fe(f);
  std::vector<double> lift(g.grid().size());
  for (std::size_t i = 0; i < lift.size(); ++i) lift[i] = fe(g.lift()[i]);
  return CircleDiffeo::create(g.grid(), std::move(lift));
}

IntervalDiffeo compose(const IntervalDiffeo& f, const IntervalDiffeo& g) {
  if (f.grid() != g.grid()) {
    throw invalid_argument_error("compose: interval maps must share a grid");
  }
  const IntervalDiffeoEval fe(f);
  std::vector<double> v(g.grid().size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = fe(g.values()[i]);
  v.front() = 0.0;
  v.back() = g.grid().span();
  return IntervalDiffeo::create(g.grid(), std::move(v));
}

AnyDiffeo compose(const AnyDiffeo& f, const AnyDiffeo& g) {
  if (std::holds_alternative<CircleDiffeo>(f) && std::holds_alternative<CircleDiffeo>(g)) {
    return compose(std::get<CircleDiffeo>(f), std::get<CircleDiffeo>(g));
  }
  if (std::holds_alternative<IntervalDiffeo>(f) && std::holds_alternative<IntervalDiffeo>(g)) {
    return compose(std::get<IntervalDiffeo>(f), std::get<IntervalDiffeo>(g));
  }
  throw invalid_argument_error("compose: cannot mix circle and interval maps");
}

CircleDiffeo invert(const CircleDiffeo& phi) {
  const CircleDiffeoEval pe(phi);
  std::vector<double> lift(phi.grid().size());
  for (std::size_t i = 0; i < lift.size(); ++i) lift[i] = pe.inverse(phi.grid().node(i));
  return CircleDiffeo::create(phi.grid(), std::move(lift));
}

IntervalDiffeo invert(const IntervalDiffeo& phi) {
  const IntervalDiffeoEval pe(phi);
  std::vector<double> v(phi.grid().size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = pe.inverse(phi.grid().node(i));
  v.front() = 0.0;
  v.back() = phi.grid().span();
  return IntervalDiffeo::create(phi.grid(), std::move(v));
}

AnyDiffeo invert(const AnyDiffeo& phi) {
  if (std::holds_alternative<CircleDiffeo>(phi)) {
    return invert(std::get<CircleDiffeo>(phi));
  }
  return invert(std::get<IntervalDiffeo>(phi));
}

CircleDiffeo translation(Grid1D grid, double c) {
  std::vector<double> lift(grid.size());
  for (std::size_t i = 0; i < lift.size(); ++i) lift[i] = grid.node(i) + c;
  return CircleDiffeo::create(grid, std::move(lift));
}

double max_displacement(const AnyDiffeo& phi) {
  const Grid1D& g = diffeo_grid(phi);
  const auto& v = diffeo_values(phi);
  double best = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    double d = v[i] - g.node(i);
    if (std::holds_alternative<CircleDiffeo>(phi)) {
      d -= std::floor(d + 0.5);  // reduce mod 1 to [-1/2, 1/2]
    }
    best = std::max(best, std::abs(d));
  }
  return best;
}

}  // namespace wspdiff
