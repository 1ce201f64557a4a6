#include "wspdiff/grid.hpp"

#include <cmath>

namespace wspdiff {

double pairwise_sum(std::span<const double> terms) {
  const std::size_t n = terms.size();
  if (n == 0) return 0.0;
  if (n <= 8) {
    double acc = 0.0;
    for (double t : terms) acc += t;
    return acc;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(terms.first(half)) + pairwise_sum(terms.subspan(half));
}

bool all_finite(std::span<const double> values) {
  for (double v : values) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Rng (xoshiro256++, seeded via splitmix64)
// ---------------------------------------------------------------------------

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
  x += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

Rng::Rng(std::uint64_t seed) {
  std::uint64_t s = seed;
  for (auto& w : state_) w = splitmix64(s);
}

std::uint64_t Rng::next_u64() {
  const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = rotl(state_[3], 45);
  return result;
}

double Rng::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

// ---------------------------------------------------------------------------
// Grid1D
// ---------------------------------------------------------------------------

std::string domain_name(Domain d) {
  switch (d) {
    case Domain::kCircle: return "circle";
    case Domain::kInterval: return "interval";
    case Domain::kLine: return "line";
  }
  return "?";
}

namespace {

void check_grid_args(std::size_t n, double span, const char* what) {
  if (n < 8) {
    throw invalid_argument_error(std::string(what) + ": need at least 8 nodes, got " +
                                 std::to_string(n));
  }
  if (!(span > 0.0) || !std::isfinite(span)) {
    throw invalid_argument_error(std::string(what) + ": span must be positive and finite");
  }
}

}  // namespace

Grid1D Grid1D::circle(std::size_t n) {
  check_grid_args(n, 1.0, "Grid1D::circle");
  return Grid1D(Domain::kCircle, n, 1.0);
}

Grid1D Grid1D::interval(std::size_t n, double span) {
  check_grid_args(n, span, "Grid1D::interval");
  return Grid1D(Domain::kInterval, n, span);
}

Grid1D Grid1D::line(std::size_t n, double span) {
  check_grid_args(n, span, "Grid1D::line");
  return Grid1D(Domain::kLine, n, span);
}

// ---------------------------------------------------------------------------
// SampledFunction
// ---------------------------------------------------------------------------

SampledFunction SampledFunction::create(Grid1D grid, std::vector<double> values) {
  if (values.size() != grid.size()) {
    throw invalid_argument_error("SampledFunction: " + std::to_string(values.size()) +
                                 " values on a grid of " + std::to_string(grid.size()) +
                                 " nodes");
  }
  if (!all_finite(values)) {
    throw invalid_argument_error("SampledFunction: values must be finite");
  }
  return SampledFunction{grid, std::move(values)};
}

// ---------------------------------------------------------------------------
// CircleDiffeo
// ---------------------------------------------------------------------------

CircleDiffeo CircleDiffeo::create(Grid1D grid, std::vector<double> lift) {
  if (grid.domain() != Domain::kCircle) {
    throw invalid_argument_error("CircleDiffeo: grid must be a circle grid");
  }
  if (lift.size() != grid.size()) {
    throw invalid_argument_error("CircleDiffeo: lift size does not match grid");
  }
  if (!all_finite(lift)) {
    throw invalid_diffeo_error("CircleDiffeo: lift values must be finite");
  }
  for (std::size_t i = 0; i + 1 < lift.size(); ++i) {
    if (!(lift[i + 1] > lift[i])) {
      throw invalid_diffeo_error("CircleDiffeo: lift not strictly increasing at node " +
                                 std::to_string(i + 1));
    }
  }
  // Wraparound: phi~(1) = phi~(0) + 1 must continue the increase.
  if (!(lift.front() + 1.0 > lift.back())) {
    throw invalid_diffeo_error(
        "CircleDiffeo: lift spans more than one period (wraparound not increasing)");
  }
  return CircleDiffeo(grid, std::move(lift));
}

CircleDiffeo CircleDiffeo::identity(Grid1D grid) {
  std::vector<double> v(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) v[i] = grid.node(i);
  return create(grid, std::move(v));
}

double CircleDiffeo::lift_at(std::size_t i) const {
  const std::size_t n = grid_.size();
  const std::size_t period = i / n;
  return lift_[i % n] + static_cast<double>(period);
}

bool CircleDiffeo::fixes_zero(double tol) const {
  const double frac = lift_[0] - std::floor(lift_[0] + 0.5);
  return std::abs(frac) <= tol;
}

// ---------------------------------------------------------------------------
// IntervalDiffeo
// ---------------------------------------------------------------------------

IntervalDiffeo IntervalDiffeo::create(Grid1D grid, std::vector<double> values) {
  if (grid.domain() == Domain::kCircle) {
    throw invalid_argument_error("IntervalDiffeo: grid must be an interval or line grid");
  }
  if (values.size() != grid.size()) {
    throw invalid_argument_error("IntervalDiffeo: value count does not match grid");
  }
  if (!all_finite(values)) {
    throw invalid_diffeo_error("IntervalDiffeo: values must be finite");
  }
  if (values.front() != 0.0 || values.back() != grid.span()) {
    throw invalid_diffeo_error("IntervalDiffeo: endpoints must be fixed exactly (0 and span)");
  }
  for (std::size_t i = 0; i + 1 < values.size(); ++i) {
    if (!(values[i + 1] > values[i])) {
      throw invalid_diffeo_error("IntervalDiffeo: values not strictly increasing at node " +
                                 std::to_string(i + 1));
    }
  }
  return IntervalDiffeo(grid, std::move(values));
}

IntervalDiffeo IntervalDiffeo::identity(Grid1D grid) {
  std::vector<double> v(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) v[i] = grid.node(i);
  v.front() = 0.0;
  v.back() = grid.span();
  return create(grid, std::move(v));
}

// ---------------------------------------------------------------------------
// AnyDiffeo helpers
// ---------------------------------------------------------------------------

const Grid1D& diffeo_grid(const AnyDiffeo& d) {
  return std::visit([](const auto& m) -> const Grid1D& { return m.grid(); }, d);
}

const std::vector<double>& diffeo_values(const AnyDiffeo& d) {
  if (std::holds_alternative<CircleDiffeo>(d)) return std::get<CircleDiffeo>(d).lift();
  return std::get<IntervalDiffeo>(d).values();
}

}  // namespace wspdiff
