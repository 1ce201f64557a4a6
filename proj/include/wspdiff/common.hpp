/// @file common.hpp
/// @brief Shared error types, numeric helpers, and a deterministic RNG used
///        across the library.
///
/// Everything here is dependency-free utility code: a small exception
/// hierarchy so callers can distinguish bad inputs from numerical failures,
/// a pairwise (tree) reduction for reproducible floating-point sums, and a
/// xoshiro256++ generator whose output stream is identical on every platform
/// (unlike the standard distributions, whose algorithms are unspecified).

#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace wspdiff {

// ============================================================================
// Error types
// ============================================================================

/// Base class for all library errors.
class error : public std::runtime_error {
 public:
  explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

/// A caller-supplied argument violates a documented precondition.
class invalid_argument_error : public error {
 public:
  explicit invalid_argument_error(const std::string& msg) : error(msg) {}
};

/// Data that was supposed to describe a diffeomorphism fails its invariants
/// (not strictly increasing, endpoints not fixed, lift off by a non-integer).
class invalid_diffeo_error : public error {
 public:
  explicit invalid_diffeo_error(const std::string& msg) : error(msg) {}
};

/// A computation could not reach the requested accuracy or left its domain
/// of validity (e.g. a flow step destroyed monotonicity).
class numerical_error : public error {
 public:
  explicit numerical_error(const std::string& msg) : error(msg) {}
};

// ============================================================================
// Reductions and elementary numeric helpers
// ============================================================================

/// Sum a range by recursive halving (pairwise/tree reduction).
///
/// Error grows like O(log n) in the term count instead of O(n) for the naive
/// left-to-right loop, and the result is independent of chunking decisions,
/// which keeps repeated runs byte-identical.
double pairwise_sum(std::span<const double> terms);

/// |x|^p with cheap exact paths for the exponents that dominate our inner
/// loops (p = 1, 1.5, 2, 3, 4); falls back to std::pow otherwise.
inline double abs_pow(double x, double p) {
  const double a = std::abs(x);
  if (p == 2.0) return a * a;
  if (p == 1.0) return a;
  if (p == 3.0) return a * a * a;
  if (p == 4.0) {
    const double a2 = a * a;
    return a2 * a2;
  }
  if (p == 1.5) return a * std::sqrt(a);
  return std::pow(a, p);
}

/// True if every entry is finite.
bool all_finite(std::span<const double> values);

/// Clamp to [-1, 1] before an inverse trig call; tiny overshoots from
/// quadrature otherwise produce NaN.
inline double clamp_unit(double x) { return x < -1.0 ? -1.0 : (x > 1.0 ? 1.0 : x); }

// ============================================================================
// Deterministic random numbers
// ============================================================================

/// xoshiro256++ with splitmix64 seeding.
///
/// The standard <random> engines are reproducible but the *distributions*
/// are not pinned down by the standard, so uniform doubles are generated
/// here directly from the high 53 bits.  Every experiment that consumes
/// randomness records its seed in the report it emits.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  /// Next raw 64-bit word.
  std::uint64_t next_u64();

  /// Uniform double in [0, 1).
  double uniform();

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::uint64_t state_[4];
};

}  // namespace wspdiff
