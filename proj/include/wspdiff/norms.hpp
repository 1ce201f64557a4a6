/// @file norms.hpp
/// @brief Fractional Sobolev norms of sampled 1-D functions.
///
/// For s = k + sigma with integer k >= 0 and sigma in [0, 1), the norm is
/// assembled additively:
///
///   ||f||_{s,p} = ||f||_{L^p} + sum_{j=1..k} ||D^j f||_{L^p}
///                             + [sigma > 0] Gagliardo_{sigma,p}(D^k f)
///
/// where the Gagliardo seminorm is
///
///   ( iint |g(x)-g(y)|^p / |x-y|^{1+sigma p} dx dy )^{1/p}.
///
/// Discretization: the double integral becomes a double node sum with the
/// point kernel.  The diagonal band |x-y| < h (one grid cell) is excluded
/// and replaced by its analytic first-order value
/// ||g'||_p^p * 2 h^{p-sigma p}/(p-sigma p).  On line domains the outer
/// variable runs over the extended window [-span, 2span] (the function is
/// zero there) and the remaining tail is added in closed form, factorized
/// through |g(y)|^p — exact when g vanishes outside [0, span].  Every term
/// is homogeneous under (x, h) -> (x/lambda, h/lambda), which is what makes
/// matched-grid rescaling an identity up to rounding.
///
/// Circle distances use the arc metric min(|x-y|, 1-|x-y|); this is the
/// standard equivalent-norm convention and is recorded in the report.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wspdiff/calculus.hpp"
#include "wspdiff/grid.hpp"

namespace wspdiff {

// ============================================================================
// Index and report types
// ============================================================================

/// Smoothness/integrability index pair (s, p), split as s = k + sigma.
struct SobolevIndex {
  double s;
  double p;
  int k;         ///< floor(s)
  double sigma;  ///< s - k, in [0, 1)

  /// Validates s >= 0 and p >= 1.  p = 1 is accepted but flagged in
  /// reports: the triangle-inequality-based machinery stays valid, while
  /// smooth-norm arguments do not.
  static SobolevIndex create(double s, double p);
};

/// Decomposed norm value plus quadrature provenance.
struct NormReport {
  double s = 0.0;
  double p = 2.0;
  int dim = 1;  ///< 1 for functions of one variable, 2/3 for radial lifts

  double lp_part = 0.0;  ///< ||f||_{L^p} alone
  /// (order, value) pairs: (j, ||D^j f||_p) for j = 1..k, then
  /// (s, fractional seminorm) when sigma > 0.
  std::vector<std::pair<double, double>> parts;
  double total = 0.0;  ///< lp_part + sum of parts

  struct Quadrature {
    std::size_t grid_n = 0;
    double band_h = 0.0;        ///< excluded-band half-width (0 if no fractional part)
    double est_rel_err = 0.0;   ///< coarse-vs-fine self-estimate (0 if unavailable)
    bool p_equals_1 = false;
    std::optional<std::uint64_t> mc_seed;   ///< set by Monte Carlo backends only
    std::optional<double> mc_stderr;
    std::vector<std::string> conventions;
  } quad;
};

// ============================================================================
// Norm evaluation
// ============================================================================

/// ||f||_{L^p} by the grid's quadrature rule.
double lp_norm(const SampledFunction& f, double p);

/// ||D^k f||_{L^p}; requires grid.size() >= 32*k to keep the k-fold
/// differentiation meaningful.
double homogeneous_kp_seminorm(const SampledFunction& f, int k, double p);

/// Result of a fractional seminorm evaluation.
struct GagliardoResult {
  double value = 0.0;        ///< the seminorm (already the p-th root)
  double band_h = 0.0;
  double est_rel_err = 0.0;  ///< half-grid self-comparison; 0 when not computable
  std::string convention;
};

/// Gagliardo seminorm of f itself with exponents (sigma, p), sigma in (0,1).
///
/// Set `with_error_estimate = false` to skip the half-resolution
/// self-comparison (25% cheaper inner loop).
GagliardoResult gagliardo_seminorm_1d(const SampledFunction& f, double sigma, double p,
                                      bool with_error_estimate = true);

/// Full decomposed norm ||f||_{W^{s,p}}.
NormReport wsp_norm(const SampledFunction& f, const SobolevIndex& idx);

/// Top-order part only: ||D^k f||_p when sigma = 0, else the Gagliardo
/// seminorm of D^k f.  This is the homogeneous quantity whose scaling
/// exponent is (s-1) - 1/p on matched grids.
double top_seminorm(const SampledFunction& f, const SobolevIndex& idx);

// ============================================================================
// Rescaling and embedding diagnostics
// ============================================================================

/// Matched-grid rescaling f^lambda(x) = f(lambda x)/lambda: same node count,
/// span divided by lambda, values divided by lambda.  Line domains only.
SampledFunction scaling_op(const SampledFunction& f, double lambda);

/// ||f||_{L^q} / ( q^{1-1/p} * ||f||_{W^{1/p,p}} ): the normalized ratio
/// whose boundedness over q expresses the critical-space embedding.
double critical_embedding_ratio(const SampledFunction& f, double p, double q);

}  // namespace wspdiff
