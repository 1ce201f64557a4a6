/// @file experiments.hpp
/// @brief Registry of named numerical experiments with machine-checkable
///        verdicts.
///
/// Each experiment is a pure function of its parameter set: it builds the
/// relevant functions/paths, measures norms and lengths, tabulates the raw
/// numbers, and attaches pass/fail verdicts against fixed tolerances.  For a
/// fixed seed the report is deterministic down to the byte once serialized.

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace wspdiff {

// ============================================================================
// Report structures
// ============================================================================

/// A rectangular table of already-formatted numbers.
struct Table {
  std::string title;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

/// One machine-checked inequality or trend.
struct Verdict {
  std::string check;     ///< short identifier, e.g. "scaling-rel-err-max"
  double measured = 0.0;
  double threshold = 0.0;
  std::string relation;  ///< "<=", ">=", "<", ">" (measured REL threshold)
  bool pass = false;
};

/// Parameters handed to an experiment.  `params` carries the experiment's
/// named scalar knobs; unset keys fall back to per-experiment defaults.
struct ExperimentSpec {
  std::string name;
  std::map<std::string, double> params;
  std::uint64_t seed = 0x5EED;
  std::size_t grid_n = 2048;
  std::size_t time_steps = 128;
};

/// Full result of one experiment run.
struct ExperimentReport {
  std::string name;
  std::string description;
  std::map<std::string, double> params;  ///< resolved parameter values
  std::uint64_t seed = 0;
  std::vector<Table> tables;
  std::vector<Verdict> verdicts;
  std::vector<std::string> conventions;  ///< discretization choices that matter

  bool all_pass() const {
    for (const auto& v : verdicts)
      if (!v.pass) return false;
    return true;
  }
};

// ============================================================================
// Registry
// ============================================================================

using ExperimentFn = std::function<ExperimentReport(const ExperimentSpec&)>;

struct ExperimentInfo {
  std::string name;
  std::string description;
  ExperimentFn run;
};

/// All registered experiments, in canonical order.
const std::vector<ExperimentInfo>& experiment_registry();

/// Look up `spec.name` in the registry and run it.
/// Throws invalid_argument_error for unknown names.
ExperimentReport run_experiment(const ExperimentSpec& spec);

// ============================================================================
// Individual experiments
// ============================================================================
//
// Each takes the common spec; parameter keys it reads are listed.

/// Matched-grid rescaling identities: homogeneous seminorm ratios follow
/// lambda^{(s-1)-1/p} and L^p ratios lambda^{-1-1/p} across a grid of
/// (s, p, lambda); includes the lambda < 1 blow-up direction of the full
/// W^{1,p} norm.  Keys: none (fixed sweep).
ExperimentReport experiment_scaling(const ExperimentSpec& spec);

/// Square-root-slope correspondence: path length of a diffeomorphism path in
/// the homogeneous W^{1,q} metric equals the L^q arc length of its image on
/// the function-space sphere.  Keys: q (extra single value), pairs.
ExperimentReport experiment_lenells_isometry(const ExperimentSpec& spec);

/// Sphere-sector diameter: normalized affine paths between random sphere
/// points stay under 8q, while concentrated-spike targets certify a lower
/// bound > q approaching 2^{1/q} q as the spike height grows.  Keys: none.
ExperimentReport experiment_uq_diam(const ExperimentSpec& spec);

/// Closed-form region integrals of the two-slope homotopy field against
/// adaptive quadrature, plus saturation of the total homotopy length in the
/// slope parameter and an envelope-shape check.  Keys: sigma, p.
ExperimentReport experiment_affine_homotopy(const ExperimentSpec& spec);

/// Supercritical lower bound: every constructed path to a target with
/// prescribed max log-slope L has length >= L / C_emb, where C_emb is the
/// measured sup-embedding constant of a random field family.  Keys: none.
ExperimentReport experiment_supercritical_lb(const ExperimentSpec& spec);

/// Critical-exponent growth: sphere chord distances to spike targets exceed
/// q and grow with q, while the normalized critical embedding ratio stays in
/// a bounded band.  Keys: none.
ExperimentReport experiment_critical_growth(const ExperimentSpec& spec);

/// Displacement construction on the circle: translation cost, interval
/// displacement by conjugated flow, near-uniform construction cost in delta,
/// and the forced slope lower bound.  Keys: s, p, delta (single run override).
ExperimentReport experiment_displacement_s1(const ExperimentSpec& spec);

/// Radial lifts to the disc/ball: exact L^p weight formula, stability of
/// lift-to-profile norm ratios under grid refinement, Monte Carlo
/// reproducibility across seeds, and saturation of radial path costs.
/// Keys: none.
ExperimentReport experiment_radial_lift(const ExperimentSpec& spec);

/// Commutator shrinking: mollified corner maps approach the identity at the
/// closed-form rate while their commutator distance stays near pi/2.
/// Keys: gamma (slope floor).
ExperimentReport experiment_commutator_h1(const ExperimentSpec& spec);

/// Subcritical contraction: conjugation-rescaled path lengths contract by
/// exactly lambda^{(s-1)-1/p}, and the assembled geometric-series upper
/// bound decreases in lambda.  Keys: s, p, delta.
ExperimentReport experiment_subcritical_upper(const ExperimentSpec& spec);

}  // namespace wspdiff
