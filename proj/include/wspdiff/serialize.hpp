/// @file serialize.hpp
/// @brief CSV/JSON serialization of functions, diffeomorphisms, norm
///        reports, paths, and experiment reports.
///
/// JSON shapes:
///   function / diffeo : {grid:{n,domain,span}, values:[...]}  (+ "type")
///   norm report       : {s, p, n, lp_part, parts:[{order,value}], total,
///                        meta:{grid, band_h, est_rel_err, mc_seed?, mc_stderr?}}
///   path              : {times:[...], maps:[diffeo,...]}
///   experiment report : {name, description, params, seed, tables, verdicts,
///                        conventions, all_pass, version}
///
/// Reports are deterministic: no timestamps, ordered keys, fixed float
/// formatting — identical inputs and seed produce byte-identical output.

#pragma once

#include <string>

#include "json.hpp"

#include "wspdiff/experiments.hpp"
#include "wspdiff/grid.hpp"
#include "wspdiff/norms.hpp"
#include "wspdiff/paths.hpp"

namespace wspdiff {

/// Ordered JSON so field order (and hence bytes) is reproducible.
using Json = nlohmann::ordered_json;

// ============================================================================
// CSV
// ============================================================================

/// Two columns "x,value" with %.17g round-trip formatting.
std::string to_csv(const SampledFunction& f);

/// Circle diffeo as "x,lift" CSV.
std::string to_csv(const CircleDiffeo& phi);

/// Interval diffeo as "x,value" CSV.
std::string to_csv(const IntervalDiffeo& phi);

/// Experiment report as sectioned CSV: each table preceded by "# <title>",
/// then a verdicts section.
std::string to_csv(const ExperimentReport& report);

/// Parse "x,value" CSV (optional header line) into a function on the given
/// domain.  The x column must match the implied uniform grid to 1e-9*span.
SampledFunction sampled_function_from_csv(const std::string& text, Domain domain,
                                          double span = 1.0);

// ============================================================================
// JSON
// ============================================================================

Json to_json(const Grid1D& grid);
Json to_json(const SampledFunction& f);
Json to_json(const CircleDiffeo& phi);
Json to_json(const IntervalDiffeo& phi);
Json to_json(const AnyDiffeo& phi);
Json to_json(const NormReport& report);
Json to_json(const DiffPath& path);
Json to_json(const ExperimentReport& report);

/// FNV-1a 64-bit hash of a JSON document's canonical dump, as 16 hex chars.
/// Used to reference large path objects from experiment reports by content.
std::string content_hash(const Json& j);

// ============================================================================
// Files
// ============================================================================

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace wspdiff
