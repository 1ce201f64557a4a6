// Acceptance gate: runs the ten registered experiments at their reference
// parameters (grid 2048, 128 time steps, seed 0x5EED) and prints one
// PASS/FAIL line per criterion with every measured verdict underneath.
// Exit status is nonzero if any criterion fails, including the documented
// expected failure of the assembled-bound stabilization check (criterion 10):
// the bound sequence 2C/(1 - lambda^{-0.3}) still changes by ~9% between
// lambda = 32 and 64, so a 2% stabilization window is not reachable at this
// exponent; the gate reports that honestly instead of hiding it.

#include <chrono>
#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "wspdiff/experiments.hpp"

namespace {

struct Criterion {
  int index;
  std::string experiment;
  std::string summary;
  double budget_seconds;
};

const std::vector<Criterion> kCriteria = {
    {1, "scaling", "matched-grid rescaling identities at 1e-10", 60},
    {2, "lenells-isometry", "pullback vs image path length at 1e-3", 300},
    {3, "uq-diam", "affine diameter bound <= 8q and spike distance > q", 300},
    {4, "affine-homotopy", "region integrals within 1% and length saturation", 600},
    {5, "supercritical-lb", "path lengths above max-log-slope / C_emb", 300},
    {6, "critical-growth", "chord growth in q and bounded embedding ratio", 300},
    {7, "displacement-s1", "translation cost 1/2 and interval displacement", 300},
    {8, "radial-lift", "lift norms: exact L^p, stable ratios, MC agreement", 900},
    {9, "commutator-h1", "corner maps shrink, commutator stays near pi/2", 60},
    {10, "subcritical-upper", "exact contraction and assembled upper bound", 300},
};

}  // namespace

int main() {
  int failures = 0;
  std::printf("acceptance gate: 10 criteria, reference grids, seed 0x5EED\n\n");
  for (const auto& crit : kCriteria) {
    wspdiff::ExperimentSpec spec;
    spec.name = crit.experiment;
    const auto start = std::chrono::steady_clock::now();
    bool pass = false;
    std::string note;
    std::vector<wspdiff::Verdict> verdicts;
    try {
      const wspdiff::ExperimentReport rep = run_experiment(spec);
      verdicts = rep.verdicts;
      pass = rep.all_pass();
    } catch (const std::exception& e) {
      note = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > crit.budget_seconds) {
      pass = false;
      note += (note.empty() ? "" : "; ") + std::string("over time budget");
    }
    if (!pass) ++failures;
    std::printf("CRITERION %2d [%s] %-17s %s (%.1fs)\n", crit.index, pass ? "PASS" : "FAIL",
                crit.experiment.c_str(), crit.summary.c_str(), secs);
    for (const auto& v : verdicts) {
      std::printf("    [%s] %s = %.6g %s %.6g\n", v.pass ? "pass" : "FAIL", v.check.c_str(),
                  v.measured, v.relation.c_str(), v.threshold);
    }
    if (!note.empty()) std::printf("    note: %s\n", note.c_str());
  }
  std::printf("\nSUMMARY: %d/10 criteria pass\n", 10 - failures);
  if (failures > 0) {
    std::printf(
        "note: two sub-checks are expected to fail at their stated windows:\n"
        "      - homotopy length plateau: the length approaches its limit like\n"
        "        lambda^(-1/4), so rung 64 still exceeds rung 16 by 15-25%% across\n"
        "        the delta grid; the 5%% window first closes near lambda ~ 1000;\n"
        "      - assembled-bound stabilization: 2C/(1 - lambda^(-0.3)) moves ~9%%\n"
        "        between lambda = 32 and 64, outside the 2%% window.\n"
        "      Both are rate limits of the quantities themselves, not of the\n"
        "      implementation; see README limitations for the analysis.\n");
  }
  return failures == 0 ? 0 : 1;
}
