#include <cmath>
#include <string>
#include <vector>

#include "doctest.h"
#include "wspdiff/common.hpp"
#include "wspdiff/experiments.hpp"
#include "wspdiff/grid.hpp"
#include "wspdiff/norms.hpp"
#include "wspdiff/serialize.hpp"

using namespace wspdiff;

TEST_CASE("registry exposes the ten experiments in canonical order") {
  const auto& reg = experiment_registry();
  REQUIRE(reg.size() == 10);
  const std::vector<std::string> expected = {
      "scaling",          "lenells-isometry", "uq-diam",         "affine-homotopy",
      "supercritical-lb", "critical-growth",  "displacement-s1", "radial-lift",
      "commutator-h1",    "subcritical-upper"};
  for (std::size_t i = 0; i < expected.size(); ++i) {
    CHECK(reg[i].name == expected[i]);
    CHECK(!reg[i].description.empty());
  }
}

TEST_CASE("unknown experiments are rejected with the available names") {
  ExperimentSpec spec;
  spec.name = "does-not-exist";
  CHECK_THROWS_AS(run_experiment(spec), invalid_argument_error);
}

TEST_CASE("reports are byte-identical for identical spec and seed") {
  ExperimentSpec spec;
  spec.name = "lenells-isometry";
  spec.grid_n = 256;
  spec.time_steps = 8;
  spec.seed = 0x5EED;
  spec.params["pairs"] = 2;
  const std::string a = to_json(run_experiment(spec)).dump();
  const std::string b = to_json(run_experiment(spec)).dump();
  CHECK(a == b);
  CHECK(a.find("timestamp") == std::string::npos);
  CHECK(a.find("\"version\"") != std::string::npos);

  // A different seed changes the random endpoints and hence the report.
  spec.seed = 0xC0FFEE;
  CHECK(to_json(run_experiment(spec)).dump() != a);
}

TEST_CASE("sampled functions survive a CSV round trip") {
  const Grid1D g = Grid1D::interval(65, 2.0);
  const SampledFunction f =
      SampledFunction::sample(g, [](double x) { return std::sin(1.7 * x) - 0.3 * x; });
  const std::string csv = to_csv(f);
  const SampledFunction back = sampled_function_from_csv(csv, Domain::kInterval, 2.0);
  REQUIRE(back.grid.size() == g.size());
  CHECK(back.grid == f.grid);
  for (std::size_t i = 0; i < g.size(); ++i) {
    CHECK(back.values[i] == doctest::Approx(f.values[i]).epsilon(1e-15));
  }

  CHECK_THROWS_AS(
      sampled_function_from_csv("x,value\n0,1\n0.3,2\n0.35,3\n0.9,4\n1,5\n1.1,6\n1.2,7\n1.3,8\n",
                                Domain::kInterval, 1.3),
      invalid_argument_error);
}

TEST_CASE("norm reports serialize with their quadrature metadata") {
  const Grid1D g = Grid1D::circle(128);
  const SampledFunction f =
      SampledFunction::sample(g, [](double x) { return std::sin(6.283185307179586 * x); });
  const NormReport r = wsp_norm(f, SobolevIndex::create(1.5, 2.0));
  const Json j = to_json(r);
  CHECK(j["s"].get<double>() == doctest::Approx(1.5));
  CHECK(j["p"].get<double>() == doctest::Approx(2.0));
  CHECK(j["total"].get<double>() == doctest::Approx(r.total));
  CHECK(j.contains("parts"));
  CHECK(j["meta"].contains("grid"));
}

TEST_CASE("content hashes distinguish payloads and are stable") {
  Json a = {{"x", 1.0}, {"y", "z"}};
  Json b = {{"x", 1.0}, {"y", "z"}};
  Json c = {{"x", 1.0000001}, {"y", "z"}};
  CHECK(content_hash(a) == content_hash(b));
  CHECK(content_hash(a) != content_hash(c));
  CHECK(content_hash(a).size() == 16);
}

TEST_CASE("report CSV names every table and verdict") {
  ExperimentSpec spec;
  spec.name = "scaling";
  spec.grid_n = 129;
  const ExperimentReport rep = run_experiment(spec);
  CHECK(rep.all_pass());
  const std::string csv = to_csv(rep);
  CHECK(csv.find("# experiment,scaling") != std::string::npos);
  CHECK(csv.find("matched-grid scaling ratios") != std::string::npos);
  CHECK(csv.find("PASS") != std::string::npos);
  for (const auto& v : rep.verdicts) {
    CHECK(csv.find(v.check) != std::string::npos);
  }
}
