#include "wspdiff/serialize.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <variant>

#include "wspdiff/common.hpp"

namespace wspdiff {

namespace {

/// %.17g: shortest fixed-width form that round-trips IEEE doubles.
std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string domain_tag(Domain d) {
  switch (d) {
    case Domain::kCircle: return "circle";
    case Domain::kInterval: return "interval";
    case Domain::kLine: return "line";
  }
  return "?";
}

std::string xy_csv(const Grid1D& grid, const std::vector<double>& v,
                   const char* value_name) {
  std::ostringstream out;
  out << "x," << value_name << "\n";
  for (std::size_t i = 0; i < v.size(); ++i) {
    out << fmt17(grid.node(i)) << "," << fmt17(v[i]) << "\n";
  }
  return out.str();
}

}  // namespace

// ============================================================================
// CSV
// ============================================================================

std::string to_csv(const SampledFunction& f) { return xy_csv(f.grid, f.values, "value"); }

std::string to_csv(const CircleDiffeo& phi) { return xy_csv(phi.grid(), phi.lift(), "lift"); }

std::string to_csv(const IntervalDiffeo& phi) {
  return xy_csv(phi.grid(), phi.values(), "value");
}

std::string to_csv(const ExperimentReport& report) {
  std::ostringstream out;
  out << "# experiment," << report.name << "\n";
  out << "# seed," << report.seed << "\n";
  for (const auto& [key, value] : report.params) {
    out << "# param," << key << "," << fmt17(value) << "\n";
  }
  for (const auto& table : report.tables) {
    out << "\n# table," << table.title << "\n";
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
      out << (c ? "," : "") << table.columns[c];
    }
    out << "\n";
    for (const auto& row : table.rows) {
      for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << row[c];
      out << "\n";
    }
  }
  out << "\n# table,verdicts\ncheck,measured,relation,threshold,pass\n";
  for (const auto& v : report.verdicts) {
    out << v.check << "," << fmt17(v.measured) << "," << v.relation << ","
        << fmt17(v.threshold) << "," << (v.pass ? "PASS" : "FAIL") << "\n";
  }
  return out.str();
}

SampledFunction sampled_function_from_csv(const std::string& text, Domain domain,
                                          double span) {
  std::vector<double> xs;
  std::vector<double> vals;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw invalid_argument_error("sampled_function_from_csv: expected two comma-separated columns");
    }
    char* endx = nullptr;
    char* endv = nullptr;
    const std::string sx = line.substr(0, comma);
    const std::string sv = line.substr(comma + 1);
    const double x = std::strtod(sx.c_str(), &endx);
    const double v = std::strtod(sv.c_str(), &endv);
    if (endx == sx.c_str() || endv == sv.c_str()) {
      // Non-numeric line (header): only acceptable before any data row.
      if (xs.empty()) continue;
      throw invalid_argument_error("sampled_function_from_csv: non-numeric row after data began");
    }
    xs.push_back(x);
    vals.push_back(v);
  }
  if (xs.size() < 8) {
    throw invalid_argument_error("sampled_function_from_csv: need at least 8 data rows");
  }
  Grid1D grid = domain == Domain::kCircle     ? Grid1D::circle(xs.size())
                : domain == Domain::kInterval ? Grid1D::interval(xs.size(), span)
                                              : Grid1D::line(xs.size(), span);
  const double tol = 1e-9 * span;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (std::abs(xs[i] - grid.node(i)) > tol) {
      throw invalid_argument_error(
          "sampled_function_from_csv: x column does not match a uniform " + domain_tag(domain) +
          " grid of size " + std::to_string(xs.size()) + " (row " + std::to_string(i) + ")");
    }
  }
  return SampledFunction::create(grid, std::move(vals));
}

// ============================================================================
// JSON
// ============================================================================

Json to_json(const Grid1D& grid) {
  Json j;
  j["n"] = grid.size();
  j["domain"] = domain_tag(grid.domain());
  j["span"] = grid.span();
  return j;
}

Json to_json(const SampledFunction& f) {
  Json j;
  j["type"] = "function";
  j["grid"] = to_json(f.grid);
  j["values"] = f.values;
  return j;
}

Json to_json(const CircleDiffeo& phi) {
  Json j;
  j["type"] = "circle-diffeo";
  j["grid"] = to_json(phi.grid());
  j["values"] = phi.lift();
  return j;
}

Json to_json(const IntervalDiffeo& phi) {
  Json j;
  j["type"] = "interval-diffeo";
  j["grid"] = to_json(phi.grid());
  j["values"] = phi.values();
  return j;
}

Json to_json(const AnyDiffeo& phi) {
  return std::visit([](const auto& d) { return to_json(d); }, phi);
}

Json to_json(const NormReport& report) {
  Json j;
  j["s"] = report.s;
  j["p"] = report.p;
  j["n"] = report.quad.grid_n;
  j["lp_part"] = report.lp_part;
  Json parts = Json::array();
  for (const auto& [order, value] : report.parts) {
    Json part;
    part["order"] = order;
    part["value"] = value;
    parts.push_back(part);
  }
  j["parts"] = parts;
  j["total"] = report.total;
  Json meta;
  meta["grid"] = report.quad.grid_n;
  meta["dim"] = report.dim;
  meta["band_h"] = report.quad.band_h;
  meta["est_rel_err"] = report.quad.est_rel_err;
  if (report.quad.p_equals_1) meta["p_equals_1"] = true;
  if (report.quad.mc_seed) meta["mc_seed"] = *report.quad.mc_seed;
  if (report.quad.mc_stderr) meta["mc_stderr"] = *report.quad.mc_stderr;
  if (!report.quad.conventions.empty()) meta["conventions"] = report.quad.conventions;
  j["meta"] = meta;
  return j;
}

Json to_json(const DiffPath& path) {
  Json j;
  Json times = Json::array();
  for (std::size_t k = 0; k < path.times.nodes(); ++k) times.push_back(path.times.t(k));
  j["times"] = times;
  Json maps = Json::array();
  for (const auto& m : path.maps) maps.push_back(to_json(m));
  j["maps"] = maps;
  return j;
}

Json to_json(const ExperimentReport& report) {
  Json j;
  j["name"] = report.name;
  j["description"] = report.description;
  j["params"] = report.params;  // std::map: keys already sorted
  j["seed"] = report.seed;
  Json tables = Json::array();
  for (const auto& t : report.tables) {
    Json jt;
    jt["title"] = t.title;
    jt["columns"] = t.columns;
    jt["rows"] = t.rows;
    tables.push_back(jt);
  }
  j["tables"] = tables;
  Json verdicts = Json::array();
  for (const auto& v : report.verdicts) {
    Json jv;
    jv["check"] = v.check;
    jv["measured"] = v.measured;
    jv["relation"] = v.relation;
    jv["threshold"] = v.threshold;
    jv["pass"] = v.pass;
    verdicts.push_back(jv);
  }
  j["verdicts"] = verdicts;
  j["conventions"] = report.conventions;
  j["all_pass"] = report.all_pass();
  j["version"] = "1.0.0";
  return j;
}

std::string content_hash(const Json& j) {
  const std::string dump = j.dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : dump) {
    h ^= static_cast<std::uint64_t>(c);
    h *= 0x100000001b3ULL;
  }
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016" PRIx64, h);
  return buf;
}

// ============================================================================
// Files
// ============================================================================

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw invalid_argument_error("read_text_file: cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw invalid_argument_error("write_text_file: cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw numerical_error("write_text_file: write to '" + path + "' failed");
}

}  // namespace wspdiff
