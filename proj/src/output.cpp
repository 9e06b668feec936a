#include "qclone/output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <sstream>

#include <json.hpp>

#include "qclone/errors.hpp"

namespace qclone::io {

using nlohmann::json;

namespace {

std::string csv_line(std::initializer_list<std::string> cells) {
  std::string out;
  bool first = true;
  for (const auto& c : cells) {
    if (!first) out += ',';
    out += c;
    first = false;
  }
  out += '\n';
  return out;
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

json sample_json(const BoundSample& s) {
  return json{{"z", round12(s.z)}, {"n", s.n}, {"kind", std::string(to_string(s.kind))},
              {"value", round12(s.value)}};
}

}  // namespace

std::string format_real(double v) {
  if (v == 0.0) return "0";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%#.12g", v);
  return buf;
}

double round12(double v) {
  if (!std::isfinite(v) || v == 0.0) return v;
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return std::strtod(buf, nullptr);
}

void sort_samples(std::vector<BoundSample>& rows) {
  std::stable_sort(rows.begin(), rows.end(), [](const BoundSample& a, const BoundSample& b) {
    return a.z != b.z ? a.z < b.z : a.n < b.n;
  });
}

std::string bounds_csv(const std::vector<BoundSample>& rows) {
  std::string out = "z,n,kind,value\n";
  for (const auto& r : rows) {
    out += csv_line({format_real(r.z), std::to_string(r.n), std::string(to_string(r.kind)),
                     format_real(r.value)});
  }
  return out;
}

std::string bounds_json(const std::vector<BoundSample>& rows) {
  json doc{{"schema_version", kSchemaVersion}, {"rows", json::array()}};
  for (const auto& r : rows) doc["rows"].push_back(sample_json(r));
  return dump(doc);
}

std::string figure_csv(const std::vector<BoundSample>& rows) {
  std::string out = "z,n,x_min\n";
  for (const auto& r : rows) {
    out += csv_line({format_real(r.z), std::to_string(r.n), format_real(r.value)});
  }
  return out;
}

std::string figure_json(const std::vector<BoundSample>& rows) {
  json doc{{"schema_version", kSchemaVersion}, {"kind", "equal-simplified"}, {"rows", json::array()}};
  for (const auto& r : rows) {
    doc["rows"].push_back({{"z", round12(r.z)}, {"n", r.n}, {"x_min", round12(r.value)}});
  }
  return dump(doc);
}

std::string maxima_csv(const std::vector<MaximaRecord>& rows) {
  std::string out = "kind,n,z_star,value,method\n";
  for (const auto& r : rows) {
    out += csv_line({std::string(to_string(r.kind)), std::to_string(r.n), format_real(r.z_star),
                     format_real(r.value), r.method});
  }
  return out;
}

std::string maxima_json(const std::vector<MaximaRecord>& rows) {
  json doc{{"schema_version", kSchemaVersion}, {"maxima", json::array()}};
  for (const auto& r : rows) {
    doc["maxima"].push_back({{"kind", std::string(to_string(r.kind))},
                             {"n", r.n},
                             {"z_star", round12(r.z_star)},
                             {"value", round12(r.value)},
                             {"method", r.method}});
  }
  return dump(doc);
}

std::string machine_csv(const MachineResult& r, const Objective& objective) {
  std::string out =
      "z,n,d_in,d_x,objective,x1,x2,objective_value,bound_value,gap,starts,best_start,converged,"
      "max_constraint_drift\n";
  const auto& sc = r.pair.scenario;
  out += csv_line({format_real(sc.z), std::to_string(sc.n), std::to_string(sc.d_in),
                   std::to_string(sc.d_x), std::string(to_string(objective.kind)),
                   format_real(r.errors.x1), format_real(r.errors.x2),
                   format_real(r.objective_value), format_real(r.bound_value), format_real(r.gap),
                   std::to_string(r.starts), std::to_string(r.best_start),
                   r.converged ? "true" : "false", format_real(r.max_constraint_drift)});
  return out;
}

std::string machine_json(const MachineResult& r, const Objective& objective) {
  const auto& sc = r.pair.scenario;
  json obj{{"kind", std::string(to_string(objective.kind))}};
  if (objective.kind == Objective::Kind::weighted) {
    obj["w1"] = round12(objective.w1);
    obj["w2"] = round12(objective.w2);
  }
  json doc{{"schema_version", kSchemaVersion},
           {"scenario", {{"z", round12(sc.z)}, {"n", sc.n}, {"d_in", sc.d_in}, {"d_x", sc.d_x}}},
           {"objective", obj},
           {"errors", {{"x1", round12(r.errors.x1)}, {"x2", round12(r.errors.x2)}}},
           {"objective_value", round12(r.objective_value)},
           {"bound_value", round12(r.bound_value)},
           {"gap", round12(r.gap)},
           {"starts", r.starts},
           {"best_start", r.best_start},
           {"converged", r.converged},
           {"evaluations", r.evaluations},
           {"max_constraint_drift", round12(r.max_constraint_drift)}};
  return dump(doc);
}

std::string suite_csv(const verify::SuiteReport& report) {
  std::map<std::string, long> counts;
  for (const auto& v : report.violations) ++counts[v.check];
  std::string out = "check,max_residual,violations\n";
  for (const auto& [name, residual] : report.max_residuals) {
    out += csv_line({name, format_real(residual), std::to_string(counts[name])});
  }
  return out;
}

std::string suite_json(const verify::SuiteReport& report, const std::string& profile,
                       std::uint64_t seed) {
  json residuals = json::object();
  for (const auto& [name, residual] : report.max_residuals) residuals[name] = round12(residual);
  json violations = json::array();
  for (const auto& v : report.violations) {
    violations.push_back({{"check", v.check},
                          {"z", round12(v.z)},
                          {"n", v.n},
                          {"d_x", v.d_x},
                          {"seed", v.seed},
                          {"residual", round12(v.residual)}});
  }
  json doc{{"schema_version", kSchemaVersion},
           {"profile", profile},
           {"seed", seed},
           {"cases_run", report.cases_run},
           {"passed", report.passed},
           {"max_residuals", residuals},
           {"violation_count", report.violations.size()},
           {"violations", violations}};
  return dump(doc);
}

std::vector<BoundSample> parse_bounds_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "z,n,kind,value") {
    throw DomainError("bounds table must start with header z,n,kind,value");
  }
  std::vector<BoundSample> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream cells(line);
    std::string z, n, kind, value;
    if (!std::getline(cells, z, ',') || !std::getline(cells, n, ',') ||
        !std::getline(cells, kind, ',') || !std::getline(cells, value)) {
      throw DomainError("malformed bounds row: " + line);
    }
    rows.push_back({std::stod(z), std::stoi(n), std::stod(value), parse_bound_kind(kind)});
  }
  return rows;
}

}  // namespace qclone::io
