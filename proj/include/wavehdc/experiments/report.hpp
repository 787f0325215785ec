#pragma once

// Machine-readable experiment reports: JSON with stable field ordering, or
// CSV with one row per sweep point and a comment header carrying the full
// effective configuration and seeds. Re-running with identical config and
// seeds reproduces every metric byte-identically (wall_time excepted).

#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "wavehdc/errors.hpp"
#include "wavehdc/experiments/config.hpp"

namespace wavehdc::experiments {

using json = nlohmann::ordered_json;

struct ExperimentReport {
  std::string name;
  std::string anchor;  // what the experiment reproduces
  json parameters = json::object();
  std::vector<std::uint64_t> seeds;
  std::vector<json> rows;
  bool acceptance_pass = true;
  std::string acceptance_detail;
  double wall_time_seconds = 0.0;
};

inline json parameters_json(const Config& cfg) {
  json out = json::object();
  for (const auto& [key, value] : cfg.entries()) {
    json v;
    std::visit([&](const auto& x) { v = x; }, value);
    out[key] = json::object({{"value", v}, {"defaulted", cfg.was_defaulted(key)}});
  }
  return out;
}

inline json to_json(const ExperimentReport& r) {
  json out = json::object();
  out["experiment"] = r.name;
  out["anchor"] = r.anchor;
  out["parameters"] = r.parameters;
  out["seeds"] = r.seeds;
  out["rows"] = r.rows;
  out["acceptance"] =
      json::object({{"pass", r.acceptance_pass}, {"detail", r.acceptance_detail}});
  out["wall_time_seconds"] = r.wall_time_seconds;
  return out;
}

inline void write_json_report(const ExperimentReport& r, std::ostream& out) {
  out << to_json(r).dump(2) << '\n';
}

inline void write_json_report(const ExperimentReport& r, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("write_json_report: cannot open " + path);
  write_json_report(r, out);
  if (!out) throw IoError("write_json_report: write failed for " + path);
}

inline void write_csv_report(const ExperimentReport& r, std::ostream& out) {
  out << "# experiment = " << r.name << '\n';
  out << "# anchor = " << r.anchor << '\n';
  for (const auto& [key, value] : r.parameters.items())
    out << "# " << key << " = " << value["value"].dump()
        << (value["defaulted"].get<bool>() ? "  (default)" : "") << '\n';
  out << "# seeds =";
  for (const auto s : r.seeds) out << ' ' << s;
  out << '\n';
  if (r.rows.empty()) return;
  bool first = true;
  for (const auto& [key, value] : r.rows.front().items()) {
    out << (first ? "" : ",") << key;
    first = false;
  }
  out << '\n';
  for (const auto& row : r.rows) {
    first = true;
    for (const auto& [key, value] : row.items()) {
      out << (first ? "" : ",");
      if (value.is_string())
        out << value.get<std::string>();
      else
        out << value.dump();
      first = false;
    }
    out << '\n';
  }
}

inline void write_csv_report(const ExperimentReport& r, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("write_csv_report: cannot open " + path);
  write_csv_report(r, out);
  if (!out) throw IoError("write_csv_report: write failed for " + path);
}

}  // namespace wavehdc::experiments
