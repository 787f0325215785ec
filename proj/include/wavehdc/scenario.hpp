#pragma once

// Scenario files for the field engine: structured text with key = value
// sections ([grid], [material], [source], [monitor]). Sources reference
// waveform files (UWE1 binary or time,value CSV) and are resampled onto the
// engine's time step. Recordings export as CSV and UWE1 blocks; flux spectra
// export as CSV (frequency, net_power).

#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "wavehdc/errors.hpp"
#include "wavehdc/fdtd.hpp"
#include "wavehdc/waveform.hpp"

namespace wavehdc::fdtd {

struct ScenarioMonitorBand {
  double center = 0.0;
  double width = 0.0;
  std::size_t n_freq = 0;
};

struct Scenario {
  SimulationConfig config;
  std::vector<MaterialRegion> materials;
  std::vector<SourceSpec> sources;
  std::vector<Monitor> monitors;
  std::vector<ScenarioMonitorBand> bands;  // parallel to monitors (flux only)
};

namespace scenario_detail {

using Section = std::map<std::string, std::string>;

inline std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

inline double get_real(const Section& s, const std::string& key, double fallback,
                       bool required = false) {
  const auto it = s.find(key);
  if (it == s.end()) {
    if (required) throw ConfigError("scenario: missing key '" + key + "'");
    return fallback;
  }
  try {
    return std::stod(it->second);
  } catch (...) {
    throw ConfigError("scenario: key '" + key + "': not a number: " + it->second);
  }
}

inline std::string get_str(const Section& s, const std::string& key) {
  const auto it = s.find(key);
  if (it == s.end()) throw ConfigError("scenario: missing key '" + key + "'");
  return it->second;
}

// (time,value) CSV used for source waveforms and recording export.
inline Waveform read_timeseries_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("scenario: cannot open waveform " + path);
  Waveform w;
  std::string line;
  double t0 = 0, t1 = 0;
  std::size_t count = 0;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#' || line.rfind("time", 0) == 0) continue;
    std::istringstream ss(line);
    double t = 0, v = 0;
    char comma = 0;
    if (!(ss >> t >> comma >> v))
      throw IoError("scenario: malformed waveform row: " + line);
    if (count == 0) t0 = t;
    t1 = t;
    w.samples.push_back(v);
    ++count;
  }
  if (count < 2) throw IoError("scenario: waveform has fewer than 2 samples");
  w.sample_rate = static_cast<double>(count - 1) / (t1 - t0);
  w.period = static_cast<double>(count) / w.sample_rate;
  return w;
}

inline Waveform load_waveform(const std::string& path) {
  if (path.size() > 5 && path.substr(path.size() - 5) == ".uwe1")
    return read_uwe1(path);
  return read_timeseries_csv(path);
}

// Linear resampling onto the engine step; constant extrapolation is not
// needed because indices past the series simply stop driving.
inline std::vector<double> resample(const Waveform& w, double dt, std::size_t steps) {
  std::vector<double> out;
  out.reserve(steps);
  const double src_dt = 1.0 / w.sample_rate;
  for (std::size_t n = 0; n < steps; ++n) {
    const double t = static_cast<double>(n + 1) * dt;
    const double pos = t / src_dt;
    const auto lo = static_cast<std::size_t>(pos);
    if (lo + 1 >= w.samples.size()) break;
    const double frac = pos - static_cast<double>(lo);
    out.push_back(w.samples[lo] * (1.0 - frac) + w.samples[lo + 1] * frac);
  }
  return out;
}

}  // namespace scenario_detail

inline Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("scenario: cannot open " + path);
  using scenario_detail::Section;
  std::vector<std::pair<std::string, Section>> sections;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = scenario_detail::trim(line);
    if (line.empty()) continue;
    if (line.front() == '[' && line.back() == ']') {
      sections.emplace_back(line.substr(1, line.size() - 2), Section{});
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos || sections.empty())
      throw ConfigError("scenario: line " + std::to_string(line_no) +
                        ": expected [section] or key = value");
    const std::string key = scenario_detail::trim(line.substr(0, eq));
    const std::string value = scenario_detail::trim(line.substr(eq + 1));
    if (!sections.back().second.emplace(key, value).second)
      throw ConfigError("scenario: duplicate key '" + key + "' in [" +
                        sections.back().first + "]");
  }

  Scenario sc;
  bool have_grid = false;
  std::vector<std::string> source_paths;
  const std::filesystem::path base = std::filesystem::path(path).parent_path();
  for (const auto& [name, body] : sections) {
    if (name == "grid") {
      sc.config.cell_width = scenario_detail::get_real(body, "cell_width", 0, true);
      sc.config.cell_height = scenario_detail::get_real(body, "cell_height", 0, true);
      sc.config.resolution = scenario_detail::get_real(body, "resolution", 0, true);
      sc.config.pml_thickness = scenario_detail::get_real(body, "pml_thickness", 1.0);
      sc.config.courant = scenario_detail::get_real(body, "courant", 0.5);
      sc.config.duration = scenario_detail::get_real(body, "duration", 0, true);
      sc.config.energy_record_interval = static_cast<int>(
          scenario_detail::get_real(body, "energy_record_interval", 0));
      have_grid = true;
    } else if (name == "material") {
      MaterialRegion m;
      m.rect = {scenario_detail::get_real(body, "x0", 0, true),
                scenario_detail::get_real(body, "y0", 0, true),
                scenario_detail::get_real(body, "x1", 0, true),
                scenario_detail::get_real(body, "y1", 0, true)};
      m.epsilon = scenario_detail::get_real(body, "epsilon", 1.0);
      m.sigma_e = scenario_detail::get_real(body, "sigma_e", 0.0);
      sc.materials.push_back(m);
    } else if (name == "source") {
      SourceSpec s;
      s.x = scenario_detail::get_real(body, "x", 0, true);
      s.y = scenario_detail::get_real(body, "y", 0, true);
      s.start_time = scenario_detail::get_real(body, "start_time", 0.0);
      s.amplitude = scenario_detail::get_real(body, "amplitude", 1.0);
      std::filesystem::path wf(scenario_detail::get_str(body, "waveform"));
      if (wf.is_relative()) wf = base / wf;
      // Resampling needs the engine dt, known only after [grid]; loaded below.
      sc.sources.push_back(std::move(s));
      source_paths.push_back(wf.string());
    } else if (name == "monitor") {
      Monitor m;
      const std::string kind = scenario_detail::get_str(body, "kind");
      if (kind == "point" || kind == "point_receiver") {
        m.kind = Monitor::Kind::PointReceiver;
        m.x = scenario_detail::get_real(body, "x", 0, true);
        m.y = scenario_detail::get_real(body, "y", 0, true);
      } else if (kind == "flux_box") {
        m.kind = Monitor::Kind::FluxBox;
        m.box = {scenario_detail::get_real(body, "x0", 0, true),
                 scenario_detail::get_real(body, "y0", 0, true),
                 scenario_detail::get_real(body, "x1", 0, true),
                 scenario_detail::get_real(body, "y1", 0, true)};
      } else {
        throw ConfigError("scenario: monitor kind must be point or flux_box");
      }
      m.name = scenario_detail::get_str(body, "name");
      ScenarioMonitorBand band;
      if (m.kind == Monitor::Kind::FluxBox) {
        band.center = scenario_detail::get_real(body, "freq_center", 0, true);
        band.width = scenario_detail::get_real(body, "freq_width", 0, true);
        band.n_freq = static_cast<std::size_t>(
            scenario_detail::get_real(body, "n_freq", 64));
      }
      sc.monitors.push_back(std::move(m));
      sc.bands.push_back(band);
    } else {
      throw ConfigError("scenario: unknown section [" + name + "]");
    }
  }
  if (!have_grid) throw ConfigError("scenario: missing [grid] section");

  // Resample source waveforms onto the engine grid.
  const double dt =
      sc.config.courant / sc.config.resolution / std::numbers::sqrt2;
  const auto steps =
      static_cast<std::size_t>(std::ceil(sc.config.duration / dt)) + 1;
  for (std::size_t i = 0; i < sc.sources.size(); ++i) {
    const Waveform w = scenario_detail::load_waveform(source_paths[i]);
    sc.sources[i].time_series = scenario_detail::resample(w, dt, steps);
  }
  return sc;
}

// Runs a scenario and writes every monitor's output under outdir:
// point receivers as <name>.csv and <name>.uwe1, flux boxes as
// <name>_flux.csv.
inline RunResult run_scenario(const Scenario& sc, const std::string& outdir) {
  const RunResult res = run_simulation(sc.config, sc.materials, sc.sources, sc.monitors);
  std::filesystem::create_directories(outdir);
  const std::filesystem::path base(outdir);
  std::size_t probe_i = 0, flux_i = 0;
  for (std::size_t m = 0; m < sc.monitors.size(); ++m) {
    if (sc.monitors[m].kind == Monitor::Kind::PointReceiver) {
      const auto& rec = res.probes[probe_i++];
      Waveform w{rec.samples, 1.0 / rec.dt,
                 static_cast<double>(rec.samples.size()) * rec.dt};
      write_csv(w, (base / (rec.name + ".csv")).string());
      Uwe1Header h;
      h.sample_rate = w.sample_rate;
      write_uwe1(w, h, (base / (rec.name + ".uwe1")).string());
    } else {
      const auto& rec = res.flux_boxes[flux_i++];
      const auto& band = sc.bands[m];
      const auto freqs = monitor_band(band.center, band.width, band.n_freq);
      write_flux_csv(net_flux_spectrum(rec, freqs),
                     (base / (rec.name + "_flux.csv")).string());
    }
  }
  return res;
}

}  // namespace wavehdc::fdtd
