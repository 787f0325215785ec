#pragma once

// Differential-power readout layer: power integration over flux spectra, the
// two-run differencing protocol with reference normalization, contrast
// ratios, calibration of the power-similarity slope, and the throughput
// proxy. Pure arithmetic; flux spectra round-trip as CSV (frequency,
// net_power).

#include <cmath>
#include <cstddef>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "wavehdc/errors.hpp"

namespace wavehdc {

// Per-band radiated power from a flux-box monitor. Net power is signed.
struct FluxReading {
  std::vector<double> frequencies;
  std::vector<double> net_power;
  std::string source_id;

  std::size_t size() const { return frequencies.size(); }

  void validate() const {
    if (frequencies.size() != net_power.size())
      throw DimensionMismatch("FluxReading: grid/value length mismatch");
  }
};

struct DifferentialPower {
  double raw = 0.0;         // solver units
  double normalized = 0.0;  // raw / p_ref
  double p_ref = 0.0;
};

struct ReadoutCalibration {
  double kappa = 0.0;
  double fit_residual = 0.0;
};

// Rectangle-rule sum with the bin width inferred from the (uniform) grid.
inline double integrate_power(const FluxReading& r) {
  r.validate();
  if (r.size() == 0) throw InvalidArgument("integrate_power: empty reading");
  if (r.size() == 1)
    throw InvalidArgument("integrate_power: cannot infer bin width from one bin");
  const double dnu = r.frequencies[1] - r.frequencies[0];
  if (!(dnu > 0.0)) throw InvalidArgument("integrate_power: grid must be increasing");
  double acc = 0.0;
  for (const double p : r.net_power) acc += p;
  return acc * dnu;
}

// Two-run protocol: raw = integral(query) - integral(baseline), normalized
// by the isolated-emitter reference power.
inline DifferentialPower delta_power(const FluxReading& query,
                                     const FluxReading& baseline, double p_ref) {
  query.validate();
  baseline.validate();
  if (query.frequencies != baseline.frequencies)
    throw DimensionMismatch("delta_power: frequency grids differ");
  if (!(p_ref > 0.0)) throw CalibrationError("delta_power: p_ref must be > 0");
  DifferentialPower d;
  d.raw = integrate_power(query) - integrate_power(baseline);
  d.p_ref = p_ref;
  d.normalized = d.raw / p_ref;
  return d;
}

// Match/non-match swing normalized by the summed baselines. Invariant under
// common positive rescaling of all four arguments.
inline double ccr(double delta_match, double delta_non, double baseline_match,
                  double baseline_non) {
  const double denom = baseline_match + baseline_non;
  if (!(denom > 0.0)) throw InvalidArgument("ccr: baseline sum must be > 0");
  return std::abs(delta_match - delta_non) / denom;
}

// Single-monitor contrast variant: |dP_match - dP_mis| / (2 |p_base|).
// Absolute values avoid the sign ambiguity of net flux under interference.
inline double ccr_surrogate(double delta_match, double delta_mis, double p_base) {
  if (p_base == 0.0) throw InvalidArgument("ccr_surrogate: zero baseline");
  return std::abs(delta_match - delta_mis) / (2.0 * std::abs(p_base));
}

// Through-origin least squares for dP = 2 kappa <x,y> over measured pairs.
inline ReadoutCalibration calibrate_kappa(
    const std::vector<std::pair<double, double>>& pairs) {
  if (pairs.size() < 2)
    throw CalibrationError("calibrate_kappa: need at least 2 pairs");
  bool varied = false;
  for (const auto& [inner, dp] : pairs)
    if (inner != pairs.front().first) varied = true;
  if (!varied)
    throw CalibrationError("calibrate_kappa: all inner products equal (degenerate fit)");
  double num = 0.0, den = 0.0;
  for (const auto& [inner, dp] : pairs) {
    num += inner * dp;
    den += inner * inner;
  }
  ReadoutCalibration cal;
  cal.kappa = num / (2.0 * den);
  double residual = 0.0;
  for (const auto& [inner, dp] : pairs) {
    const double e = dp - 2.0 * cal.kappa * inner;
    residual += e * e;
  }
  cal.fit_residual = std::sqrt(residual / static_cast<double>(pairs.size()));
  return cal;
}

// Expected differential power under per-tone phase jitter: the coherent
// cross term shrinks by the phasor mean e^{-sigma^2/2}.
inline double predict_delta_p(double kappa, double inner, double sigma_phi) {
  if (!(sigma_phi >= 0.0))
    throw InvalidArgument("predict_delta_p: sigma_phi must be >= 0");
  return 2.0 * kappa * std::exp(-sigma_phi * sigma_phi / 2.0) * inner;
}

// Equivalent-FLOPs proxy: one query is L parallel dot products of 2N-1 ops.
inline double equivalent_gflops(double library_size, double dim,
                                double latency_seconds) {
  if (!(library_size > 0.0 && dim > 0.0 && latency_seconds > 0.0))
    throw InvalidArgument("equivalent_gflops: all arguments must be > 0");
  return library_size * (2.0 * dim - 1.0) / (latency_seconds * 1e9);
}

// ---------------------------------------------------------------------------
// Flux spectrum CSV: "frequency,net_power" rows, '#' comments allowed.

inline void write_flux_csv(const FluxReading& r, const std::string& path) {
  r.validate();
  std::ofstream out(path);
  if (!out) throw IoError("write_flux_csv: cannot open " + path);
  out << "frequency,net_power\n";
  out.precision(17);
  for (std::size_t i = 0; i < r.size(); ++i)
    out << r.frequencies[i] << ',' << r.net_power[i] << '\n';
  if (!out) throw IoError("write_flux_csv: write failed for " + path);
}

inline FluxReading read_flux_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("read_flux_csv: cannot open " + path);
  FluxReading r;
  r.source_id = path;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (line.rfind("frequency", 0) == 0) continue;  // header
    std::istringstream ss(line);
    double f = 0, p = 0;
    char comma = 0;
    if (!(ss >> f >> comma >> p))
      throw IoError("read_flux_csv: malformed row in " + path + ": " + line);
    r.frequencies.push_back(f);
    r.net_power.push_back(p);
  }
  return r;
}

}  // namespace wavehdc
