#pragma once

// Controlled corruption models: additive white Gaussian noise on waveforms
// and independent per-tone phase jitter on spectra. Injected levels are
// exact by construction and verified empirically in tests.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

#include "wavehdc/errors.hpp"
#include "wavehdc/rng.hpp"
#include "wavehdc/uwe.hpp"
#include "wavehdc/waveform.hpp"

namespace wavehdc {

struct JitterSpec {
  double sigma_phi = 0.0;  // RMS per-tone phase deviation, radians
  std::uint64_t seed = 0;
  // false: independent draw per tone. true: one common draw rotates every
  // tone (common-mode), which cancels in relative measurements.
  bool correlated = false;

  void validate() const {
    if (!(sigma_phi >= 0.0)) throw InvalidArgument("JitterSpec: sigma_phi must be >= 0");
  }
};

// Adds i.i.d. zero-mean Gaussian samples with variance set so that the
// signal's own mean power over the block divided by noise power equals
// 10^(snr_db/10). Deterministic per seed.
inline Waveform add_awgn(const Waveform& w, double snr_db, std::uint64_t seed) {
  const double p_sig = mean_power(w);
  if (!(p_sig > 0.0)) throw InvalidArgument("add_awgn: zero-power input");
  const double sigma = std::sqrt(p_sig / std::pow(10.0, snr_db / 10.0));
  Rng rng(seed);
  Waveform out = w;
  for (auto& s : out.samples) s += sigma * rng.gaussian();
  return out;
}

// Analytic variant: complex noise with the variance split across re/im.
inline AnalyticWaveform add_awgn(const AnalyticWaveform& w, double snr_db,
                                 std::uint64_t seed) {
  const double p_sig = mean_power(w);
  if (!(p_sig > 0.0)) throw InvalidArgument("add_awgn: zero-power input");
  const double sigma =
      std::sqrt(p_sig / std::pow(10.0, snr_db / 10.0) / 2.0);
  Rng rng(seed);
  AnalyticWaveform out = w;
  for (auto& s : out.samples)
    s += cplx(sigma * rng.gaussian(), sigma * rng.gaussian());
  return out;
}

// X~_k = X_k e^{j dphi_k}, dphi_k ~ N(0, sigma^2). Magnitudes unchanged.
inline Spectrum apply_phase_jitter(const Spectrum& s, const JitterSpec& spec) {
  spec.validate();
  Spectrum out = s;
  if (spec.sigma_phi == 0.0) return out;
  Rng rng(spec.seed);
  if (spec.correlated) {
    const double phi = spec.sigma_phi * rng.gaussian();
    const cplx rot = std::polar(1.0, phi);
    for (auto& c : out.coefficients) c *= rot;
    return out;
  }
  for (auto& c : out.coefficients)
    c *= std::polar(1.0, spec.sigma_phi * rng.gaussian());
  return out;
}

// Timing error maps to a frequency-dependent phase error.
inline double timing_to_phase(double f_k, double delta_tau) {
  return 2.0 * std::numbers::pi * f_k * delta_tau;
}

}  // namespace wavehdc
