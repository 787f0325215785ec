#pragma once

// The unitary wave embedding: maps a bipolar N-vector through the unitary DFT
// onto an orthonormal tone comb, giving a waveform whose inner products equal
// the vector inner products. Synthesis and decoding run through an FFT fast
// path; both are exact on the snapped one-period sample grid because every
// tone completes a whole number of cycles between grid points.
//
// Conventions:
//  * samples are s[n] = sum_k X_k e^{j 2 pi f_k t_n}; the 1/sqrt(T) of the
//    orthonormal tones is absorbed by taking inner products as means over the
//    period (wave_inner), so <Ux, Uy> = <x, y> holds sample-exactly.
//  * real mode takes the real part (centered combs) or the cosine sum
//    (positive-half combs). Cross terms of real waveforms carry a factor 1/2
//    for strictly positive combs; decode compensates with a factor 2.
//  * exact real-mode decode needs the negative-frequency images on the bin
//    grid, i.e. 2*f_cen an integer multiple of delta_f (all default combs
//    satisfy this).

#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <vector>

#include "wavehdc/comb.hpp"
#include "wavehdc/errors.hpp"
#include "wavehdc/fft.hpp"
#include "wavehdc/hdc.hpp"
#include "wavehdc/waveform.hpp"

namespace wavehdc {

// Unitary-DFT coefficients placed on a tone comb. delta_f identifies the bin
// spacing; the comb that produced the spectrum is tracked by the caller.
struct Spectrum {
  std::vector<cplx> coefficients;
  double delta_f = 0.0;

  std::size_t dim() const { return coefficients.size(); }
};

inline bool is_hermitian(const Spectrum& s, double tol = 1e-12) {
  const std::size_t n = s.dim();
  for (std::size_t k = 0; k < n; ++k) {
    const cplx mirror = std::conj(s.coefficients[(n - k) % n]);
    if (std::abs(s.coefficients[k] - mirror) > tol) return false;
  }
  return true;
}

// X = Fx with the 1/sqrt(N) unitary normalization.
inline Spectrum spectrum_of(const Hypervector& x, const ToneComb& comb) {
  if (x.dim() != comb.dim)
    throw DimensionMismatch("spectrum_of: vector and comb dimensions differ");
  std::vector<double> v(x.dim());
  for (std::size_t i = 0; i < x.dim(); ++i) v[i] = x[i];
  return Spectrum{unitary_dft(v, DftDirection::Forward), comb.delta_f};
}

namespace detail {

// Whole number of samples covering one period; the effective rate is snapped
// so the grid divides T exactly.
inline std::size_t period_samples(const ToneComb& comb, double sample_rate) {
  if (!(sample_rate >= comb.min_sample_rate() - 1e-9))
    throw SamplingError("synthesize: sample rate below 4x highest comb tone");
  return static_cast<std::size_t>(std::llround(sample_rate * comb.period()));
}

// y[n] = sum_k coeff[k] e^{+j 2 pi k n / m} for n = 0..m-1 (zero-padded
// inverse transform without the 1/m).
inline std::vector<cplx> padded_tone_sum(std::span<const cplx> coeff, std::size_t m) {
  std::vector<cplx> padded(m, cplx(0, 0));
  for (std::size_t k = 0; k < coeff.size(); ++k) padded[k] = coeff[k];
  auto out = fft_inverse(std::move(padded));
  for (auto& v : out) v *= static_cast<double>(m);
  return out;
}

}  // namespace detail

// Analytic synthesis on a centered comb: s[n] = sum_k X_k e^{j2pi f_k t_n}.
inline AnalyticWaveform synthesize_analytic(const Spectrum& spec, const ToneComb& comb,
                                            double sample_rate) {
  if (comb.convention != CombConvention::Centered)
    throw InvalidArgument("synthesize_analytic: requires a centered comb");
  if (spec.dim() != comb.dim)
    throw DimensionMismatch("synthesize_analytic: spectrum/comb dimension mismatch");
  const std::size_t m = detail::period_samples(comb, sample_rate);
  auto base = detail::padded_tone_sum(spec.coefficients, m);
  // Tones sit at f0 + k*delta_f; the k part is the padded transform above,
  // the f0 part is a per-sample carrier ramp.
  const double f0 = comb.tone(0);
  const double t_step = comb.period() / static_cast<double>(m);
  AnalyticWaveform w;
  w.samples.resize(m);
  for (std::size_t n = 0; n < m; ++n) {
    const double phase =
        2.0 * std::numbers::pi * std::fmod(f0 * static_cast<double>(n) * t_step, 1.0);
    w.samples[n] = base[n] * cplx(std::cos(phase), std::sin(phase));
  }
  w.sample_rate = static_cast<double>(m) / comb.period();
  w.period = comb.period();
  return w;
}

inline AnalyticWaveform synthesize_analytic(const Hypervector& x, const ToneComb& comb,
                                            double sample_rate) {
  return synthesize_analytic(spectrum_of(x, comb), comb, sample_rate);
}

// Real synthesis. Centered: Re of the analytic waveform. Positive-half:
// s[n] = sum_{k=0}^{N/2} |X_k| cos(2pi k delta_f t_n + arg X_k).
inline Waveform synthesize_real(const Spectrum& spec, const ToneComb& comb,
                                double sample_rate) {
  if (spec.dim() != comb.dim)
    throw DimensionMismatch("synthesize_real: spectrum/comb dimension mismatch");
  Waveform w;
  if (comb.convention == CombConvention::Centered) {
    const AnalyticWaveform a = synthesize_analytic(spec, comb, sample_rate);
    w.samples.resize(a.samples.size());
    for (std::size_t n = 0; n < a.samples.size(); ++n)
      w.samples[n] = a.samples[n].real();
    w.sample_rate = a.sample_rate;
    w.period = a.period;
    return w;
  }
  const std::size_t m = detail::period_samples(comb, sample_rate);
  std::vector<cplx> half(spec.coefficients.begin(),
                         spec.coefficients.begin() +
                             static_cast<std::ptrdiff_t>(comb.tone_count()));
  auto base = detail::padded_tone_sum(half, m);
  w.samples.resize(m);
  for (std::size_t n = 0; n < m; ++n) w.samples[n] = base[n].real();
  w.sample_rate = static_cast<double>(m) / comb.period();
  w.period = comb.period();
  return w;
}

inline Waveform synthesize_real(const Hypervector& x, const ToneComb& comb,
                                double sample_rate) {
  return synthesize_real(spectrum_of(x, comb), comb, sample_rate);
}

// Evaluate the embedded waveform on an arbitrary time grid (used to drive
// field solvers whose time step is set by stability, not by the comb).
// Real-mode values; tone recurrence with periodic phase re-anchoring.
inline std::vector<double> evaluate_real(const Spectrum& spec, const ToneComb& comb,
                                         double t0, double dt, std::size_t count) {
  if (spec.dim() != comb.dim)
    throw DimensionMismatch("evaluate_real: spectrum/comb dimension mismatch");
  std::vector<double> out(count, 0.0);
  const std::size_t tones = comb.tone_count();
  for (std::size_t k = 0; k < tones; ++k) {
    const double fk = comb.tone(k);
    const cplx ck = spec.coefficients[k];
    const cplx step = std::polar(1.0, 2.0 * std::numbers::pi * fk * dt);
    cplx phasor = std::polar(1.0, 2.0 * std::numbers::pi * std::fmod(fk * t0, 1.0));
    for (std::size_t n = 0; n < count; ++n) {
      out[n] += (ck * phasor).real();
      phasor *= step;
      if ((n & 0xfff) == 0xfff) {
        const double t = t0 + static_cast<double>(n + 1) * dt;
        phasor = std::polar(1.0, 2.0 * std::numbers::pi * std::fmod(fk * t, 1.0));
      }
    }
  }
  return out;
}

inline std::vector<double> evaluate_real(const Hypervector& x, const ToneComb& comb,
                                         double t0, double dt, std::size_t count) {
  return evaluate_real(spectrum_of(x, comb), comb, t0, dt, count);
}

namespace detail {

// Project a waveform onto the comb tones over one period: returns
// proj_k = (1/M) sum_n w[n] e^{-j 2 pi f_k t_n} for each synthesized tone.
template <typename Sample>
std::vector<cplx> tone_projections(const BasicWaveform<Sample>& w,
                                   const ToneComb& comb) {
  const auto m = static_cast<std::size_t>(std::llround(w.sample_rate * comb.period()));
  if (w.samples.size() < m || m == 0)
    throw SamplingError("decode: window shorter than one symbol period");
  const double f0 =
      comb.convention == CombConvention::Centered ? comb.tone(0) : 0.0;
  const double t_step = 1.0 / w.sample_rate;
  std::vector<cplx> derotated(m);
  for (std::size_t n = 0; n < m; ++n) {
    const double phase =
        -2.0 * std::numbers::pi * std::fmod(f0 * static_cast<double>(n) * t_step, 1.0);
    derotated[n] = cplx(w.samples[n]) * cplx(std::cos(phase), std::sin(phase));
  }
  auto bins = fft_forward(std::move(derotated));
  const std::size_t tones = comb.tone_count();
  std::vector<cplx> proj(tones);
  // After derotation, tone k sits exactly on FFT bin k (delta_f * T = 1).
  for (std::size_t k = 0; k < tones; ++k)
    proj[k] = bins[k] / static_cast<double>(m);
  return proj;
}

}  // namespace detail

// Inverse of the embedding: project onto the comb tones, then inverse unitary
// DFT. Analytic centered input round-trips exactly; real input uses the x2
// compensation for the half-energy of real parts.
template <typename Sample>
DenseVector decode(const BasicWaveform<Sample>& w, const ToneComb& comb) {
  constexpr bool analytic = std::is_same_v<Sample, std::complex<double>>;
  auto proj = detail::tone_projections(w, comb);
  std::vector<cplx> coeff(comb.dim, cplx(0, 0));
  if (comb.convention == CombConvention::Centered) {
    for (std::size_t k = 0; k < comb.dim; ++k)
      coeff[k] = analytic ? proj[k] : 2.0 * proj[k];
  } else {
    coeff[0] = proj[0];
    for (std::size_t k = 1; k <= comb.dim / 2; ++k) {
      coeff[k] = 2.0 * proj[k];
      if (k < comb.dim / 2) coeff[comb.dim - k] = std::conj(coeff[k]);
    }
  }
  auto recovered = unitary_dft(std::move(coeff), DftDirection::Inverse);
  DenseVector out;
  out.components.resize(comb.dim);
  for (std::size_t i = 0; i < comb.dim; ++i) out.components[i] = recovered[i].real();
  return out;
}

// Samplewise sum; bundling is field superposition.
template <typename Sample>
BasicWaveform<Sample> superpose(std::span<const BasicWaveform<Sample>> waves) {
  if (waves.empty()) throw InvalidArgument("superpose: empty input");
  for (const auto& w : waves)
    if (!waves.front().same_grid(w))
      throw DimensionMismatch("superpose: sample grids differ");
  BasicWaveform<Sample> out = waves.front();
  for (std::size_t wi = 1; wi < waves.size(); ++wi)
    for (std::size_t n = 0; n < out.samples.size(); ++n)
      out.samples[n] += waves[wi].samples[n];
  return out;
}

template <typename Sample>
BasicWaveform<Sample> superpose(std::initializer_list<BasicWaveform<Sample>> waves) {
  return superpose(std::span<const BasicWaveform<Sample>>(waves.begin(), waves.size()));
}

// Circular time shift by round(tau * sample_rate) samples; norm preserved
// exactly. Non-integer delays round to the nearest sample.
template <typename Sample>
BasicWaveform<Sample> time_delay(const BasicWaveform<Sample>& w, double tau) {
  const auto n = static_cast<std::int64_t>(w.samples.size());
  if (n == 0) return w;
  std::int64_t shift = static_cast<std::int64_t>(std::llround(tau * w.sample_rate)) % n;
  if (shift < 0) shift += n;
  BasicWaveform<Sample> out = w;
  for (std::int64_t i = 0; i < n; ++i)
    out.samples[(i + shift) % n] = w.samples[i];
  return out;
}

// Interference energy ||U(x)+U(y)||^2 - ||U(x)||^2 - ||U(y)||^2, computed
// from synthesized analytic waveforms; equals 2<x,y> by the isometry. In the
// mean-over-period convention the mean power of a waveform IS the squared
// embedding norm (||U(x)||^2 = N for bipolar x).
inline double interference_energy(const Hypervector& x, const Hypervector& y,
                                  const ToneComb& comb, double sample_rate) {
  detail::require_same_dim(x, y, "interference_energy");
  const AnalyticWaveform sx = synthesize_analytic(x, comb, sample_rate);
  const AnalyticWaveform sy = synthesize_analytic(y, comb, sample_rate);
  const AnalyticWaveform sum = superpose({sx, sy});
  return mean_power(sum) - mean_power(sx) - mean_power(sy);
}

// Default comb for similarity checks: unit spacing with tones on the integer
// grid [N, 2N-1], so waveforms are exactly T-periodic, all tones are
// positive, and the sum band stays on the bin grid.
inline ToneComb default_centered_comb(std::size_t dim) {
  const auto n = static_cast<double>(dim);
  return ToneComb::centered(dim, 1.5 * n - 0.5, 1.0);
}

inline double interference_energy(const Hypervector& x, const Hypervector& y) {
  const ToneComb comb = default_centered_comb(x.dim());
  return interference_energy(x, y, comb, comb.min_sample_rate());
}

}  // namespace wavehdc
