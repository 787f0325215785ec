#pragma once

// Two-stage physical binding: time-domain mixing (product-to-sum) followed by
// low-pass isolation of the difference band and modulo-N spectral wrapping.
// Wrapping folds the linear-convolution spectrum of the mixed waveform back
// into N bins, which restores the circular-convolution structure of discrete
// binding; an inverse unitary DFT then recovers the bound vector (up to a
// positive scale that cosine and sign metrics ignore).

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <future>
#include <span>
#include <vector>

#include "wavehdc/comb.hpp"
#include "wavehdc/errors.hpp"
#include "wavehdc/fft.hpp"
#include "wavehdc/hdc.hpp"
#include "wavehdc/uwe.hpp"
#include "wavehdc/waveform.hpp"

namespace wavehdc {

enum class WrapBand { Difference, Sum };

// Frequency plan for the wrap stage: bin spacing, bin count, and the low-pass
// cutoff that separates the difference band from the sum band.
struct WrapPlan {
  double delta_f = 0.0;
  std::size_t dim = 0;
  double cutoff = 0.0;
  WrapBand band = WrapBand::Difference;

  // Cutoff centered in the guard band between the difference band's top,
  // (N-1)*delta_f, and the sum band's bottom, 2*f_min.
  static WrapPlan for_comb(const ToneComb& comb) {
    WrapPlan p;
    p.delta_f = comb.delta_f;
    p.dim = comb.dim;
    const double diff_top = difference_band_top(comb);
    const double sum_bottom = sum_band_bottom(comb);
    p.cutoff = 0.5 * (diff_top + sum_bottom);
    p.validate_for(comb);
    return p;
  }

  static double difference_band_top(const ToneComb& comb) {
    return (static_cast<double>(comb.tone_count()) - 1.0) * comb.delta_f;
  }

  static double sum_band_bottom(const ToneComb& comb) {
    return 2.0 * comb.min_frequency();
  }

  void validate_for(const ToneComb& comb) const {
    if (!(delta_f > 0.0)) throw InvalidArgument("WrapPlan: delta_f must be > 0");
    if (dim != comb.dim) throw DimensionMismatch("WrapPlan: dim differs from comb");
    const double diff_top = difference_band_top(comb);
    const double sum_bottom = sum_band_bottom(comb);
    if (!(cutoff > diff_top && cutoff < sum_bottom))
      throw InvalidArgument("WrapPlan: cutoff must lie strictly inside the guard band (" +
                            std::to_string(diff_top) + ", " + std::to_string(sum_bottom) + ")");
  }
};

// Dense FFT output of a sample block on a physical frequency axis.
struct BinDensity {
  std::vector<double> frequencies;  // strictly increasing
  std::vector<cplx> values;

  std::size_t size() const { return frequencies.size(); }

  void validate() const {
    if (frequencies.size() != values.size())
      throw DimensionMismatch("BinDensity: frequency/value length mismatch");
    for (std::size_t i = 1; i < frequencies.size(); ++i)
      if (!(frequencies[i] > frequencies[i - 1]))
        throw InvalidArgument("BinDensity: frequencies must be strictly increasing");
  }
};

// Stage 1: samplewise product. The spectrum of the result is the linear
// convolution of the operand spectra (sum and difference frequencies).
inline Waveform mix(const Waveform& a, const Waveform& b) {
  if (!a.same_grid(b)) throw DimensionMismatch("mix: sample grids differ");
  Waveform out = a;
  for (std::size_t n = 0; n < out.samples.size(); ++n) out.samples[n] *= b.samples[n];
  return out;
}

// FFT of the block with a two-sided physical frequency axis. Values are
// normalized by 1/M so a unit-amplitude tone shows +-0.5 at its two bins.
inline BinDensity dense_spectrum(const Waveform& w) {
  const std::size_t m = w.samples.size();
  std::vector<cplx> buf(m);
  for (std::size_t n = 0; n < m; ++n) buf[n] = cplx(w.samples[n], 0.0);
  auto bins = fft_forward(std::move(buf));
  const double df = w.sample_rate / static_cast<double>(m);
  const double inv_m = 1.0 / static_cast<double>(m);
  BinDensity d;
  d.frequencies.resize(m);
  d.values.resize(m);
  // Reorder to [-fs/2, fs/2): negative half first.
  const std::size_t neg = m / 2 + (m % 2);  // count of non-negative bins
  std::size_t out_i = 0;
  for (std::size_t i = neg; i < m; ++i, ++out_i) {
    d.frequencies[out_i] = (static_cast<double>(i) - static_cast<double>(m)) * df;
    d.values[out_i] = bins[i] * inv_m;
  }
  for (std::size_t i = 0; i < neg; ++i, ++out_i) {
    d.frequencies[out_i] = static_cast<double>(i) * df;
    d.values[out_i] = bins[i] * inv_m;
  }
  return d;
}

// Stage 2a: retain only the selected band (difference: |f| <= cutoff).
inline BinDensity baseband_select(const BinDensity& d, const WrapPlan& plan) {
  d.validate();
  BinDensity out;
  for (std::size_t i = 0; i < d.size(); ++i) {
    const bool keep = plan.band == WrapBand::Difference
                          ? std::abs(d.frequencies[i]) <= plan.cutoff
                          : std::abs(d.frequencies[i]) > plan.cutoff;
    if (keep) {
      out.frequencies.push_back(d.frequencies[i]);
      out.values.push_back(d.values[i]);
    }
  }
  return out;
}

// Stage 2b: the aliasing kernel. Every bin at frequency f accumulates into
// index round(f / delta_f) mod N (mathematical mod, half-way ties away from
// zero), folding the linear convolution into a circular one.
inline Spectrum spectral_wrap(const BinDensity& d, const WrapPlan& plan) {
  if (!(plan.delta_f > 0.0)) throw InvalidArgument("spectral_wrap: delta_f must be > 0");
  d.validate();
  Spectrum out;
  out.delta_f = plan.delta_f;
  out.coefficients.assign(plan.dim, cplx(0, 0));
  const auto n = static_cast<std::int64_t>(plan.dim);
  for (std::size_t i = 0; i < d.size(); ++i) {
    std::int64_t k = std::llround(d.frequencies[i] / plan.delta_f) % n;
    if (k < 0) k += n;
    out.coefficients[static_cast<std::size_t>(k)] += d.values[i];
  }
  return out;
}

struct Recovered {
  DenseVector dense;
  Hypervector binarized;
};

// Inverse unitary DFT of the wrapped spectrum; real part plus its sign copy.
inline Recovered recover_vector(const Spectrum& z_spec) {
  auto v = unitary_dft(std::vector<cplx>(z_spec.coefficients), DftDirection::Inverse);
  Recovered r;
  r.dense.components.resize(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r.dense.components[i] = v[i].real();
  r.binarized = binarize(r.dense);
  return r;
}

// Full pipeline on already-synthesized (possibly impaired) real waveforms.
inline Recovered bind_via_waveforms(const Waveform& wx, const Waveform& wy,
                                    const WrapPlan& plan) {
  const Waveform mixed = mix(wx, wy);
  const BinDensity spec = dense_spectrum(mixed);
  const BinDensity base = baseband_select(spec, plan);
  return recover_vector(spectral_wrap(base, plan));
}

// Ideal-sampling discrete pipeline: synthesize real waveforms on the comb,
// mix, isolate, wrap, recover.
inline Recovered discrete_bind(const Hypervector& x, const Hypervector& y,
                               const ToneComb& comb, double sample_rate,
                               const WrapPlan& plan) {
  plan.validate_for(comb);
  const Waveform wx = synthesize_real(x, comb, sample_rate);
  const Waveform wy = synthesize_real(y, comb, sample_rate);
  return bind_via_waveforms(wx, wy, plan);
}

inline Recovered discrete_bind(const Hypervector& x, const Hypervector& y,
                               const ToneComb& comb, double sample_rate) {
  return discrete_bind(x, y, comb, sample_rate, WrapPlan::for_comb(comb));
}

// Componentwise product of the estimate with a bipolar key (exact inverse of
// binding for bipolar keys), plus the binarized copy.
inline Recovered unbind_recover(const DenseVector& z_hat, const Hypervector& x) {
  detail::require_same_dim(z_hat, x, "unbind_recover");
  Recovered r;
  r.dense.components.resize(z_hat.dim());
  for (std::size_t i = 0; i < z_hat.dim(); ++i)
    r.dense.components[i] = z_hat[i] * x[i];
  r.binarized = binarize(r.dense);
  return r;
}

struct DelaySearchResult {
  std::int64_t best_delay_samples = 0;
  double best_delay_time = 0.0;
  double cosine = 0.0;
  double bit_accuracy = 0.0;
  Recovered recovered;
};

// Nominal-centered candidate grid: +-span samples in steps of one sample.
inline std::vector<std::int64_t> default_delay_candidates(double nominal_time,
                                                          double sample_rate,
                                                          std::int64_t span = 10) {
  const std::int64_t center = std::llround(nominal_time * sample_rate);
  std::vector<std::int64_t> out;
  for (std::int64_t d = center - span; d <= center + span; ++d)
    out.push_back(std::max<std::int64_t>(d, 0));
  return out;
}

// Windows both recordings at each candidate start, runs the mix-select-wrap
// pipeline, and returns the delay maximizing cosine similarity against the
// target (smallest delay wins ties). Candidates are evaluated concurrently.
inline DelaySearchResult delay_search(const Waveform& rx_a, const Waveform& rx_b,
                                      const WrapPlan& plan, const ToneComb& comb,
                                      const Hypervector& z_target,
                                      std::span<const std::int64_t> candidates) {
  if (candidates.empty()) throw InvalidArgument("delay_search: no candidates");
  if (!rx_a.same_grid(rx_b)) throw DimensionMismatch("delay_search: grids differ");
  const auto window =
      static_cast<std::size_t>(std::llround(comb.period() * rx_a.sample_rate));
  for (const auto c : candidates) {
    if (c < 0 || static_cast<std::size_t>(c) + window > rx_a.samples.size())
      throw SamplingError("delay_search: recording shorter than candidate + window");
  }

  const auto evaluate = [&](std::int64_t start) {
    Waveform wa, wb;
    wa.samples.assign(rx_a.samples.begin() + start,
                      rx_a.samples.begin() + start + static_cast<std::int64_t>(window));
    wb.samples.assign(rx_b.samples.begin() + start,
                      rx_b.samples.begin() + start + static_cast<std::int64_t>(window));
    wa.sample_rate = wb.sample_rate = rx_a.sample_rate;
    wa.period = wb.period = comb.period();
    Recovered rec = bind_via_waveforms(wa, wb, plan);
    const double cos = cosine_similarity(rec.dense, z_target);
    return std::pair<double, Recovered>(cos, std::move(rec));
  };

  std::vector<std::future<std::pair<double, Recovered>>> futures;
  futures.reserve(candidates.size());
  for (const auto c : candidates)
    futures.push_back(std::async(std::launch::async, evaluate, c));

  DelaySearchResult best;
  double best_cos = -2.0;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    auto [cos, rec] = futures[i].get();
    if (cos > best_cos) {
      best_cos = cos;
      best.best_delay_samples = candidates[i];
      best.recovered = std::move(rec);
    }
  }
  best.cosine = best_cos;
  best.best_delay_time = static_cast<double>(best.best_delay_samples) / rx_a.sample_rate;
  best.bit_accuracy = sign_accuracy(best.recovered.binarized, z_target);
  return best;
}

}  // namespace wavehdc
