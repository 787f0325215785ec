#pragma once

// Uniformly sampled time series over a whole number of symbol periods, plus
// CSV and binary I/O. Inner products use the mean-over-period convention so
// they match the orthonormal-tone normalization.

#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "wavehdc/comb.hpp"
#include "wavehdc/errors.hpp"

namespace wavehdc {

template <typename Sample>
struct BasicWaveform {
  std::vector<Sample> samples;
  double sample_rate = 0.0;  // samples per unit time
  double period = 0.0;       // symbol period T

  std::size_t size() const { return samples.size(); }

  void check_grid() const {
    if (!(sample_rate > 0.0) || !(period > 0.0))
      throw InvalidArgument("Waveform: sample_rate and period must be > 0");
    const double expected = sample_rate * period;
    if (std::abs(expected - static_cast<double>(samples.size())) > 1.0 + 1e-9)
      throw InvalidArgument("Waveform: sample count does not match rate * period");
  }

  bool same_grid(const BasicWaveform& other) const {
    return samples.size() == other.samples.size() &&
           sample_rate == other.sample_rate && period == other.period;
  }
};

using Waveform = BasicWaveform<double>;
using AnalyticWaveform = BasicWaveform<std::complex<double>>;

// Mean power over the sample block.
inline double mean_power(const Waveform& w) {
  double acc = 0.0;
  for (const double s : w.samples) acc += s * s;
  return w.samples.empty() ? 0.0 : acc / static_cast<double>(w.samples.size());
}

inline double mean_power(const AnalyticWaveform& w) {
  double acc = 0.0;
  for (const auto& s : w.samples) acc += std::norm(s);
  return w.samples.empty() ? 0.0 : acc / static_cast<double>(w.samples.size());
}

// Time-normalized inner product <a, b> = mean_n a[n] * conj(b[n]).
inline std::complex<double> wave_inner(const AnalyticWaveform& a,
                                       const AnalyticWaveform& b) {
  if (!a.same_grid(b)) throw DimensionMismatch("wave_inner: sample grids differ");
  std::complex<double> acc(0.0, 0.0);
  for (std::size_t i = 0; i < a.samples.size(); ++i)
    acc += a.samples[i] * std::conj(b.samples[i]);
  return acc / static_cast<double>(a.samples.size());
}

inline double wave_inner(const Waveform& a, const Waveform& b) {
  if (!a.same_grid(b)) throw DimensionMismatch("wave_inner: sample grids differ");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.samples.size(); ++i)
    acc += a.samples[i] * b.samples[i];
  return acc / static_cast<double>(a.samples.size());
}

// ---------------------------------------------------------------------------
// CSV export: one "time,value" row per sample ("time,re,im" for analytic).

inline void write_csv(const Waveform& w, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("write_csv: cannot open " + path);
  out << "time,value\n";
  out.precision(17);
  for (std::size_t i = 0; i < w.samples.size(); ++i)
    out << static_cast<double>(i) / w.sample_rate << ',' << w.samples[i] << '\n';
  if (!out) throw IoError("write_csv: write failed for " + path);
}

inline void write_csv(const AnalyticWaveform& w, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("write_csv: cannot open " + path);
  out << "time,re,im\n";
  out.precision(17);
  for (std::size_t i = 0; i < w.samples.size(); ++i)
    out << static_cast<double>(i) / w.sample_rate << ',' << w.samples[i].real()
        << ',' << w.samples[i].imag() << '\n';
  if (!out) throw IoError("write_csv: write failed for " + path);
}

// ---------------------------------------------------------------------------
// Compact binary block "UWE1": little-endian, layout
//   char[4]  magic "UWE1"
//   u32      N (hypervector dimension; 0 for plain recordings)
//   u32      convention (0 centered, 1 positive-half)
//   f64      f_cen
//   f64      delta_f
//   f64      sample_rate
//   u64      sample count
//   f64[]    samples

namespace detail {

template <typename T>
void write_raw(std::ofstream& out, const T& v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
void read_raw(std::ifstream& in, T& v) {
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
}

}  // namespace detail

struct Uwe1Header {
  std::uint32_t dim = 0;
  CombConvention convention = CombConvention::Centered;
  double f_cen = 0.0;
  double delta_f = 0.0;
  double sample_rate = 0.0;
};

inline void write_uwe1(const Waveform& w, const Uwe1Header& h, const std::string& path) {
  static_assert(std::endian::native == std::endian::little,
                "UWE1 writer assumes a little-endian host");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("write_uwe1: cannot open " + path);
  out.write("UWE1", 4);
  detail::write_raw(out, h.dim);
  const std::uint32_t conv = h.convention == CombConvention::Centered ? 0u : 1u;
  detail::write_raw(out, conv);
  detail::write_raw(out, h.f_cen);
  detail::write_raw(out, h.delta_f);
  detail::write_raw(out, h.sample_rate);
  const std::uint64_t count = w.samples.size();
  detail::write_raw(out, count);
  out.write(reinterpret_cast<const char*>(w.samples.data()),
            static_cast<std::streamsize>(count * sizeof(double)));
  if (!out) throw IoError("write_uwe1: write failed for " + path);
}

inline Waveform read_uwe1(const std::string& path, Uwe1Header* header = nullptr) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("read_uwe1: cannot open " + path);
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, "UWE1", 4) != 0)
    throw IoError("read_uwe1: bad magic in " + path);
  Uwe1Header h;
  std::uint32_t conv = 0;
  detail::read_raw(in, h.dim);
  detail::read_raw(in, conv);
  h.convention = conv == 0 ? CombConvention::Centered : CombConvention::PositiveHalf;
  detail::read_raw(in, h.f_cen);
  detail::read_raw(in, h.delta_f);
  detail::read_raw(in, h.sample_rate);
  std::uint64_t count = 0;
  detail::read_raw(in, count);
  Waveform w;
  w.samples.resize(count);
  in.read(reinterpret_cast<char*>(w.samples.data()),
          static_cast<std::streamsize>(count * sizeof(double)));
  if (!in) throw IoError("read_uwe1: truncated file " + path);
  w.sample_rate = h.sample_rate;
  w.period = h.delta_f > 0.0 ? 1.0 / h.delta_f
                             : static_cast<double>(count) / h.sample_rate;
  if (header) *header = h;
  return w;
}

}  // namespace wavehdc
