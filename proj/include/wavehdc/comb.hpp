#pragma once

// Frequency planning for the wave embedding: a set of equally spaced tones
// with spacing delta_f = 1/T, orthonormal over the symbol period T.

#include <cmath>
#include <cstddef>
#include <string>

#include "wavehdc/errors.hpp"

namespace wavehdc {

enum class CombConvention {
  // f_k = f_cen + (k - (N-1)/2) * delta_f for k = 0..N-1; all tones positive.
  Centered,
  // Tones at k * delta_f for k = 0..N/2 (real cosine synthesis); N even.
  PositiveHalf,
};

inline const char* to_string(CombConvention c) {
  return c == CombConvention::Centered ? "centered" : "positive_half";
}

struct ToneComb {
  double f_cen = 0.0;
  double delta_f = 0.0;
  std::size_t dim = 0;
  CombConvention convention = CombConvention::Centered;

  static ToneComb centered(std::size_t dim, double f_cen, double delta_f) {
    ToneComb c{f_cen, delta_f, dim, CombConvention::Centered};
    c.validate();
    return c;
  }

  // Positive-half comb: spacing 2*f_cen/N, tones k*delta_f for k = 0..N/2,
  // so the occupied band is [0, f_cen] and T = N/(2*f_cen).
  static ToneComb positive_half(std::size_t dim, double f_cen) {
    ToneComb c{f_cen, 2.0 * f_cen / static_cast<double>(dim), dim,
               CombConvention::PositiveHalf};
    c.validate();
    return c;
  }

  void validate() const {
    if (dim < 2) throw InvalidArgument("ToneComb: dim must be >= 2");
    if (!(delta_f > 0.0)) throw InvalidArgument("ToneComb: delta_f must be > 0");
    if (convention == CombConvention::Centered) {
      if (!(min_frequency() > 0.0))
        throw InvalidArgument("ToneComb: centered comb must have all tones > 0");
    } else {
      if (dim % 2 != 0)
        throw InvalidArgument("ToneComb: positive-half comb requires even N");
    }
  }

  // Symbol period T = 1/delta_f.
  double period() const { return 1.0 / delta_f; }

  // Number of synthesized tones (N for centered, N/2+1 for positive-half).
  std::size_t tone_count() const {
    return convention == CombConvention::Centered ? dim : dim / 2 + 1;
  }

  double tone(std::size_t k) const {
    if (convention == CombConvention::Centered)
      return f_cen + (static_cast<double>(k) -
                      (static_cast<double>(dim) - 1.0) / 2.0) *
                         delta_f;
    return static_cast<double>(k) * delta_f;
  }

  double min_frequency() const { return tone(0); }
  double max_frequency() const { return tone(tone_count() - 1); }

  // Occupied bandwidth B = N * delta_f.
  double bandwidth() const { return static_cast<double>(dim) * delta_f; }

  // Anti-aliasing floor: mixing doubles the band, so synthesis requires at
  // least 4x the highest tone.
  double min_sample_rate() const { return 4.0 * max_frequency(); }

  bool operator==(const ToneComb&) const = default;
};

}  // namespace wavehdc
