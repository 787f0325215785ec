#pragma once

// Self-contained complex FFT: iterative radix-2 for power-of-two sizes,
// Bluestein's chirp-z algorithm for everything else. Kept in-tree (rather
// than linking an FFT library) so results are bit-identical across runs and
// the library stays header-only. Verified in tests against a direct DFT.

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <vector>

#include "wavehdc/errors.hpp"

namespace wavehdc {

using cplx = std::complex<double>;

namespace detail {

inline bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

inline std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

// In-place iterative Cooley-Tukey, size must be a power of two.
// sign = -1 for the e^{-j2pi kn/N} kernel, +1 for its conjugate.
inline void fft_pow2(std::vector<cplx>& a, int sign) {
  const std::size_t n = a.size();
  if (n <= 1) return;
  // Bit-reversal permutation.
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = sign * 2.0 * std::numbers::pi / static_cast<double>(len);
    const cplx wlen(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      cplx w(1.0, 0.0);
      for (std::size_t k = 0; k < len / 2; ++k) {
        const cplx u = a[i + k];
        const cplx v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wlen;
      }
    }
  }
}

// Bluestein: arbitrary-size DFT via convolution with a chirp.
inline std::vector<cplx> fft_bluestein(const std::vector<cplx>& x, int sign) {
  const std::size_t n = x.size();
  const std::size_t m = next_pow2(2 * n - 1);
  std::vector<cplx> a(m, cplx(0, 0)), b(m, cplx(0, 0));
  std::vector<cplx> chirp(n);
  for (std::size_t k = 0; k < n; ++k) {
    // k^2 mod 2n keeps the phase argument small for large n.
    const std::size_t k2 = (k * k) % (2 * n);
    const double ang =
        sign * std::numbers::pi * static_cast<double>(k2) / static_cast<double>(n);
    chirp[k] = cplx(std::cos(ang), std::sin(ang));
    a[k] = x[k] * chirp[k];
    b[k] = std::conj(chirp[k]);
    if (k != 0) b[m - k] = std::conj(chirp[k]);
  }
  fft_pow2(a, -1);
  fft_pow2(b, -1);
  for (std::size_t i = 0; i < m; ++i) a[i] *= b[i];
  fft_pow2(a, +1);
  std::vector<cplx> out(n);
  const double inv_m = 1.0 / static_cast<double>(m);
  for (std::size_t k = 0; k < n; ++k) out[k] = a[k] * inv_m * chirp[k];
  return out;
}

}  // namespace detail

// Unnormalized forward transform: X_k = sum_n x_n e^{-j2pi kn/N}.
inline std::vector<cplx> fft_forward(std::vector<cplx> x) {
  if (detail::is_pow2(x.size())) {
    detail::fft_pow2(x, -1);
    return x;
  }
  return detail::fft_bluestein(x, -1);
}

// Inverse transform with 1/N: x_n = (1/N) sum_k X_k e^{+j2pi kn/N}.
inline std::vector<cplx> fft_inverse(std::vector<cplx> x) {
  const double inv_n = 1.0 / static_cast<double>(x.size());
  std::vector<cplx> out;
  if (detail::is_pow2(x.size())) {
    detail::fft_pow2(x, +1);
    out = std::move(x);
  } else {
    out = detail::fft_bluestein(x, +1);
  }
  for (auto& v : out) v *= inv_n;
  return out;
}

enum class DftDirection { Forward, Inverse };

// Unitary DFT with 1/sqrt(N) normalization in both directions, so that
// forward-then-inverse is the identity and norms are preserved.
inline std::vector<cplx> unitary_dft(std::vector<cplx> v, DftDirection dir) {
  if (v.empty()) throw InvalidArgument("unitary_dft: empty input");
  const double scale = 1.0 / std::sqrt(static_cast<double>(v.size()));
  std::vector<cplx> out;
  if (dir == DftDirection::Forward) {
    out = fft_forward(std::move(v));
  } else {
    const std::size_t n = v.size();
    out = fft_inverse(std::move(v));
    const auto nn = static_cast<double>(n);
    for (auto& c : out) c *= nn;  // undo 1/N, unitary scale applied below
  }
  for (auto& c : out) c *= scale;
  return out;
}

inline std::vector<cplx> unitary_dft(const std::vector<double>& v, DftDirection dir) {
  std::vector<cplx> c(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) c[i] = cplx(v[i], 0.0);
  return unitary_dft(std::move(c), dir);
}

}  // namespace wavehdc
