#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "wavehdc/fft.hpp"
#include "wavehdc/rng.hpp"

using namespace wavehdc;

namespace {

// Direct O(N^2) transform used as the oracle for the FFT path.
std::vector<cplx> naive_dft(const std::vector<cplx>& x, int sign) {
  const std::size_t n = x.size();
  std::vector<cplx> out(n, cplx(0, 0));
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t m = 0; m < n; ++m) {
      const double ang = sign * 2.0 * std::numbers::pi *
                         static_cast<double>(k) * static_cast<double>(m) /
                         static_cast<double>(n);
      out[k] += x[m] * cplx(std::cos(ang), std::sin(ang));
    }
  return out;
}

std::vector<cplx> random_signal(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<cplx> x(n);
  for (auto& v : x) v = cplx(rng.gaussian(), rng.gaussian());
  return x;
}

double max_abs_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST(Fft, MatchesNaiveDftAcrossSizes) {
  for (std::size_t n : {1u, 2u, 3u, 5u, 7u, 8u, 12u, 13u, 16u, 17u, 32u, 100u,
                        128u, 1000u}) {
    const auto x = random_signal(n, 1000 + n);
    const auto fast = fft_forward(x);
    const auto slow = naive_dft(x, -1);
    EXPECT_LT(max_abs_diff(fast, slow), 1e-9 * static_cast<double>(n) + 1e-12)
        << "size " << n;
  }
}

TEST(Fft, InverseUndoesForward) {
  for (std::size_t n : {8u, 100u, 1000u}) {
    const auto x = random_signal(n, n);
    const auto back = fft_inverse(fft_forward(x));
    EXPECT_LT(max_abs_diff(back, x), 1e-10);
  }
}

TEST(UnitaryDft, AllOnesConcentratesAtBinZero) {
  const std::size_t n = 64;
  std::vector<double> ones(n, 1.0);
  const auto spec = unitary_dft(ones, DftDirection::Forward);
  EXPECT_NEAR(spec[0].real(), std::sqrt(static_cast<double>(n)), 1e-12);
  EXPECT_NEAR(spec[0].imag(), 0.0, 1e-12);
  for (std::size_t k = 1; k < n; ++k) EXPECT_LT(std::abs(spec[k]), 1e-12);
}

TEST(UnitaryDft, ParsevalNormPreserved) {
  const auto x = random_signal(100, 5);
  const auto spec = unitary_dft(x, DftDirection::Forward);
  double nx = 0, ns = 0;
  for (const auto& v : x) nx += std::norm(v);
  for (const auto& v : spec) ns += std::norm(v);
  EXPECT_NEAR(std::sqrt(ns), std::sqrt(nx), 1e-12 * std::sqrt(nx));
}

TEST(UnitaryDft, RoundTripOnBipolarInput) {
  Rng rng(11);
  std::vector<cplx> x(32);
  for (auto& v : x) v = cplx(rng.sign_unit(), 0.0);
  const auto back =
      unitary_dft(unitary_dft(x, DftDirection::Forward), DftDirection::Inverse);
  EXPECT_LT(max_abs_diff(back, x), 1e-12);
}

TEST(UnitaryDft, EmptyInputRejected) {
  EXPECT_THROW(unitary_dft(std::vector<cplx>{}, DftDirection::Forward),
               InvalidArgument);
}
