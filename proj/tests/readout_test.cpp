#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <numbers>
#include <vector>

#include "wavehdc/impairments.hpp"
#include "wavehdc/readout.hpp"
#include "wavehdc/uwe.hpp"

using namespace wavehdc;

namespace {

// n-bin center grid over [lo, lo + width).
FluxReading grid_reading(double lo, double width, std::size_t n, double value) {
  FluxReading r;
  const double dnu = width / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    r.frequencies.push_back(lo + (static_cast<double>(i) + 0.5) * dnu);
    r.net_power.push_back(value);
  }
  return r;
}

}  // namespace

TEST(IntegratePower, FlatSpectrumOverUnitBand) {
  EXPECT_NEAR(integrate_power(grid_reading(0.0, 1.0, 50, 1.0)), 1.0, 1e-12);
}

TEST(IntegratePower, ZeroSpectrum) {
  EXPECT_EQ(integrate_power(grid_reading(0.0, 1.0, 10, 0.0)), 0.0);
}

TEST(IntegratePower, RefinementStability) {
  // Smooth analytic spectrum: halving the bin count changes the rectangle-
  // rule integral by under 1%.
  auto sample = [](std::size_t n) {
    FluxReading r = grid_reading(0.0, 1.0, n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      r.net_power[i] = 1.0 + std::cos(std::numbers::pi * r.frequencies[i]);
    return integrate_power(r);
  };
  const double fine = sample(64), coarse = sample(32);
  EXPECT_LT(std::abs(fine - coarse) / std::abs(fine), 0.01);
}

TEST(IntegratePower, EmptyOrSingleBinRejected) {
  FluxReading r;
  EXPECT_THROW(integrate_power(r), InvalidArgument);
  r.frequencies = {0.5};
  r.net_power = {1.0};
  EXPECT_THROW(integrate_power(r), InvalidArgument);
}

TEST(DeltaPower, IdenticalRunsGiveZero) {
  const auto r = grid_reading(0.0, 1.0, 20, 0.3);
  const auto d = delta_power(r, r, 2.0);
  EXPECT_EQ(d.raw, 0.0);
  EXPECT_EQ(d.normalized, 0.0);
}

TEST(DeltaPower, NormalizationAndSign) {
  auto base = grid_reading(0.0, 1.0, 10, 1.0);
  auto query = grid_reading(0.0, 1.0, 10, 1.0);
  query.net_power[3] += 8.8e-4;  // adds 8.8e-5 to the integral
  const auto d = delta_power(query, base, 1.0);
  EXPECT_NEAR(d.normalized, 8.8e-5, 1e-12);
  // Swapping roles negates exactly.
  const auto swapped = delta_power(base, query, 1.0);
  EXPECT_DOUBLE_EQ(swapped.raw, -d.raw);
}

TEST(DeltaPower, GridAndReferenceValidated) {
  const auto a = grid_reading(0.0, 1.0, 10, 1.0);
  const auto b = grid_reading(0.0, 2.0, 10, 1.0);
  EXPECT_THROW(delta_power(a, b, 1.0), DimensionMismatch);
  EXPECT_THROW(delta_power(a, a, 0.0), CalibrationError);
  EXPECT_THROW(delta_power(a, a, -1.0), CalibrationError);
}

TEST(Ccr, PublishedCoupledArithmetic) {
  const double c = ccr(+8.8e-5, -8.6e-5, 1.0, 1.0);
  // 1.74e-4 / 2.0 = 8.7e-5, exact to two significant figures.
  EXPECT_NEAR(c, 8.7e-5, 0.05e-5);
}

TEST(Ccr, EqualDeltasGiveZero) { EXPECT_EQ(ccr(0.5, 0.5, 1.0, 1.0), 0.0); }

TEST(Ccr, ScaleInvariance) {
  const double base = ccr(3e-4, -2e-4, 1.1, 0.9);
  for (double c : {0.5, 2.0, 1e3}) {
    EXPECT_NEAR(ccr(c * 3e-4, c * -2e-4, c * 1.1, c * 0.9), base, 1e-15);
  }
}

TEST(Ccr, NonpositiveDenominatorRejected) {
  EXPECT_THROW(ccr(1.0, 0.0, -1.0, 0.5), InvalidArgument);
  EXPECT_THROW(ccr(1.0, 0.0, 0.0, 0.0), InvalidArgument);
}

TEST(CcrSurrogate, PublishedUnisolatedValue) {
  const double c = ccr_surrogate(-2.061490e-1, -7.022430e-2, -2.342078e-3);
  EXPECT_NEAR(c, 2.90e1, 0.01 * 2.90e1);
}

TEST(CcrSurrogate, PublishedIsolatedValue) {
  const double c = ccr_surrogate(-3.614158e-2, -1.843098e-2, -1.266211e-6);
  EXPECT_NEAR(c, 6.99e3, 0.01 * 6.99e3);
}

TEST(CcrSurrogate, EqualDeltasAndZeroBaseline) {
  EXPECT_EQ(ccr_surrogate(0.4, 0.4, 1.0), 0.0);
  EXPECT_THROW(ccr_surrogate(1.0, 0.5, 0.0), InvalidArgument);
}

TEST(CalibrateKappa, ExactRecoveryOnNoiselessData) {
  std::vector<std::pair<double, double>> pairs;
  for (int i = -10; i <= 10; ++i) {
    const double inner = static_cast<double>(i) * 5.0;
    pairs.emplace_back(inner, 2.0 * 0.37 * inner);
  }
  const auto cal = calibrate_kappa(pairs);
  EXPECT_NEAR(cal.kappa, 0.37, 1e-12);
  EXPECT_NEAR(cal.fit_residual, 0.0, 1e-12);
}

TEST(CalibrateKappa, NoisyRecoveryWithinFivePercent) {
  Rng rng(123);
  const double planted = 1.7;
  std::vector<std::pair<double, double>> pairs;
  for (int i = 0; i < 100; ++i) {
    const double inner = (rng.uniform01() * 2.0 - 1.0) * 100.0;
    pairs.emplace_back(inner, 2.0 * planted * inner + 5.0 * rng.gaussian());
  }
  const auto cal = calibrate_kappa(pairs);
  EXPECT_NEAR(cal.kappa, planted, 0.05 * planted);
  EXPECT_GT(cal.fit_residual, 0.0);
}

TEST(CalibrateKappa, DegenerateInputsRejected) {
  std::vector<std::pair<double, double>> one{{1.0, 2.0}};
  EXPECT_THROW(calibrate_kappa(one), CalibrationError);
  std::vector<std::pair<double, double>> flat{{3.0, 1.0}, {3.0, 2.0}, {3.0, 0.5}};
  EXPECT_THROW(calibrate_kappa(flat), CalibrationError);
}

TEST(CalibrateThenPredict, RoundTripOnBridgeData) {
  std::vector<std::pair<double, double>> pairs;
  const double planted = 0.81;
  for (int i = 1; i <= 20; ++i) {
    const double inner = static_cast<double>(i * i) - 200.0;
    pairs.emplace_back(inner, 2.0 * planted * inner);
  }
  const auto cal = calibrate_kappa(pairs);
  for (const auto& [inner, dp] : pairs) {
    const double pred = predict_delta_p(cal.kappa, inner, 0.0);
    EXPECT_NEAR(pred, dp, 1e-9 * std::max(1.0, std::abs(dp)));
  }
}

TEST(PredictDeltaP, ClosedForm) {
  EXPECT_DOUBLE_EQ(predict_delta_p(1.0, 1.0, 0.0), 2.0);
  EXPECT_NEAR(predict_delta_p(1.0, 1.0, 1.0), 2.0 * std::exp(-0.5), 1e-12);
  EXPECT_THROW(predict_delta_p(1.0, 1.0, -0.1), InvalidArgument);
}

TEST(PredictDeltaP, JitteredInterferenceMatchesPhasorMean) {
  // Monte Carlo: jittering one operand's spectrum shrinks the interference
  // energy by e^{-sigma^2/2} on average.
  const double sigma = 0.5;
  const auto x = random_hypervector(31, 1000);
  const auto comb = default_centered_comb(1000);
  const double fs = comb.min_sample_rate();
  const auto sx = synthesize_analytic(x, comb, fs);
  const double clean = 2.0 * dot(x, x);
  double acc = 0;
  const int draws = 200;
  for (int d = 0; d < draws; ++d) {
    const auto jittered = apply_phase_jitter(
        spectrum_of(x, comb), JitterSpec{sigma, 5000 + static_cast<std::uint64_t>(d), false});
    const auto sj = synthesize_analytic(jittered, comb, fs);
    const auto sum = superpose({sx, sj});
    acc += mean_power(sum) - mean_power(sx) - mean_power(sj);
  }
  const double ratio = (acc / draws) / clean;
  const double expected = std::exp(-sigma * sigma / 2.0);
  EXPECT_NEAR(ratio, expected, 0.1 * expected);
}

TEST(EquivalentGflops, PublishedFormula) {
  EXPECT_NEAR(equivalent_gflops(1000, 1000, 1.0), 1.999e-3, 1e-15);
  EXPECT_DOUBLE_EQ(equivalent_gflops(1, 1, 1e-9), 1.0);
  EXPECT_DOUBLE_EQ(equivalent_gflops(2, 64, 0.5), 2.0 * equivalent_gflops(1, 64, 0.5));
  EXPECT_THROW(equivalent_gflops(0, 1, 1), InvalidArgument);
}

TEST(FluxCsv, RoundTrip) {
  const auto r = grid_reading(0.0, 1.0, 8, 0.25);
  const std::string path = ::testing::TempDir() + "flux.csv";
  write_flux_csv(r, path);
  const auto back = read_flux_csv(path);
  ASSERT_EQ(back.size(), r.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    EXPECT_DOUBLE_EQ(back.frequencies[i], r.frequencies[i]);
    EXPECT_DOUBLE_EQ(back.net_power[i], r.net_power[i]);
  }
  std::remove(path.c_str());
}

TEST(BridgeLinearity, NormalizedDeltaLinearInCosine) {
  // 21 query vectors with cosines spanning [-1, 1]; interference energy per
  // query is exactly linear in the inner product (correlation ~ 1).
  const std::size_t n = 1000;
  const auto x = random_hypervector(41, n);
  const auto comb = default_centered_comb(n);
  const double fs = comb.min_sample_rate();
  const auto sx = synthesize_analytic(x, comb, fs);
  std::vector<double> cos_axis, de_axis;
  for (int step = 0; step <= 20; ++step) {
    auto q = x;
    const std::size_t flips = static_cast<std::size_t>(step) * n / 20;
    for (std::size_t i = 0; i < flips; ++i) q[i] = -q[i];
    const auto sq = synthesize_analytic(q, comb, fs);
    const auto sum = superpose({sx, sq});
    cos_axis.push_back(cosine_similarity(x, q));
    de_axis.push_back(mean_power(sum) - mean_power(sx) - mean_power(sq));
  }
  // Pearson correlation of (cos, dE).
  double mc = 0, md = 0;
  for (std::size_t i = 0; i < cos_axis.size(); ++i) {
    mc += cos_axis[i];
    md += de_axis[i];
  }
  mc /= static_cast<double>(cos_axis.size());
  md /= static_cast<double>(de_axis.size());
  double num = 0, vc = 0, vd = 0;
  for (std::size_t i = 0; i < cos_axis.size(); ++i) {
    num += (cos_axis[i] - mc) * (de_axis[i] - md);
    vc += (cos_axis[i] - mc) * (cos_axis[i] - mc);
    vd += (de_axis[i] - md) * (de_axis[i] - md);
  }
  EXPECT_GE(num / std::sqrt(vc * vd), 0.999);
}
