#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <future>
#include <numbers>
#include <vector>

#include "wavehdc/fdtd.hpp"
#include "wavehdc/uwe.hpp"

using namespace wavehdc;
using namespace wavehdc::fdtd;

namespace {

std::vector<double> gaussian_pulse(double center, double width, double dt,
                                   std::size_t steps) {
  std::vector<double> s(steps);
  for (std::size_t n = 0; n < steps; ++n) {
    const double t = static_cast<double>(n + 1) * dt;
    const double arg = (t - center) / width;
    s[n] = std::exp(-arg * arg);
  }
  return s;
}

double step_dt(const SimulationConfig& cfg) {
  return cfg.courant / cfg.resolution / std::numbers::sqrt2;
}

double rms(const std::vector<double>& v) {
  double acc = 0;
  for (const double x : v) acc += x * x;
  return std::sqrt(acc / static_cast<double>(v.size()));
}

// Threshold-crossing arrival time: first sample exceeding frac * max |Ez|.
double arrival_time(const ProbeRecording& p, double frac) {
  double peak = 0;
  for (const double s : p.samples) peak = std::max(peak, std::abs(s));
  for (std::size_t n = 0; n < p.samples.size(); ++n)
    if (std::abs(p.samples[n]) > frac * peak)
      return static_cast<double>(n + 1) * p.dt;
  return -1.0;
}

}  // namespace

TEST(Config, ValidationRules) {
  SimulationConfig cfg{10, 10, 20, 1.0, 0.5, 5.0};
  EXPECT_NO_THROW(cfg.validate());
  cfg.courant = 0.6;  // beyond the pinned stability bound
  EXPECT_THROW(cfg.validate(), InvalidArgument);
  cfg.courant = 0.5;
  cfg.pml_thickness = 0.25;
  EXPECT_THROW(cfg.validate(), InvalidArgument);
  cfg.pml_thickness = 6.0;  // PML swallows the cell
  EXPECT_THROW(cfg.validate(), InvalidArgument);
}

TEST(Geometry, SourceInsidePmlRejected) {
  SimulationConfig cfg{10, 10, 20, 1.0, 0.5, 1.0};
  SourceSpec src;
  src.x = -4.8;  // inside the left PML slab
  src.y = 0;
  src.time_series = {1.0};
  EXPECT_THROW(run_simulation(cfg, {}, {src}, {}), InvalidArgument);
}

TEST(Run, NoSourcesMeansSilence) {
  SimulationConfig cfg{8, 8, 20, 1.0, 0.5, 4.0};
  Monitor probe{Monitor::Kind::PointReceiver, "p", 1.0, 1.0, {}};
  const auto res = run_simulation(cfg, {}, {}, {probe});
  for (const double s : res.probes[0].samples) EXPECT_EQ(s, 0.0);
}

TEST(Run, DeterministicRecordings) {
  SimulationConfig cfg{8, 8, 25, 1.0, 0.5, 6.0};
  SourceSpec src;
  src.x = -1.5;
  src.y = 0;
  src.time_series = gaussian_pulse(1.0, 0.3, step_dt(cfg), 300);
  Monitor probe{Monitor::Kind::PointReceiver, "p", 1.5, 0.5, {}};
  const auto a = run_simulation(cfg, {}, {src}, {probe});
  const auto b = run_simulation(cfg, {}, {src}, {probe});
  ASSERT_EQ(a.probes[0].samples.size(), b.probes[0].samples.size());
  for (std::size_t n = 0; n < a.probes[0].samples.size(); ++n)
    EXPECT_EQ(a.probes[0].samples[n], b.probes[0].samples[n]);
}

TEST(Run, PulseArrivalMatchesDistanceOverC) {
  // Two receivers on the source axis; the threshold-crossing time difference
  // removes the source turn-on offset, leaving distance / c.
  SimulationConfig cfg{26, 8, 25, 1.0, 0.5, 24.0};
  const double dt = step_dt(cfg);
  SourceSpec src;
  src.x = -11.0;
  src.y = 0;
  src.time_series = gaussian_pulse(1.5, 0.4, dt, static_cast<std::size_t>(4.0 / dt));
  Monitor near{Monitor::Kind::PointReceiver, "near", -7.0, 0, {}};
  Monitor far{Monitor::Kind::PointReceiver, "far", 3.0, 0, {}};
  const auto res = run_simulation(cfg, {}, {src}, {near, far});
  const double t_near = arrival_time(res.probes[0], 0.2);
  const double t_far = arrival_time(res.probes[1], 0.2);
  ASSERT_GT(t_near, 0.0);
  ASSERT_GT(t_far, 0.0);
  EXPECT_NEAR(t_far - t_near, 10.0, 0.02 * 10.0);
}

TEST(Run, ReciprocitySwapSourceAndReceiver) {
  SimulationConfig cfg{12, 10, 25, 1.0, 0.5, 10.0};
  const double dt = step_dt(cfg);
  const auto drive = gaussian_pulse(1.0, 0.3, dt, static_cast<std::size_t>(5.0 / dt));
  const double ax = -2.5, ay = -1.0, bx = 2.0, by = 1.5;
  SourceSpec s1;
  s1.x = ax;
  s1.y = ay;
  s1.time_series = drive;
  Monitor m1{Monitor::Kind::PointReceiver, "rx", bx, by, {}};
  SourceSpec s2;
  s2.x = bx;
  s2.y = by;
  s2.time_series = drive;
  Monitor m2{Monitor::Kind::PointReceiver, "rx", ax, ay, {}};
  const auto r1 = run_simulation(cfg, {}, {s1}, {m1});
  const auto r2 = run_simulation(cfg, {}, {s2}, {m2});
  std::vector<double> diff(r1.probes[0].samples.size());
  for (std::size_t n = 0; n < diff.size(); ++n)
    diff[n] = r1.probes[0].samples[n] - r2.probes[0].samples[n];
  EXPECT_LT(rms(diff) / rms(r1.probes[0].samples), 0.01);
}

TEST(Run, PmlReflectionBelowMinus40Db) {
  // Reference-run technique: same source and probe in a much larger domain;
  // the difference at the probe within the time gate is the boundary
  // reflection of the small domain.
  const double duration = 14.0;
  SimulationConfig small{10, 10, 25, 1.0, 0.5, duration};
  SimulationConfig large{34, 34, 25, 1.0, 0.5, duration};
  const double dt = step_dt(small);
  SourceSpec src;
  src.x = 0;
  src.y = 0;
  src.time_series = gaussian_pulse(1.2, 0.35, dt, static_cast<std::size_t>(5.0 / dt));
  Monitor probe{Monitor::Kind::PointReceiver, "p", 2.0, 0, {}};
  const auto rs = run_simulation(small, {}, {src}, {probe});
  const auto rl = run_simulation(large, {}, {src}, {probe});
  double incident = 0, reflected = 0;
  for (std::size_t n = 0; n < rs.probes[0].samples.size(); ++n) {
    const double inc = rl.probes[0].samples[n];
    const double dif = rs.probes[0].samples[n] - inc;
    incident += inc * inc;
    reflected += dif * dif;
  }
  const double db = 10.0 * std::log10(reflected / incident);
  EXPECT_LE(db, -40.0);
}

TEST(Run, PassivityEnergyNonIncreasingAfterSources) {
  SimulationConfig cfg{10, 10, 25, 1.0, 0.5, 30.0};
  cfg.energy_record_interval = 20;
  const double dt = step_dt(cfg);
  const double t0 = 3.0;
  SourceSpec src;
  src.x = 0.5;
  src.y = -0.5;
  src.time_series = gaussian_pulse(1.0, 0.3, dt, static_cast<std::size_t>(t0 / dt));
  const auto res = run_simulation(cfg, {}, {src}, {});
  double prev = -1.0;
  bool started = false;
  for (std::size_t k = 0; k < res.energy_samples.size(); ++k) {
    if (res.energy_times[k] < t0 + 0.5) continue;
    if (started) {
      EXPECT_LE(res.energy_samples[k], prev * (1.0 + 1e-6));
    }
    prev = res.energy_samples[k];
    started = true;
  }
  EXPECT_TRUE(started);
}

TEST(Run, StabilityLongRunAtCourantLimit) {
  SimulationConfig cfg{8, 8, 20, 1.0, 0.5, 100.0};
  cfg.energy_record_interval = 200;
  const double dt = step_dt(cfg);
  SourceSpec src;
  src.x = 0;
  src.y = 0;
  src.time_series = gaussian_pulse(1.0, 0.3, dt, static_cast<std::size_t>(2.0 / dt));
  const auto res = run_simulation(cfg, {}, {src}, {});
  for (const double e : res.energy_samples) EXPECT_TRUE(std::isfinite(e));
  EXPECT_LT(res.energy_samples.back(), res.energy_samples.front() * 10.0 + 1e30);
}

TEST(Flux, NestedBoxesAgreeOnSourcePower) {
  // Steady single-tone source; two nested flux boxes must report the same
  // integrated net power within 5%, and both positive.
  SimulationConfig cfg{12, 12, 25, 1.0, 0.5, 40.0};
  const double dt = step_dt(cfg);
  const double freq = 1.0;
  const auto steps = static_cast<std::size_t>(cfg.duration / dt) + 1;
  std::vector<double> drive(steps);
  for (std::size_t n = 0; n < steps; ++n) {
    const double t = static_cast<double>(n + 1) * dt;
    const double ramp = t < 3.0 ? 0.5 * (1.0 - std::cos(std::numbers::pi * t / 3.0)) : 1.0;
    drive[n] = ramp * std::sin(2.0 * std::numbers::pi * freq * t);
  }
  SourceSpec src;
  src.x = 0;
  src.y = 0;
  src.time_series = drive;
  Monitor inner{Monitor::Kind::FluxBox, "inner", 0, 0, {-0.6, -0.6, 0.6, 0.6}};
  Monitor outer{Monitor::Kind::FluxBox, "outer", 0, 0, {-1.6, -1.6, 1.6, 1.6}};
  const auto res = run_simulation(cfg, {}, {src}, {inner, outer});
  const auto band = monitor_band(freq, 0.4, 16);
  const double p_inner = integrate_power(net_flux_spectrum(res.flux_boxes[0], band));
  const double p_outer = integrate_power(net_flux_spectrum(res.flux_boxes[1], band));
  EXPECT_GT(p_inner, 0.0);
  EXPECT_GT(p_outer, 0.0);
  EXPECT_NEAR(p_outer / p_inner, 1.0, 0.05);
}

TEST(Flux, EmptyBoxSeesNoNetPower) {
  SimulationConfig cfg{14, 10, 25, 1.0, 0.5, 40.0};
  const double dt = step_dt(cfg);
  const double freq = 1.0;
  const auto steps = static_cast<std::size_t>(cfg.duration / dt) + 1;
  std::vector<double> drive(steps);
  for (std::size_t n = 0; n < steps; ++n) {
    const double t = static_cast<double>(n + 1) * dt;
    const double ramp = t < 3.0 ? 0.5 * (1.0 - std::cos(std::numbers::pi * t / 3.0)) : 1.0;
    drive[n] = ramp * std::sin(2.0 * std::numbers::pi * freq * t);
  }
  SourceSpec src;
  src.x = -3.0;
  src.y = 0;
  src.time_series = drive;
  Monitor around{Monitor::Kind::FluxBox, "src", 0, 0, {-3.6, -0.6, -2.4, 0.6}};
  Monitor empty{Monitor::Kind::FluxBox, "empty", 0, 0, {2.0, -0.6, 3.2, 0.6}};
  const auto res = run_simulation(cfg, {}, {src}, {around, empty});
  const auto band = monitor_band(freq, 0.4, 16);
  const double p_src = integrate_power(net_flux_spectrum(res.flux_boxes[0], band));
  const double p_empty = integrate_power(net_flux_spectrum(res.flux_boxes[1], band));
  EXPECT_GT(p_src, 0.0);
  EXPECT_LT(std::abs(p_empty), 0.01 * p_src);
}

TEST(Flux, IdenticalRunsGiveZeroDifferential) {
  // A query run with the query removed is the baseline run; determinism
  // makes the two-run differential exactly zero.
  SimulationConfig cfg{10, 10, 20, 1.0, 0.5, 20.0};
  const double dt = step_dt(cfg);
  const auto x = random_hypervector(3, 32);
  const auto comb = ToneComb::centered(32, 2.5, 0.01);
  const auto steps = static_cast<std::size_t>(cfg.duration / dt) + 1;
  SourceSpec l1;
  l1.x = 0;
  l1.y = 0;
  l1.time_series = evaluate_real(x, comb, dt, dt, steps);
  SourceSpec l2 = l1;
  l2.x = 2.5;
  Monitor box{Monitor::Kind::FluxBox, "L1", 0, 0, {-0.5, -0.5, 0.5, 0.5}};
  const auto band = monitor_band(2.5, 1.5, 16);
  const auto a = run_simulation(cfg, {}, {l1, l2}, {box});
  const auto b = run_simulation(cfg, {}, {l1, l2}, {box});
  const auto fa = net_flux_spectrum(a.flux_boxes[0], band);
  const auto fb = net_flux_spectrum(b.flux_boxes[0], band);
  const auto d = delta_power(fa, fb, 1.0);
  EXPECT_EQ(d.raw, 0.0);
  EXPECT_EQ(d.normalized, 0.0);
}

TEST(Flux, LossyBaffleCastsShadow) {
  // A lossy slab between source and receiver attenuates the through path.
  SimulationConfig cfg{16, 12, 25, 1.0, 0.5, 30.0};
  const double dt = step_dt(cfg);
  const auto x = random_hypervector(5, 32);
  const auto comb = ToneComb::centered(32, 2.5, 0.01);
  const auto steps = static_cast<std::size_t>(cfg.duration / dt) + 1;
  SourceSpec src;
  src.x = -3.0;
  src.y = 0;
  src.time_series = evaluate_real(x, comb, dt, dt, steps);
  Monitor probe{Monitor::Kind::PointReceiver, "rx", 3.0, 0, {}};
  MaterialRegion baffle{{-0.2, -2.0, 0.2, 2.0}, 1.0, 10.0};
  const auto open = run_simulation(cfg, {}, {src}, {probe});
  const auto blocked = run_simulation(cfg, {baffle}, {src}, {probe});
  // Compare steady-state RMS after first arrival.
  const auto tail = [&](const RunResult& r) {
    const std::size_t from = static_cast<std::size_t>(10.0 / dt);
    std::vector<double> t(r.probes[0].samples.begin() + from,
                          r.probes[0].samples.end());
    return rms(t);
  };
  const double reduction_db = 20.0 * std::log10(tail(open) / tail(blocked));
  EXPECT_GE(reduction_db, 15.0);
}
