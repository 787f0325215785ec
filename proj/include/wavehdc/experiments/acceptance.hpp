#pragma once

// The acceptance suite: twelve numbered criteria covering the embedding
// isometry, the power-similarity bridge, binding (ideal and propagated),
// permutation equivalence, robustness sweeps, readout arithmetic, the
// isolation surrogate, and field-engine health. Every tolerance is pinned
// here; each criterion reports one pass/fail line.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "wavehdc/binding.hpp"
#include "wavehdc/experiments/runners.hpp"
#include "wavehdc/fdtd.hpp"
#include "wavehdc/impairments.hpp"
#include "wavehdc/uwe.hpp"

namespace wavehdc::experiments {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

namespace acceptance_detail {

template <typename Fn>
CriterionResult timed(int id, const std::string& name, Fn&& fn) {
  detail::Timer timer;
  CriterionResult r;
  r.id = id;
  r.name = name;
  std::ostringstream detail_out;
  r.pass = fn(detail_out);
  r.detail = detail_out.str();
  r.seconds = timer.seconds();
  return r;
}

}  // namespace acceptance_detail

// 1. Embedding isometry: |<Ux,Uy> - <x,y>| <= 1e-9 * N.
inline CriterionResult criterion_isometry() {
  return acceptance_detail::timed(1, "isometry", [](std::ostream& out) {
    double worst = 0.0;
    for (const std::size_t n : {32u, 256u, 1024u}) {
      const auto comb = default_centered_comb(n);
      const double fs = comb.min_sample_rate();
      for (int t = 0; t < 100; ++t) {
        const auto x = random_hypervector(derive_seed(1000 + n, 2 * t), n);
        const auto y = random_hypervector(derive_seed(1000 + n, 2 * t + 1), n);
        const auto sx = synthesize_analytic(x, comb, fs);
        const auto sy = synthesize_analytic(y, comb, fs);
        const double err =
            std::abs(wave_inner(sx, sy).real() - dot(x, y)) / static_cast<double>(n);
        worst = std::max(worst, err);
        if (err > 1e-9) {
          out << "N=" << n << " pair " << t << ": error " << err << " * N";
          return false;
        }
      }
    }
    out << "worst |<Ux,Uy> - <x,y>| = " << worst << " * N (bound 1e-9 * N)";
    return true;
  });
}

// 2. Power-similarity bridge: interference energy = 2 <x,y> within 1e-6
//    relative at N=1000, plus linearity correlation >= 0.999.
inline CriterionResult criterion_bridge() {
  return acceptance_detail::timed(2, "power-similarity bridge", [](std::ostream& out) {
    const std::size_t n = 1000;
    const auto comb = default_centered_comb(n);
    const double fs = comb.min_sample_rate();
    double worst_rel = 0.0;
    for (int t = 0; t < 100; ++t) {
      const auto x = random_hypervector(derive_seed(2100, 2 * t), n);
      const auto y = random_hypervector(derive_seed(2100, 2 * t + 1), n);
      const double expect = 2.0 * dot(x, y);
      const double got = interference_energy(x, y, comb, fs);
      const double rel =
          std::abs(got - expect) / std::max(1.0, std::abs(expect));
      worst_rel = std::max(worst_rel, rel);
      if (rel > 1e-6) {
        out << "pair " << t << ": relative error " << rel;
        return false;
      }
    }
    const auto rep = run_experiment("bridge-linearity", "");
    const double corr = rep.rows.back()["correlation"].get<double>();
    out << "worst relative error " << worst_rel << "; linearity correlation "
        << corr;
    return corr >= 0.999;
  });
}

// 3. Discrete binding: N in {32, 128}, 50 seeds, cosine >= 0.999 and exact
//    signs in every run; exhaustive N=4 equality over all 256 pairs.
inline CriterionResult criterion_discrete_binding() {
  return acceptance_detail::timed(3, "discrete binding", [](std::ostream& out) {
    for (const char* dim : {"32", "128"}) {
      const auto rep = run_experiment(
          "discrete-bind", std::string("dim = ") + dim + "\ntrials = 50\n");
      if (!rep.acceptance_pass) {
        out << "N=" << dim << ": " << rep.acceptance_detail;
        return false;
      }
    }
    const auto comb = ToneComb::centered(4, 2.5, 0.01);
    const double fs = comb.min_sample_rate();
    for (int bx = 0; bx < 16; ++bx)
      for (int by = 0; by < 16; ++by) {
        std::vector<std::int8_t> cx(4), cy(4);
        for (int i = 0; i < 4; ++i) {
          cx[i] = (bx >> i) & 1 ? 1 : -1;
          cy[i] = (by >> i) & 1 ? 1 : -1;
        }
        const Hypervector x(std::move(cx)), y(std::move(cy));
        if (!(discrete_bind(x, y, comb, fs).binarized == bind(x, y))) {
          out << "N=4 exhaustive mismatch at pair (" << bx << ", " << by << ")";
          return false;
        }
      }
    out << "N in {32, 128} x 50 seeds all >= 0.999 with exact signs; N=4 oracle "
           "exact on all 256 pairs";
    return true;
  });
}

// 4. Field-propagated binding: best-delay cosine >= 0.99 with 100% bits.
inline CriterionResult criterion_fdtd_binding() {
  return acceptance_detail::timed(4, "fdtd binding", [](std::ostream& out) {
    const auto rep = run_experiment("fdtd-bind", "");
    const auto& row = rep.rows.front();
    out << "cosine " << row["cosine"].get<double>() << ", bit accuracy "
        << row["bit_accuracy"].get<double>() << "%";
    return rep.acceptance_pass;
  });
}

// 5. Permutation equivalence: MSE <= 1e-3 and both cosines within +-0.1.
inline CriterionResult criterion_permutation() {
  return acceptance_detail::timed(5, "permutation equivalence", [](std::ostream& out) {
    const auto rep = run_experiment("permutation", "");
    const auto& row = rep.rows.front();
    out << "mse " << row["mse"].get<double>() << ", discrete cos "
        << row["cos_discrete"].get<double>() << ", waveform cos "
        << row["cos_waveform"].get<double>();
    return rep.acceptance_pass;
  });
}

namespace acceptance_detail {

inline const json* find_row(const ExperimentReport& rep, const std::string& kind,
                            double level) {
  for (const auto& row : rep.rows)
    if (row.contains("kind") && row["kind"] == kind &&
        row["level"].get<double>() == level)
      return &row;
  return nullptr;
}

}  // namespace acceptance_detail

// 6 + 7 share one noise-sweep run; cached by the caller.
inline CriterionResult criterion_awgn(const ExperimentReport& rep) {
  return acceptance_detail::timed(6, "awgn robustness", [&](std::ostream& out) {
    const std::vector<std::pair<double, double>> need{{20.0, 0.999}, {10.0, 0.998},
                                                      {0.0, 0.99}};
    bool ok = true;
    for (const auto& [snr, bound] : need) {
      const json* row = acceptance_detail::find_row(rep, "awgn", snr);
      if (!row) {
        out << "missing " << snr << " dB row";
        return false;
      }
      const double cos = (*row)["mean_cos_unbound"].get<double>();
      const double acc = (*row)["mean_sign_accuracy"].get<double>();
      ok = ok && cos >= bound && acc == 100.0;
      out << snr << "dB: cos " << cos << " acc " << acc << "%; ";
    }
    return ok;
  });
}

inline CriterionResult criterion_bit_flip(const ExperimentReport& rep) {
  return acceptance_detail::timed(7, "bit-flip robustness", [&](std::ostream& out) {
    const std::vector<std::tuple<double, double, double>> need{
        {1.0, 0.95, 97.7}, {10.0, 0.71, 85.3}, {20.0, 0.28, 64.1}};
    bool ok = true;
    for (const auto& [pct, cos_ref, acc_ref] : need) {
      const json* row = acceptance_detail::find_row(rep, "bitflip", pct);
      if (!row) {
        out << "missing " << pct << "% row";
        return false;
      }
      const double cos = (*row)["mean_cos_unbound"].get<double>();
      const double acc = (*row)["mean_sign_accuracy"].get<double>();
      ok = ok && std::abs(cos - cos_ref) <= 0.1 && std::abs(acc - acc_ref) <= 6.0;
      out << pct << "%: cos " << cos << " acc " << acc << "%; ";
    }
    return ok;
  });
}

// 8. Jitter tolerance bands.
inline CriterionResult criterion_jitter() {
  return acceptance_detail::timed(8, "jitter tolerance", [](std::ostream& out) {
    const auto rep = run_experiment("jitter-sweep", "");
    for (const auto& row : rep.rows)
      out << "sigma " << row["sigma_phi"].get<double>() << ": cos "
          << row["cosine"].get<double>() << " acc "
          << row["sign_accuracy"].get<double>() << "%; ";
    return rep.acceptance_pass;
  });
}

// 9. Jitter attenuation law: jittered/clean interference energy matches
//    e^{-sigma^2/2} within 10% at sigma in {0.2, 0.5, 1.0}, 200 draws each.
inline CriterionResult criterion_attenuation_law() {
  return acceptance_detail::timed(9, "jitter attenuation law", [](std::ostream& out) {
    const std::size_t n = 1000;
    const auto comb = default_centered_comb(n);
    const double fs = comb.min_sample_rate();
    const auto x = random_hypervector(901, n);
    const auto sx = synthesize_analytic(x, comb, fs);
    const double clean = 2.0 * dot(x, x);
    for (const double sigma : {0.2, 0.5, 1.0}) {
      double acc = 0;
      for (int d = 0; d < 200; ++d) {
        const auto jit = apply_phase_jitter(
            spectrum_of(x, comb),
            JitterSpec{sigma, derive_seed(902 + static_cast<std::uint64_t>(sigma * 10), d),
                       false});
        const auto sj = synthesize_analytic(jit, comb, fs);
        const auto sum = superpose({sx, sj});
        acc += mean_power(sum) - mean_power(sx) - mean_power(sj);
      }
      const double ratio = (acc / 200.0) / clean;
      const double expected = std::exp(-sigma * sigma / 2.0);
      out << "sigma " << sigma << ": ratio " << ratio << " vs " << expected << "; ";
      if (std::abs(ratio - expected) > 0.1 * expected) return false;
    }
    return true;
  });
}

// 10. Contrast-ratio arithmetic on the published constants.
inline CriterionResult criterion_ccr_arithmetic() {
  return acceptance_detail::timed(10, "ccr arithmetic", [](std::ostream& out) {
    const auto rep = run_experiment("ccr-arith", "");
    const auto& row = rep.rows.front();
    out << "ccr_cpl " << row["ccr_cpl"].get<double>() << ", surrogate open "
        << row["ccr_sur_open"].get<double>() << ", isolated "
        << row["ccr_sur_isolated"].get<double>();
    return rep.acceptance_pass;
  });
}

// 11. Isolation surrogate ratio properties.
inline CriterionResult criterion_isolation_surrogate() {
  return acceptance_detail::timed(11, "isolation surrogate", [](std::ostream& out) {
    const auto rep = run_experiment("isolation-surrogate", "");
    const auto& summary = rep.rows.back();
    out << "baseline reduction " << summary["reduction_db"].get<double>()
        << " dB, ccr ratio " << summary["ccr_ratio"].get<double>();
    return rep.acceptance_pass;
  });
}

// 12. Field-engine health: PML <= -40 dB, nested flux boxes within 5%, pulse
//     arrival within 2% of distance/c, passivity after sources stop.
inline CriterionResult criterion_engine_health() {
  return acceptance_detail::timed(12, "fdtd engine health", [](std::ostream& out) {
    using namespace wavehdc::fdtd;
    const auto gaussian = [](double center, double width, double dt, std::size_t n) {
      std::vector<double> s(n);
      for (std::size_t k = 0; k < n; ++k) {
        const double t = static_cast<double>(k + 1) * dt;
        s[k] = std::exp(-(t - center) * (t - center) / (width * width));
      }
      return s;
    };

    {  // PML reflection via the reference-run technique.
      SimulationConfig small{10, 10, 25, 1.0, 0.5, 14.0};
      SimulationConfig large{34, 34, 25, 1.0, 0.5, 14.0};
      const double dt = small.courant / small.resolution / std::numbers::sqrt2;
      SourceSpec src;
      src.time_series = gaussian(1.2, 0.35, dt, static_cast<std::size_t>(5.0 / dt));
      Monitor probe{Monitor::Kind::PointReceiver, "p", 2.0, 0, {}};
      const auto rs = run_simulation(small, {}, {src}, {probe});
      const auto rl = run_simulation(large, {}, {src}, {probe});
      double incident = 0, reflected = 0;
      for (std::size_t k = 0; k < rs.probes[0].samples.size(); ++k) {
        const double inc = rl.probes[0].samples[k];
        const double dif = rs.probes[0].samples[k] - inc;
        incident += inc * inc;
        reflected += dif * dif;
      }
      const double db = 10.0 * std::log10(reflected / incident);
      out << "pml " << db << " dB; ";
      if (!(db <= -40.0)) return false;
    }
    {  // Nested flux boxes.
      SimulationConfig cfg{12, 12, 25, 1.0, 0.5, 40.0};
      const double dt = cfg.courant / cfg.resolution / std::numbers::sqrt2;
      const auto steps = static_cast<std::size_t>(cfg.duration / dt) + 1;
      std::vector<double> drive(steps);
      for (std::size_t k = 0; k < steps; ++k) {
        const double t = static_cast<double>(k + 1) * dt;
        const double ramp =
            t < 3.0 ? 0.5 * (1.0 - std::cos(std::numbers::pi * t / 3.0)) : 1.0;
        drive[k] = ramp * std::sin(2.0 * std::numbers::pi * t);
      }
      SourceSpec src;
      src.time_series = drive;
      Monitor inner{Monitor::Kind::FluxBox, "i", 0, 0, {-0.6, -0.6, 0.6, 0.6}};
      Monitor outer{Monitor::Kind::FluxBox, "o", 0, 0, {-1.6, -1.6, 1.6, 1.6}};
      const auto res = run_simulation(cfg, {}, {src}, {inner, outer});
      const auto band = monitor_band(1.0, 0.4, 16);
      const double pi_ = integrate_power(net_flux_spectrum(res.flux_boxes[0], band));
      const double po = integrate_power(net_flux_spectrum(res.flux_boxes[1], band));
      out << "nested flux ratio " << po / pi_ << "; ";
      if (!(pi_ > 0.0 && std::abs(po / pi_ - 1.0) <= 0.05)) return false;
    }
    {  // Pulse arrival via two receivers 10 units apart.
      SimulationConfig cfg{26, 8, 25, 1.0, 0.5, 24.0};
      const double dt = cfg.courant / cfg.resolution / std::numbers::sqrt2;
      SourceSpec src;
      src.x = -11.0;
      src.time_series = gaussian(1.5, 0.4, dt, static_cast<std::size_t>(4.0 / dt));
      Monitor near{Monitor::Kind::PointReceiver, "n", -7.0, 0, {}};
      Monitor far{Monitor::Kind::PointReceiver, "f", 3.0, 0, {}};
      const auto res = run_simulation(cfg, {}, {src}, {near, far});
      const auto arrival = [](const ProbeRecording& p) {
        double peak = 0;
        for (const double s : p.samples) peak = std::max(peak, std::abs(s));
        for (std::size_t k = 0; k < p.samples.size(); ++k)
          if (std::abs(p.samples[k]) > 0.2 * peak)
            return static_cast<double>(k + 1) * p.dt;
        return -1.0;
      };
      const double t_travel = arrival(res.probes[1]) - arrival(res.probes[0]);
      out << "arrival " << t_travel << " vs 10; ";
      if (!(std::abs(t_travel - 10.0) <= 0.2)) return false;
    }
    {  // Passivity.
      SimulationConfig cfg{10, 10, 25, 1.0, 0.5, 30.0};
      cfg.energy_record_interval = 20;
      const double dt = cfg.courant / cfg.resolution / std::numbers::sqrt2;
      SourceSpec src;
      src.x = 0.5;
      src.y = -0.5;
      src.time_series = gaussian(1.0, 0.3, dt, static_cast<std::size_t>(3.0 / dt));
      const auto res = run_simulation(cfg, {}, {src}, {});
      double prev = -1.0;
      bool started = false;
      for (std::size_t k = 0; k < res.energy_samples.size(); ++k) {
        if (res.energy_times[k] < 3.5) continue;
        if (started && res.energy_samples[k] > prev * (1.0 + 1e-6)) {
          out << "energy grew after sources stopped";
          return false;
        }
        prev = res.energy_samples[k];
        started = true;
      }
      out << "passivity ok";
      return started;
    }
  });
}

// Runs all twelve criteria, printing one line per criterion as it finishes.
inline bool run_acceptance(std::ostream& out) {
  bool all = true;
  const auto report = [&](const CriterionResult& r) {
    out << (r.pass ? "[PASS]" : "[FAIL]") << " criterion " << r.id << " (" << r.name
        << "): " << r.detail << " [" << r.seconds << " s]" << std::endl;
    all = all && r.pass;
  };
  report(criterion_isometry());
  report(criterion_bridge());
  report(criterion_discrete_binding());
  report(criterion_fdtd_binding());
  report(criterion_permutation());
  const auto noise = run_experiment("noise-sweep", "");
  report(criterion_awgn(noise));
  report(criterion_bit_flip(noise));
  report(criterion_jitter());
  report(criterion_attenuation_law());
  report(criterion_ccr_arithmetic());
  report(criterion_isolation_surrogate());
  report(criterion_engine_health());
  out << (all ? "ACCEPTANCE: all criteria passed\n"
              : "ACCEPTANCE: at least one criterion failed\n");
  return all;
}

}  // namespace wavehdc::experiments
