#pragma once

// 2D TMz Yee-lattice FDTD engine: out-of-plane Ez with in-plane Hx, Hy,
// convolutional PML absorbing boundaries with cubic grading, lossy dielectric
// rectangles, soft point current sources, point receivers, and closed flux
// boxes (four line segments). Normalized units with c = eps0 = mu0 = 1.
//
// Field storage is single precision; monitor recordings are reduced in double
// precision. Stepping is strictly serial, so identical configurations produce
// bit-identical recordings; distinct simulations are safe to run on separate
// threads.

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "wavehdc/errors.hpp"
#include "wavehdc/readout.hpp"

namespace wavehdc::fdtd {

struct Rect {
  double x0 = 0, y0 = 0, x1 = 0, y1 = 0;
};

struct SimulationConfig {
  double cell_width = 0.0;   // normalized length units
  double cell_height = 0.0;
  double resolution = 0.0;   // cells per unit length
  double pml_thickness = 1.0;
  double courant = 0.5;      // S; dt = S * dx / sqrt(2)
  double duration = 0.0;
  // When > 0, total field energy is recorded every this many steps.
  int energy_record_interval = 0;

  void validate() const {
    if (!(cell_width > 0 && cell_height > 0 && resolution > 0 && duration > 0))
      throw InvalidArgument("SimulationConfig: cell, resolution, duration must be > 0");
    if (!(courant > 0.0 && courant <= 0.5))
      throw InvalidArgument("SimulationConfig: Courant factor must be in (0, 0.5]");
    if (!(pml_thickness >= 0.5))
      throw InvalidArgument("SimulationConfig: pml_thickness must be >= 0.5");
    if (2.0 * pml_thickness >= std::min(cell_width, cell_height))
      throw InvalidArgument("SimulationConfig: PML does not fit inside the cell");
  }
};

struct MaterialRegion {
  Rect rect;
  double epsilon = 1.0;
  double sigma_e = 0.0;

  void validate() const {
    if (!(epsilon >= 1.0) || !(sigma_e >= 0.0))
      throw InvalidArgument("MaterialRegion: requires epsilon >= 1 and sigma_e >= 0");
  }
};

// Soft (additive current) Ez drive at a grid point. time_series is sampled at
// the simulation step; index n drives the Ez update at t = (n+1)*dt after
// start_time.
struct SourceSpec {
  double x = 0, y = 0;
  std::vector<double> time_series;
  double start_time = 0.0;
  double amplitude = 1.0;
};

struct Monitor {
  enum class Kind { PointReceiver, FluxBox };
  Kind kind = Kind::PointReceiver;
  std::string name;
  double x = 0, y = 0;  // point receiver position
  Rect box;             // flux box geometry
};

struct ProbeRecording {
  std::string name;
  double dt = 0.0;
  std::vector<double> samples;  // Ez at t = (n+1)*dt
};

// One face of a flux box: Ez at the face nodes and the tangential H component
// spatially averaged onto the same nodes, recorded per step.
struct FluxFaceRecording {
  std::size_t node_count = 0;
  // Sign of the outward-normal Poynting combination for this face.
  double outward_sign = 1.0;
  std::vector<float> ez;  // [step * node_count + node]
  std::vector<float> ht;
};

struct FluxBoxRecording {
  std::string name;
  double dt = 0.0;
  double dl = 0.0;           // node spacing along faces
  std::size_t steps = 0;
  std::array<FluxFaceRecording, 4> faces;  // right, left, top, bottom
};

struct RunResult {
  double dt = 0.0;
  std::size_t steps = 0;
  std::vector<ProbeRecording> probes;
  std::vector<FluxBoxRecording> flux_boxes;
  std::vector<double> energy_samples;
  std::vector<double> energy_times;
};

namespace detail {

class Grid {
 public:
  Grid(const SimulationConfig& cfg, const std::vector<MaterialRegion>& materials)
      : cfg_(cfg) {
    cfg.validate();
    h_ = 1.0 / cfg.resolution;
    nx_ = static_cast<std::size_t>(std::llround(cfg.cell_width * cfg.resolution));
    ny_ = static_cast<std::size_t>(std::llround(cfg.cell_height * cfg.resolution));
    dt_ = cfg.courant * h_ / std::numbers::sqrt2;
    npml_ = static_cast<std::size_t>(std::llround(cfg.pml_thickness * cfg.resolution));

    ez_.assign((nx_ + 1) * (ny_ + 1), 0.0f);
    hx_.assign((nx_ + 1) * ny_, 0.0f);
    hy_.assign(nx_ * (ny_ + 1), 0.0f);
    psi_ezx_.assign((nx_ + 1) * (ny_ + 1), 0.0f);
    psi_ezy_.assign((nx_ + 1) * (ny_ + 1), 0.0f);
    psi_hxy_.assign((nx_ + 1) * ny_, 0.0f);
    psi_hyx_.assign(nx_ * (ny_ + 1), 0.0f);

    build_materials(materials);
    build_pml();
  }

  double dt() const { return dt_; }
  double h() const { return h_; }
  std::size_t nx() const { return nx_; }
  std::size_t ny() const { return ny_; }
  std::size_t npml() const { return npml_; }

  std::size_t node_index_x(double x) const {
    const auto i = std::llround((x + cfg_.cell_width / 2.0) / h_);
    if (i < 0 || i > static_cast<long long>(nx_))
      throw InvalidArgument("geometry: x outside the cell");
    return static_cast<std::size_t>(i);
  }

  std::size_t node_index_y(double y) const {
    const auto j = std::llround((y + cfg_.cell_height / 2.0) / h_);
    if (j < 0 || j > static_cast<long long>(ny_))
      throw InvalidArgument("geometry: y outside the cell");
    return static_cast<std::size_t>(j);
  }

  void require_inside_working_region(std::size_t i, std::size_t j,
                                     const char* what) const {
    if (i <= npml_ || i >= nx_ - npml_ || j <= npml_ || j >= ny_ - npml_)
      throw InvalidArgument(std::string(what) + ": position inside the PML region");
  }

  float& ez(std::size_t i, std::size_t j) { return ez_[i * (ny_ + 1) + j]; }
  float ez(std::size_t i, std::size_t j) const { return ez_[i * (ny_ + 1) + j]; }
  float hx(std::size_t i, std::size_t j) const { return hx_[i * ny_ + j]; }
  float hy(std::size_t i, std::size_t j) const { return hy_[i * (ny_ + 1) + j]; }

  void step() {
    update_h();
    update_e();
  }

  void add_soft_source(std::size_t i, std::size_t j, double value) {
    ez_[i * (ny_ + 1) + j] += static_cast<float>(dt_ * value);
  }

  double total_energy() const {
    double acc = 0.0;
    for (std::size_t idx = 0; idx < ez_.size(); ++idx)
      acc += eps_[idx] * static_cast<double>(ez_[idx]) * ez_[idx];
    for (const float v : hx_) acc += static_cast<double>(v) * v;
    for (const float v : hy_) acc += static_cast<double>(v) * v;
    return 0.5 * acc * h_ * h_;
  }

 private:
  void build_materials(const std::vector<MaterialRegion>& materials) {
    eps_.assign((nx_ + 1) * (ny_ + 1), 1.0f);
    sigma_.assign((nx_ + 1) * (ny_ + 1), 0.0f);
    for (const auto& m : materials) {
      m.validate();
      const std::size_t i0 = node_index_x(m.rect.x0), i1 = node_index_x(m.rect.x1);
      const std::size_t j0 = node_index_y(m.rect.y0), j1 = node_index_y(m.rect.y1);
      for (std::size_t i = i0; i <= i1; ++i)
        for (std::size_t j = j0; j <= j1; ++j) {
          eps_[i * (ny_ + 1) + j] = static_cast<float>(m.epsilon);
          sigma_[i * (ny_ + 1) + j] = static_cast<float>(m.sigma_e);
        }
    }
    ca_.resize(eps_.size());
    cb_.resize(eps_.size());
    for (std::size_t idx = 0; idx < eps_.size(); ++idx) {
      const double eps = eps_[idx];
      const double sig = sigma_[idx];
      const double half = sig * dt_ / (2.0 * eps);
      ca_[idx] = static_cast<float>((1.0 - half) / (1.0 + half));
      cb_[idx] = static_cast<float>((dt_ / (eps * h_)) / (1.0 + half));
    }
  }

  void build_pml() {
    // Cubic-graded conductivity targeting theoretical reflection 1e-8.
    const double d = static_cast<double>(npml_) * h_;
    const double sigma_max = -4.0 * std::log(1e-8) / (2.0 * d);
    auto sigma_at = [&](double depth_cells) {
      const double u = depth_cells / static_cast<double>(npml_);
      return u <= 0.0 ? 0.0 : sigma_max * u * u * u;
    };
    auto fill = [&](std::vector<float>& b, std::vector<float>& c, std::size_t n,
                    double stagger) {
      b.assign(n + 1, 1.0f);
      c.assign(n + 1, 0.0f);
      for (std::size_t i = 0; i <= n; ++i) {
        const double pos = static_cast<double>(i) + stagger;
        double depth = 0.0;
        if (pos < static_cast<double>(npml_))
          depth = static_cast<double>(npml_) - pos;
        else if (pos > static_cast<double>(n) - static_cast<double>(npml_))
          depth = pos - (static_cast<double>(n) - static_cast<double>(npml_));
        const double sig = sigma_at(depth);
        if (sig > 0.0) {
          const double bb = std::exp(-sig * dt_);
          b[i] = static_cast<float>(bb);
          c[i] = static_cast<float>(bb - 1.0);
        }
      }
    };
    fill(be_x_, ce_x_, nx_, 0.0);
    fill(bh_x_, ch_x_, nx_, 0.5);
    fill(be_y_, ce_y_, ny_, 0.0);
    fill(bh_y_, ch_y_, ny_, 0.5);
  }

  void update_h() {
    const float coef = static_cast<float>(dt_ / h_);
    const std::size_t stride_e = ny_ + 1;
    // Hx: dHx/dt = -dEz/dy, with y-PML stretching.
    for (std::size_t i = 0; i <= nx_; ++i) {
      float* hx_row = &hx_[i * ny_];
      const float* ez_row = &ez_[i * stride_e];
      float* psi_row = &psi_hxy_[i * ny_];
      for (std::size_t j = 0; j < ny_; ++j) {
        const float dez = ez_row[j + 1] - ez_row[j];
        float corr = dez;
        if (bh_y_[j] != 1.0f) {
          psi_row[j] = bh_y_[j] * psi_row[j] + ch_y_[j] * dez;
          corr += psi_row[j];
        }
        hx_row[j] -= coef * corr;
      }
    }
    // Hy: dHy/dt = +dEz/dx, with x-PML stretching.
    for (std::size_t i = 0; i < nx_; ++i) {
      float* hy_row = &hy_[i * stride_e];
      const float* ez_row = &ez_[i * stride_e];
      const float* ez_next = &ez_[(i + 1) * stride_e];
      float* psi_row = &psi_hyx_[i * stride_e];
      const float bh = bh_x_[i], ch = ch_x_[i];
      if (bh != 1.0f) {
        for (std::size_t j = 0; j <= ny_; ++j) {
          const float dez = ez_next[j] - ez_row[j];
          psi_row[j] = bh * psi_row[j] + ch * dez;
          hy_row[j] += coef * (dez + psi_row[j]);
        }
      } else {
        for (std::size_t j = 0; j <= ny_; ++j)
          hy_row[j] += coef * (ez_next[j] - ez_row[j]);
      }
    }
  }

  void update_e() {
    const std::size_t stride_e = ny_ + 1;
    // Interior nodes only; the outer boundary stays PEC (Ez = 0).
    for (std::size_t i = 1; i < nx_; ++i) {
      float* ez_row = &ez_[i * stride_e];
      const float* hy_row = &hy_[i * stride_e];
      const float* hy_prev = &hy_[(i - 1) * stride_e];
      const float* hx_row = &hx_[i * ny_];
      float* psi_x_row = &psi_ezx_[i * stride_e];
      float* psi_y_row = &psi_ezy_[i * stride_e];
      const float* ca_row = &ca_[i * stride_e];
      const float* cb_row = &cb_[i * stride_e];
      const float bex = be_x_[i], cex = ce_x_[i];
      const bool x_pml = bex != 1.0f;
      for (std::size_t j = 1; j < ny_; ++j) {
        const float dhy = hy_row[j] - hy_prev[j];
        const float dhx = hx_row[j] - hx_row[j - 1];
        float curl = dhy - dhx;
        if (x_pml) {
          psi_x_row[j] = bex * psi_x_row[j] + cex * dhy;
          curl += psi_x_row[j];
        }
        if (be_y_[j] != 1.0f) {
          psi_y_row[j] = be_y_[j] * psi_y_row[j] - ce_y_[j] * dhx;
          curl += psi_y_row[j];
        }
        // cb folds dt/(eps*h); curl is a raw field difference.
        ez_row[j] = ca_row[j] * ez_row[j] + cb_row[j] * curl;
      }
    }
  }

  SimulationConfig cfg_;
  double h_ = 0, dt_ = 0;
  std::size_t nx_ = 0, ny_ = 0, npml_ = 0;
  std::vector<float> ez_, hx_, hy_;
  std::vector<float> psi_ezx_, psi_ezy_, psi_hxy_, psi_hyx_;
  std::vector<float> eps_, sigma_, ca_, cb_;
  std::vector<float> be_x_, ce_x_, bh_x_, ch_x_, be_y_, ce_y_, bh_y_, ch_y_;
};

}  // namespace detail

// Leapfrog integration of the TMz Maxwell system for duration/dt steps,
// returning every monitor's time series. Deterministic for fixed inputs.
inline RunResult run_simulation(const SimulationConfig& cfg,
                                const std::vector<MaterialRegion>& materials,
                                const std::vector<SourceSpec>& sources,
                                const std::vector<Monitor>& monitors) {
  detail::Grid grid(cfg, materials);
  const double dt = grid.dt();
  const auto steps = static_cast<std::size_t>(std::ceil(cfg.duration / dt));

  struct PlacedSource {
    std::size_t i, j;
    const SourceSpec* spec;
    std::int64_t start_step;
  };
  std::vector<PlacedSource> placed;
  for (const auto& s : sources) {
    PlacedSource p{grid.node_index_x(s.x), grid.node_index_y(s.y), &s,
                   std::llround(s.start_time / dt)};
    grid.require_inside_working_region(p.i, p.j, "source");
    placed.push_back(p);
  }

  RunResult result;
  result.dt = dt;
  result.steps = steps;

  struct PlacedProbe {
    std::size_t i, j, out;
  };
  std::vector<PlacedProbe> probes;
  struct PlacedFace {
    bool vertical;
    std::size_t fixed;         // i for vertical, j for horizontal
    std::size_t lo, hi;        // node range along the face (inclusive)
    double outward_sign;
    std::size_t out_face;
    std::size_t out_box;
  };
  std::vector<PlacedFace> faces;

  for (const auto& m : monitors) {
    if (m.kind == Monitor::Kind::PointReceiver) {
      PlacedProbe p{grid.node_index_x(m.x), grid.node_index_y(m.y),
                    result.probes.size()};
      grid.require_inside_working_region(p.i, p.j, "point_receiver");
      ProbeRecording rec;
      rec.name = m.name;
      rec.dt = dt;
      rec.samples.reserve(steps);
      result.probes.push_back(std::move(rec));
      probes.push_back(p);
    } else {
      const std::size_t i0 = grid.node_index_x(m.box.x0);
      const std::size_t i1 = grid.node_index_x(m.box.x1);
      const std::size_t j0 = grid.node_index_y(m.box.y0);
      const std::size_t j1 = grid.node_index_y(m.box.y1);
      grid.require_inside_working_region(i0, j0, "flux_box");
      grid.require_inside_working_region(i1, j1, "flux_box");
      if (i1 <= i0 || j1 <= j0)
        throw InvalidArgument("flux_box: degenerate rectangle");
      FluxBoxRecording rec;
      rec.name = m.name;
      rec.dt = dt;
      rec.dl = grid.h();
      rec.steps = steps;
      const std::size_t box_index = result.flux_boxes.size();
      // Faces: right (+x), left (-x), top (+y), bottom (-y).
      const std::array<PlacedFace, 4> geom{
          PlacedFace{true, i1, j0, j1, +1.0, 0, box_index},
          PlacedFace{true, i0, j0, j1, -1.0, 1, box_index},
          PlacedFace{false, j1, i0, i1, +1.0, 2, box_index},
          PlacedFace{false, j0, i0, i1, -1.0, 3, box_index}};
      for (std::size_t f = 0; f < 4; ++f) {
        const auto& pf = geom[f];
        auto& face = rec.faces[f];
        face.node_count = pf.hi - pf.lo + 1;
        face.outward_sign = pf.outward_sign;
        face.ez.reserve(face.node_count * steps);
        face.ht.reserve(face.node_count * steps);
        faces.push_back(pf);
      }
      result.flux_boxes.push_back(std::move(rec));
    }
  }

  if (cfg.energy_record_interval > 0) {
    result.energy_samples.reserve(steps / cfg.energy_record_interval + 1);
    result.energy_times.reserve(steps / cfg.energy_record_interval + 1);
  }

  for (std::size_t n = 0; n < steps; ++n) {
    grid.step();
    for (const auto& p : placed) {
      const std::int64_t idx = static_cast<std::int64_t>(n) - p.start_step;
      if (idx >= 0 && idx < static_cast<std::int64_t>(p.spec->time_series.size()))
        grid.add_soft_source(p.i, p.j,
                             p.spec->amplitude * p.spec->time_series[idx]);
    }
    for (const auto& p : probes)
      result.probes[p.out].samples.push_back(grid.ez(p.i, p.j));
    for (const auto& pf : faces) {
      auto& face = result.flux_boxes[pf.out_box].faces[pf.out_face];
      if (pf.vertical) {
        const std::size_t i = pf.fixed;
        for (std::size_t j = pf.lo; j <= pf.hi; ++j) {
          face.ez.push_back(grid.ez(i, j));
          face.ht.push_back(0.5f * (grid.hy(i - 1, j) + grid.hy(i, j)));
        }
      } else {
        const std::size_t j = pf.fixed;
        for (std::size_t i = pf.lo; i <= pf.hi; ++i) {
          face.ez.push_back(grid.ez(i, j));
          face.ht.push_back(0.5f * (grid.hx(i, j - 1) + grid.hx(i, j)));
        }
      }
    }
    if (cfg.energy_record_interval > 0 &&
        (n % static_cast<std::size_t>(cfg.energy_record_interval)) == 0) {
      result.energy_samples.push_back(grid.total_energy());
      result.energy_times.push_back(static_cast<double>(n + 1) * dt);
    }
  }
  return result;
}

// Per frequency: DFT of the face fields, outward-normal Poynting combination
// 0.5 Re(Ez conj(Ht)) with the face sign, opposing faces differenced by their
// signs and all four summed. The H samples lag Ez by dt/2; the DFT corrects
// the offset in phase.
inline FluxReading net_flux_spectrum(const FluxBoxRecording& box,
                                     const std::vector<double>& frequencies) {
  for (const auto& face : box.faces)
    if (face.ez.size() != face.node_count * box.steps)
      throw DimensionMismatch("net_flux_spectrum: recording length mismatch");
  FluxReading out;
  out.frequencies = frequencies;
  out.net_power.assign(frequencies.size(), 0.0);
  out.source_id = box.name;

  for (std::size_t fi = 0; fi < frequencies.size(); ++fi) {
    const double w = 2.0 * std::numbers::pi * frequencies[fi];
    const std::complex<double> step_phase = std::polar(1.0, -w * box.dt);
    const std::complex<double> h_half_correction = std::polar(1.0, +w * box.dt / 2.0);
    double flux = 0.0;
    for (std::size_t f = 0; f < 4; ++f) {
      const auto& face = box.faces[f];
      const std::size_t nodes = face.node_count;
      std::vector<std::complex<double>> ez_hat(nodes, {0, 0}), ht_hat(nodes, {0, 0});
      std::complex<double> phase = std::polar(1.0, -w * box.dt);  // t_0 = dt
      for (std::size_t n = 0; n < box.steps; ++n) {
        const float* ez_row = &face.ez[n * nodes];
        const float* ht_row = &face.ht[n * nodes];
        for (std::size_t k = 0; k < nodes; ++k) {
          ez_hat[k] += phase * static_cast<double>(ez_row[k]);
          ht_hat[k] += phase * static_cast<double>(ht_row[k]);
        }
        phase *= step_phase;
      }
      // Vertical faces use Ht = Hy with S_x = -Ez*Hy; horizontal faces use
      // Ht = Hx with S_y = +Ez*Hx. Fold the -1 into the face orientation.
      const bool vertical = f < 2;
      const double orient = vertical ? -1.0 : +1.0;
      double face_flux = 0.0;
      for (std::size_t k = 0; k < nodes; ++k) {
        const auto ez = ez_hat[k] * box.dt;
        const auto ht = ht_hat[k] * box.dt * h_half_correction;
        face_flux += 0.5 * (ez * std::conj(ht)).real();
      }
      flux += face.outward_sign * orient * face_flux * box.dl;
    }
    out.net_power[fi] = flux;
  }
  return out;
}

// Monitor frequency grid: n bin centers over [center - width/2, center + width/2].
inline std::vector<double> monitor_band(double center, double width, std::size_t n) {
  std::vector<double> f(n);
  const double lo = center - width / 2.0;
  const double dnu = width / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i)
    f[i] = lo + (static_cast<double>(i) + 0.5) * dnu;
  return f;
}

}  // namespace wavehdc::fdtd
