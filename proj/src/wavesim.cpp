#include "gordon/wavesim.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gordon/errors.hpp"
#include "gordon/radial.hpp"

namespace gordon {

namespace {

void fill_padded(std::vector<double>& padded, const double* values, std::size_t n) {
  std::copy(values, values + n, padded.begin() + 2);
  padded[0] = padded[1] = values[0];
  padded[n + 2] = padded[n + 3] = values[n - 1];
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

} // namespace

WaveCoefficients wave_coefficients(const Grid1D& grid, const FlowProfile& profile, double epsilon,
                                   const SpongeOptions& sponge) {
  if (!(epsilon >= 1.0)) throw DomainError("permittivity must satisfy epsilon >= 1");
  if (grid.n_cells < 16) throw DomainError("wave grid needs at least 16 cells");
  if (!profile.contains(grid.r_min) || !profile.contains(grid.r_max))
    throw DomainError("wave grid extends outside the flow profile domain");
  if (!(grid.sponge_width >= 0.0) || 2.0 * grid.sponge_width >= grid.r_max - grid.r_min)
    throw DomainError("sponge layers must leave a physical region");

  const std::size_t n = grid.n_cells;
  WaveCoefficients c;
  c.epsilon = epsilon;
  c.g_tt.resize(n);
  c.g_tr.resize(n);
  c.g_rr.resize(n);
  c.speed_out.resize(n);
  c.speed_in.resize(n);
  c.sigma.assign(n, 0.0);
  c.a.resize(n + 4);
  c.b.resize(n + 4);
  c.c_face.resize(n + 1);

  std::vector<double> a(n), b(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double r = grid.center(i);
    const RadialInverseMetric g = radial_inverse_metric(profile, epsilon, r);
    c.g_tt[i] = g.tt;
    c.g_tr[i] = g.tr;
    c.g_rr[i] = g.rr;
    a[i] = 1.0 / g.tt;
    b[i] = -g.tr / g.tt;
    const NullSpeeds w = null_speeds(profile, epsilon, r);
    c.speed_out[i] = w.outgoing;
    c.speed_in[i] = w.ingoing;
    c.max_speed = std::max({c.max_speed, std::abs(w.outgoing), std::abs(w.ingoing)});
  }
  fill_padded(c.a, a.data(), n);
  fill_padded(c.b, b.data(), n);
  for (std::size_t i = 0; i <= n; ++i) {
    const double r = grid.face(i);
    c.c_face[i] = epsilon / radial_inverse_metric(profile, epsilon, r).tt;
    const NullSpeeds w = null_speeds(profile, epsilon, r);
    c.max_speed = std::max({c.max_speed, std::abs(w.outgoing), std::abs(w.ingoing)});
  }

  if (grid.sponge_width > 0.0) {
    const double sigma_max = sponge.strength * c.max_speed / grid.sponge_width;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = grid.center(i);
      const double depth =
          std::max({0.0, grid.inner_min() - r, r - grid.inner_max()}) / grid.sponge_width;
      c.sigma[i] = sigma_max * depth * depth;
    }
  }
  return c;
}

Grid1D make_grid(const FlowProfile& profile, double epsilon, double r_min, double r_max,
                 std::size_t n_cells, double cfl, double sponge_fraction) {
  if (n_cells < 16) throw DomainError("wave grid needs at least 16 cells");
  if (!(r_max > r_min)) throw DomainError("wave grid needs r_max > r_min");
  if (!(cfl > 0.0)) throw DomainError("CFL factor must be > 0");
  if (!(sponge_fraction >= 0.0 && sponge_fraction < 0.5))
    throw DomainError("sponge fraction must lie in [0, 0.5)");
  Grid1D grid{r_min, r_max, n_cells, 0.0, sponge_fraction * (r_max - r_min)};
  const WaveCoefficients c = wave_coefficients(grid, profile, epsilon);
  grid.dt = cfl * grid.dr() / c.max_speed;
  return grid;
}

void check_cfl(const Grid1D& grid, const WaveCoefficients& coeffs, double cfl) {
  const double limit = cfl * grid.dr() / coeffs.max_speed;
  if (!(grid.dt > 0.0) || grid.dt > limit * (1.0 + 1e-12))
    throw DomainError("time step violates the CFL condition (dt = " + std::to_string(grid.dt) +
                      ", limit = " + std::to_string(limit) + ")");
}

WaveField init_packet(const Grid1D& grid, const WaveCoefficients& coeffs, double center,
                      double width, double wavenumber, RayBranch direction) {
  if (!(width > 0.0)) throw DomainError("packet width must be > 0");
  if (center - 4.0 * width < grid.inner_min() || center + 4.0 * width > grid.inner_max())
    throw SupportError("wave packet (center +- 4 width) overlaps the sponge layers");
  const std::size_t n = grid.n_cells;
  WaveField f{std::vector<double>(n), std::vector<double>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    const double x = grid.center(i) - center;
    const double env = std::exp(-x * x / (2.0 * width * width));
    const double phase = wavenumber * x;
    f.phi[i] = env * std::cos(phase);
    const double phi_r = env * (-x / (width * width) * std::cos(phase) - wavenumber * std::sin(phase));
    const double w = direction == RayBranch::outgoing ? coeffs.speed_out[i] : coeffs.speed_in[i];
    // A right/left mover along w has φ_t = −w φ_r.
    f.pi[i] = (coeffs.g_tr[i] - coeffs.g_tt[i] * w) * phi_r;
  }
  return f;
}

WaveSolver::WaveSolver(Grid1D grid, WaveCoefficients coeffs, const simd::KernelTable& kernels)
    : grid_(grid), coeffs_(std::move(coeffs)), kernels_(&kernels) {
  const std::size_t n = grid_.n_cells;
  if (coeffs_.g_tt.size() != n) throw DomainError("wave coefficients do not match the grid");
  damping_.resize(n);
  for (std::size_t i = 0; i < n; ++i) damping_[i] = std::exp(-coeffs_.sigma[i] * grid_.dt);
  pad_phi_.assign(n + 4, 0.0);
  pad_pi_.assign(n + 4, 0.0);
  for (auto* v : {&k1_phi_, &k1_pi_, &k2_phi_, &k2_pi_, &star_phi_, &star_pi_}) v->assign(n, 0.0);
}

void WaveSolver::rhs(const double* phi, const double* pi, double* dphi, double* dpi) {
  const std::size_t n = grid_.n_cells;
  fill_padded(pad_phi_, phi, n);
  fill_padded(pad_pi_, pi, n);
  const double h = grid_.dr();
  const simd::WaveRhsArgs args{pad_phi_.data(),
                               pad_pi_.data(),
                               coeffs_.a.data(),
                               coeffs_.b.data(),
                               coeffs_.c_face.data(),
                               dphi,
                               dpi,
                               n,
                               0.5 / h,
                               1.0 / (h * h),
                               coeffs_.dissipation / (16.0 * h)};
  kernels_->rhs(args, 0, n);
}

void WaveSolver::step(WaveField& f) {
  const std::size_t n = grid_.n_cells;
  const double dt = grid_.dt;
  rhs(f.phi.data(), f.pi.data(), k1_phi_.data(), k1_pi_.data());
  kernels_->euler(f.phi.data(), k1_phi_.data(), dt, star_phi_.data(), n);
  kernels_->euler(f.pi.data(), k1_pi_.data(), dt, star_pi_.data(), n);
  rhs(star_phi_.data(), star_pi_.data(), k2_phi_.data(), k2_pi_.data());
  kernels_->heun(f.phi.data(), star_phi_.data(), k2_phi_.data(), dt, f.phi.data(), n);
  kernels_->heun(f.pi.data(), star_pi_.data(), k2_pi_.data(), dt, f.pi.data(), n);
  kernels_->damp(f.phi.data(), damping_.data(), n);
  kernels_->damp(f.pi.data(), damping_.data(), n);

  const double peak = max_abs(f.phi);
  if (!std::isfinite(peak) || (reference_ > 0.0 && peak > 1e6 * reference_))
    throw InstabilityError("wave solution grew beyond 1e6 x its initial amplitude");
}

WaveField step(const WaveField& field, const Grid1D& grid, const WaveCoefficients& coeffs) {
  check_cfl(grid, coeffs);
  WaveSolver solver(grid, coeffs);
  solver.set_reference_amplitude(max_abs(field.phi));
  WaveField out = field;
  solver.step(out);
  return out;
}

double energy_diagnostic(const WaveField& field, const Grid1D& grid,
                         const WaveCoefficients& coeffs) {
  const std::size_t n = grid.n_cells;
  const double h = grid.dr();
  double e = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double left = field.phi[i == 0 ? 0 : i - 1];
    const double right = field.phi[i + 1 == n ? n - 1 : i + 1];
    const double phi_r = (right - left) / (2.0 * h);
    const double kinetic = field.pi[i] - coeffs.g_tr[i] * phi_r;
    e += kinetic * kinetic / (2.0 * coeffs.g_tt[i]) - 0.5 * coeffs.g_rr[i] * phi_r * phi_r;
  }
  return e * h;
}

double sample(const WaveField& field, const Grid1D& grid, double r) {
  const double x = (r - grid.r_min) / grid.dr() - 0.5;
  const std::size_t n = grid.n_cells;
  if (x <= 0.0) return field.phi.front();
  if (x >= static_cast<double>(n - 1)) return field.phi.back();
  const auto i = static_cast<std::size_t>(x);
  const double s = x - static_cast<double>(i);
  return (1.0 - s) * field.phi[i] + s * field.phi[i + 1];
}

WaveRunResult run(const Grid1D& grid, const FlowProfile& profile, double epsilon,
                  const WaveField& initial, double t_final, std::span<const double> probes,
                  const WaveRunOptions& options) {
  if (!(t_final >= 0.0)) throw DomainError("t_final must be >= 0");
  if (initial.phi.size() != grid.n_cells || initial.pi.size() != grid.n_cells)
    throw DomainError("initial field does not match the grid");
  for (double r : probes)
    if (r < grid.r_min || r > grid.r_max) throw DomainError("probe radius outside the wave grid");

  WaveCoefficients coeffs = wave_coefficients(grid, profile, epsilon, options.sponge);
  check_cfl(grid, coeffs);

  const auto steps = static_cast<std::size_t>(std::ceil(t_final / grid.dt - 1e-12));
  Grid1D stepping = grid;
  if (steps > 0) stepping.dt = t_final / static_cast<double>(steps);

  WaveSolver solver(stepping, std::move(coeffs));
  solver.set_reference_amplitude(max_abs(initial.phi));

  WaveRunResult result;
  result.final_field = initial;
  result.dt = stepping.dt;
  result.probe_r.assign(probes.begin(), probes.end());
  result.probe_phi.resize(probes.size());

  const std::size_t every = std::max<std::size_t>(1, options.probe_every);
  auto record = [&](double t) {
    result.times.push_back(t);
    for (std::size_t p = 0; p < probes.size(); ++p)
      result.probe_phi[p].push_back(sample(result.final_field, grid, probes[p]));
    if (options.track_energy)
      result.energy.push_back(energy_diagnostic(result.final_field, grid, solver.coefficients()));
  };
  record(0.0);

  for (std::size_t s = 1; s <= steps; ++s) {
    solver.step(result.final_field);
    const double t = s == steps ? t_final : static_cast<double>(s) * stepping.dt;
    if (s % every == 0 || s == steps) record(t);
    if (options.on_snapshot && options.snapshot_every > 0 && s % options.snapshot_every == 0)
      options.on_snapshot(t, result.final_field);
  }
  result.steps = steps;
  result.t_final = t_final;
  return result;
}

} // namespace gordon
