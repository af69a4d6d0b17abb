#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "gordon/flow.hpp"
#include "gordon/geodesic.hpp"
#include "gordon/simd/wave_kernels.hpp"

namespace gordon {

/// Uniform cell-centred radial grid with absorbing layers of width
/// `sponge_width` at both ends.
struct Grid1D {
  double r_min = 0.0;
  double r_max = 1.0;
  std::size_t n_cells = 16;
  double dt = 0.0;
  double sponge_width = 0.0;

  double dr() const noexcept { return (r_max - r_min) / static_cast<double>(n_cells); }
  double center(std::size_t i) const noexcept { return r_min + (static_cast<double>(i) + 0.5) * dr(); }
  double face(std::size_t i) const noexcept { return r_min + static_cast<double>(i) * dr(); }
  /// Physical (non-sponge) region.
  double inner_min() const noexcept { return r_min + sponge_width; }
  double inner_max() const noexcept { return r_max - sponge_width; }
};

struct WaveField {
  std::vector<double> phi;
  std::vector<double> pi;  // g^{tt} ∂_t φ + g^{tr} ∂_r φ
};

struct SpongeOptions {
  /// σ_max = strength · v_char / width; the one-way attenuation of a ray
  /// crossing the layer is about exp(−strength/3).
  double strength = 36.0;
};

/// Per-cell coefficients of the first-order system
///   φ_t = a π + b φ_r,    π_t = ∂_r(b π + c φ_r)
/// with a = 1/g^{tt}, b = −g^{tr}/g^{tt}, c = ε/g^{tt}; the constant volume
/// factor √ε drops out.
struct WaveCoefficients {
  double epsilon = 1.0;
  std::vector<double> g_tt, g_tr, g_rr;  // per cell
  std::vector<double> a, b;              // ghost-padded (n + 4)
  std::vector<double> c_face;            // n + 1 faces
  std::vector<double> sigma;             // sponge rate per cell
  std::vector<double> speed_out, speed_in;
  double max_speed = 0.0;  // max |dr/dt| of either null direction over cells and faces
  double dissipation = 0.5;
};

WaveCoefficients wave_coefficients(const Grid1D& grid, const FlowProfile& profile, double epsilon,
                                   const SpongeOptions& sponge = {});

/// Grid with dt = cfl · dr / v_char. Throws DomainError for n_cells < 16 or a
/// domain outside the profile.
Grid1D make_grid(const FlowProfile& profile, double epsilon, double r_min, double r_max,
                 std::size_t n_cells, double cfl = 0.5, double sponge_fraction = 0.1);

/// Throws DomainError if dt violates dt ≤ cfl · dr / v_char.
void check_cfl(const Grid1D& grid, const WaveCoefficients& coeffs, double cfl = 0.5);

/// φ = exp(−(r − c)²/2w²) cos(k(r − c)), with π chosen so that the packet
/// initially moves along the requested null direction. Throws SupportError
/// unless center ± 4·width lies inside the physical region.
WaveField init_packet(const Grid1D& grid, const WaveCoefficients& coeffs, double center,
                      double width, double wavenumber, RayBranch direction);

/// Explicit two-stage (Heun) integrator for the semi-discrete system with
/// centred second-order differences, fourth-difference dissipation and
/// multiplicative sponge damping after every step.
class WaveSolver {
public:
  WaveSolver(Grid1D grid, WaveCoefficients coeffs,
             const simd::KernelTable& kernels = simd::active_kernels());

  /// Advances by grid.dt. Throws InstabilityError when max|φ| exceeds
  /// 10⁶ × `reference_amplitude` (when that is positive) or turns non-finite.
  void step(WaveField& field);

  void set_reference_amplitude(double a) noexcept { reference_ = a; }
  const Grid1D& grid() const noexcept { return grid_; }
  const WaveCoefficients& coefficients() const noexcept { return coeffs_; }
  const simd::KernelTable& kernels() const noexcept { return *kernels_; }

private:
  void rhs(const double* phi, const double* pi, double* dphi, double* dpi);

  Grid1D grid_;
  WaveCoefficients coeffs_;
  const simd::KernelTable* kernels_;
  std::vector<double> damping_;
  std::vector<double> pad_phi_, pad_pi_;
  std::vector<double> k1_phi_, k1_pi_, k2_phi_, k2_pi_, star_phi_, star_pi_;
  double reference_ = 0.0;
};

/// One step on a copy of the field.
WaveField step(const WaveField& field, const Grid1D& grid, const WaveCoefficients& coeffs);

/// Σ [ (π − g^{tr}φ_r)² / 2g^{tt} − ½ g^{rr} φ_r² ] dr over the whole grid:
/// the energy conjugate to the stationary time. Positive outside horizons.
double energy_diagnostic(const WaveField& field, const Grid1D& grid, const WaveCoefficients& coeffs);

/// φ at radius r by linear interpolation between cell centres.
double sample(const WaveField& field, const Grid1D& grid, double r);

struct WaveRunOptions {
  std::size_t probe_every = 1;     // steps between probe samples
  std::size_t snapshot_every = 0;  // 0: no intermediate snapshots
  bool track_energy = false;
  std::function<void(double t, const WaveField&)> on_snapshot;
  SpongeOptions sponge;
};

struct WaveRunResult {
  WaveField final_field;
  double t_final = 0.0;
  std::size_t steps = 0;
  double dt = 0.0;
  std::vector<double> times;                    // probe sample times
  std::vector<double> probe_r;
  std::vector<std::vector<double>> probe_phi;   // [probe][sample]
  std::vector<double> energy;                   // per probe sample, if tracked
};

/// Evolves `initial` to t_final. The step is shrunk uniformly so an integer
/// number of steps lands exactly on t_final. Probes must lie inside the grid.
WaveRunResult run(const Grid1D& grid, const FlowProfile& profile, double epsilon,
                  const WaveField& initial, double t_final, std::span<const double> probes,
                  const WaveRunOptions& options = {});

} // namespace gordon
