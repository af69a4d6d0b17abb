#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "gordon/flow.hpp"

namespace gordon {

/// Which of the two radial light rays: outgoing is the one moving outward in
/// the medium frame (larger lab-frame dr/dt), ingoing the other.
enum class RayBranch { outgoing, ingoing };

const char* to_string(RayBranch branch) noexcept;

/// Radial phase-space point; momenta are covariant.
struct PhasePoint {
  double t = 0.0;
  double r = 0.0;
  double p_t = 0.0;
  double p_r = 0.0;
};

enum class Termination {
  escaped,    // reached r_max
  captured,   // reached r_min
  boundary,   // left the region where the flow is subluminal / finite
  max_steps,  // λ, step or momentum budget exhausted (a ray stalled on a horizon)
};

const char* to_string(Termination t) noexcept;

struct TrajectorySample {
  double lambda = 0.0;
  PhasePoint point;
  double null_residual = 0.0;
};

struct Trajectory {
  std::vector<TrajectorySample> samples;
  Termination termination = Termination::max_steps;
  double step = 0.0;            // integration step that met the drift tolerance
  double max_null_drift = 0.0;  // max relative null residual over every step
  double min_r = 0.0;
  double max_r = 0.0;
};

struct NullIntegrationOptions {
  double lambda_max = 400.0;
  double initial_step = 0.02;
  double drift_tolerance = 1e-8;
  std::size_t max_steps = 4'000'000;
  /// Stop once |p_r| exceeds this multiple of the launch momentum scale
  /// max(|p_t|, |p_r|): the ray is then pinned to a horizon it approaches
  /// only asymptotically in t.
  double momentum_cap = 1e6;
  /// Keep every n-th step in `samples` (the end point is always kept).
  std::size_t sample_stride = 1;
  /// Give up halving once the step is below this fraction of the domain size.
  double min_step_fraction = 1e-12;
};

/// Future-directed null covector for the chosen branch at radius r, with
/// affine normalization dt/dλ = 1 at launch (t = 0).
PhasePoint null_momentum(const FlowProfile& profile, double epsilon, double r, RayBranch branch);

/// |g^{μν} p_μ p_ν| divided by the sum of the magnitudes of its three terms.
double null_residual(const FlowProfile& profile, double epsilon, const PhasePoint& p);

/// dr/dλ and dt/dλ at a phase point.
struct RayVelocity {
  double dt;
  double dr;
};
RayVelocity ray_velocity(const FlowProfile& profile, double epsilon, const PhasePoint& p);

/// Hamiltonian ray tracing with H = ½ g^{μν}(r) p_μ p_ν, fixed-step RK4.
/// The step is taken in a rescaled parameter τ with dλ/dτ = 1/√(1 + (p_r/P₀)²),
/// P₀ = max(|p_t|, |p_r|) at launch; samples carry the affine λ. The whole
/// trajectory is recomputed with the step halved until the null drift is
/// below tolerance. p_t is a constant of motion and is not evolved.
/// Throws StepCollapseError when the step would drop below the floor.
Trajectory integrate_null(const FlowProfile& profile, double epsilon, const PhasePoint& initial,
                          const NullIntegrationOptions& options = {});

/// One fixed-step pass without the halving loop (used for convergence studies).
Trajectory integrate_null_fixed(const FlowProfile& profile, double epsilon,
                                const PhasePoint& initial, double step,
                                const NullIntegrationOptions& options = {});

enum class EscapeClass { escaped, captured, undecided };

const char* to_string(EscapeClass c) noexcept;

/// Escaped if the ray reached r_max or ended beyond (1 + band) r_h; captured
/// if it reached r_min or ended below (1 − band) r_h; otherwise undecided.
EscapeClass classify_escape(const Trajectory& trajectory, double r_h, double r_min, double r_max,
                            double band = 0.01);

struct RayOutcome {
  double launch_r = 0.0;
  RayBranch branch = RayBranch::outgoing;
  EscapeClass classification = EscapeClass::undecided;
  Termination termination = Termination::max_steps;
  double max_null_drift = 0.0;
  double min_r = 0.0;
  double max_r = 0.0;
  double final_r = 0.0;
  Trajectory trajectory;  // empty unless requested
};

struct RayLaunch {
  double r;
  RayBranch branch;
};

/// Integrates every launch concurrently; results are returned in launch order.
std::vector<RayOutcome> sweep_rays(const FlowProfile& profile, double epsilon, double r_h,
                                   std::span<const RayLaunch> launches,
                                   const NullIntegrationOptions& options = {},
                                   bool keep_trajectories = false, unsigned threads = 0);

} // namespace gordon
