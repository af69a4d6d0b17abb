#include "gordon/geodesic.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "gordon/errors.hpp"
#include "gordon/radial.hpp"

namespace gordon {

const char* to_string(RayBranch branch) noexcept {
  return branch == RayBranch::outgoing ? "outgoing" : "ingoing";
}

const char* to_string(Termination t) noexcept {
  switch (t) {
  case Termination::escaped: return "escaped";
  case Termination::captured: return "captured";
  case Termination::boundary: return "boundary";
  case Termination::max_steps: break;
  }
  return "max_steps";
}

const char* to_string(EscapeClass c) noexcept {
  switch (c) {
  case EscapeClass::escaped: return "escaped";
  case EscapeClass::captured: return "captured";
  case EscapeClass::undecided: break;
  }
  return "undecided";
}

PhasePoint null_momentum(const FlowProfile& profile, double epsilon, double r, RayBranch branch) {
  if (!profile.contains(r)) throw DomainError("launch radius outside the flow profile domain");
  if (!(epsilon >= 1.0)) throw DomainError("permittivity must satisfy epsilon >= 1");
  const NullSpeeds w = null_speeds(profile, epsilon, r);
  const double speed = branch == RayBranch::outgoing ? w.outgoing : w.ingoing;
  // p^μ = (1, dr/dt) is null and future-directed; lower it.
  const RadialMetric g = radial_metric(profile, epsilon, r);
  return {0.0, r, g.g00 + g.g01 * speed, g.g01 + g.g11 * speed};
}

double null_residual(const FlowProfile& profile, double epsilon, const PhasePoint& p) {
  const RadialInverseMetric g = radial_inverse_metric(profile, epsilon, p.r);
  const double a = g.tt * p.p_t * p.p_t;
  const double b = 2.0 * g.tr * p.p_t * p.p_r;
  const double c = g.rr * p.p_r * p.p_r;
  const double scale = std::abs(a) + std::abs(b) + std::abs(c);
  return scale == 0.0 ? 0.0 : std::abs(a + b + c) / scale;
}

RayVelocity ray_velocity(const FlowProfile& profile, double epsilon, const PhasePoint& p) {
  const RadialInverseMetric g = radial_inverse_metric(profile, epsilon, p.r);
  return {g.tt * p.p_t + g.tr * p.p_r, g.tr * p.p_t + g.rr * p.p_r};
}

namespace {

// Rays that pile up on a horizon reach it at finite λ with p_r → ∞, so the
// integration variable is τ with dλ/dτ = 1/N, N = √(1 + (p_r/P₀)²). In τ
// the blow-up becomes exponential growth, which a fixed step follows.
struct State {
  double t, r, p_r, lambda;
};

struct Derivative {
  double dt, dr, dp_r, dlambda;
  bool valid;
};

Derivative hamilton_rhs(const FlowProfile& profile, double epsilon, double p_t, double p_scale,
                        const State& s) {
  if (!std::isfinite(s.r) || !(s.r > 0.0) || !std::isfinite(s.p_r)) return {0, 0, 0, 0, false};
  const double v = profile.velocity(s.r);
  if (!(v * v < 1.0)) return {0, 0, 0, 0, false};
  const RadialInverseMetric g = radial_inverse_metric(profile, epsilon, s.r);
  const double q = s.p_r / p_scale;
  const double inv_n = 1.0 / std::sqrt(1.0 + q * q);
  return {
      (g.tt * p_t + g.tr * s.p_r) * inv_n,
      (g.tr * p_t + g.rr * s.p_r) * inv_n,
      -0.5 * (g.d_tt * p_t * p_t + 2.0 * g.d_tr * p_t * s.p_r + g.d_rr * s.p_r * s.p_r) * inv_n,
      inv_n,
      true,
  };
}

State axpy(const State& s, double h, const Derivative& d) {
  return {s.t + h * d.dt, s.r + h * d.dr, s.p_r + h * d.dp_r, s.lambda + h * d.dlambda};
}

} // namespace

Trajectory integrate_null_fixed(const FlowProfile& profile, double epsilon,
                                const PhasePoint& initial, double step,
                                const NullIntegrationOptions& options) {
  if (!(step > 0.0)) throw DomainError("integration step must be > 0");
  const double p_t = initial.p_t;
  const double p_scale = std::max(std::abs(initial.p_t), std::abs(initial.p_r));
  if (!(p_scale > 0.0)) throw DomainError("null momentum must be nonzero");
  const double r_lo = profile.r_min(), r_hi = profile.r_max();
  const std::size_t stride = std::max<std::size_t>(1, options.sample_stride);

  Trajectory traj;
  traj.step = step;
  traj.min_r = traj.max_r = initial.r;

  State s{initial.t, initial.r, initial.p_r, 0.0};
  auto record = [&](bool force, std::size_t index) {
    const PhasePoint p{s.t, s.r, p_t, s.p_r};
    const double res = (s.r > 0.0 && std::isfinite(s.r)) ? null_residual(profile, epsilon, p) : 0.0;
    traj.max_null_drift = std::max(traj.max_null_drift, res);
    traj.min_r = std::min(traj.min_r, s.r);
    traj.max_r = std::max(traj.max_r, s.r);
    if (force || index % stride == 0) traj.samples.push_back({s.lambda, p, res});
  };
  record(true, 0);

  const auto finished = [&] {
    return s.r >= r_hi || s.r <= r_lo || s.lambda >= options.lambda_max ||
           std::abs(s.p_r) > options.momentum_cap * p_scale;
  };
  for (std::size_t n = 1;; ++n) {
    if (s.r >= r_hi) {
      traj.termination = Termination::escaped;
      break;
    }
    if (s.r <= r_lo) {
      traj.termination = Termination::captured;
      break;
    }
    if (finished() || n > options.max_steps) {
      traj.termination = Termination::max_steps;
      break;
    }
    const double h = step;
    const Derivative k1 = hamilton_rhs(profile, epsilon, p_t, p_scale, s);
    const Derivative k2 = hamilton_rhs(profile, epsilon, p_t, p_scale, axpy(s, 0.5 * h, k1));
    const Derivative k3 = hamilton_rhs(profile, epsilon, p_t, p_scale, axpy(s, 0.5 * h, k2));
    const Derivative k4 = hamilton_rhs(profile, epsilon, p_t, p_scale, axpy(s, h, k3));
    if (!(k1.valid && k2.valid && k3.valid && k4.valid)) {
      traj.termination = Termination::boundary;
      break;
    }
    s.t += h / 6.0 * (k1.dt + 2.0 * k2.dt + 2.0 * k3.dt + k4.dt);
    s.r += h / 6.0 * (k1.dr + 2.0 * k2.dr + 2.0 * k3.dr + k4.dr);
    s.p_r += h / 6.0 * (k1.dp_r + 2.0 * k2.dp_r + 2.0 * k3.dp_r + k4.dp_r);
    s.lambda += h / 6.0 * (k1.dlambda + 2.0 * k2.dlambda + 2.0 * k3.dlambda + k4.dlambda);
    record(finished(), n);
  }
  if (traj.samples.back().lambda != s.lambda) record(true, 0);
  return traj;
}

Trajectory integrate_null(const FlowProfile& profile, double epsilon, const PhasePoint& initial,
                          const NullIntegrationOptions& options) {
  if (null_residual(profile, epsilon, initial) > options.drift_tolerance)
    throw DomainError("initial phase point is not null within tolerance");
  const double floor = options.min_step_fraction * (profile.r_max() - profile.r_min());
  double step = options.initial_step;
  while (true) {
    if (step < floor)
      throw StepCollapseError("null geodesic step collapsed below the domain-relative floor");
    Trajectory traj = integrate_null_fixed(profile, epsilon, initial, step, options);
    if (traj.max_null_drift <= options.drift_tolerance) return traj;
    step *= 0.5;
  }
}

EscapeClass classify_escape(const Trajectory& trajectory, double r_h, double r_min, double r_max,
                            double band) {
  if (trajectory.samples.empty()) return EscapeClass::undecided;
  const double r = trajectory.samples.back().point.r;
  if (trajectory.termination == Termination::escaped || r >= r_max) return EscapeClass::escaped;
  if (trajectory.termination == Termination::captured || r <= r_min) return EscapeClass::captured;
  if (r > r_h * (1.0 + band)) return EscapeClass::escaped;
  if (r < r_h * (1.0 - band)) return EscapeClass::captured;
  return EscapeClass::undecided;
}

std::vector<RayOutcome> sweep_rays(const FlowProfile& profile, double epsilon, double r_h,
                                   std::span<const RayLaunch> launches,
                                   const NullIntegrationOptions& options, bool keep_trajectories,
                                   unsigned threads) {
  std::vector<RayOutcome> out(launches.size());
  std::vector<std::exception_ptr> errors(launches.size());
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t i = next++; i < launches.size(); i = next++) {
      try {
        const auto& l = launches[i];
        const PhasePoint p0 = null_momentum(profile, epsilon, l.r, l.branch);
        Trajectory traj = integrate_null(profile, epsilon, p0, options);
        RayOutcome& o = out[i];
        o.launch_r = l.r;
        o.branch = l.branch;
        o.classification = classify_escape(traj, r_h, profile.r_min(), profile.r_max());
        o.termination = traj.termination;
        o.max_null_drift = traj.max_null_drift;
        o.min_r = traj.min_r;
        o.max_r = traj.max_r;
        o.final_r = traj.samples.back().point.r;
        if (keep_trajectories) o.trajectory = std::move(traj);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, launches.size())));
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

} // namespace gordon
