#pragma once

#include <array>
#include <span>

#include "gordon/flow.hpp"

namespace gordon {

/// Covariant (t, r) block of the stationary effective metric at radius r.
struct RadialMetricComponents {
  double g00 = 1.0;
  double g01 = 0.0;
  double g11 = -1.0;
  double r = 0.0;

  /// g01² − g00 g11; must be positive for the radial rescaling to be real.
  double discriminant() const noexcept { return g01 * g01 - g00 * g11; }
};

/// Diagonal form ds² = g00 dt̃² + g_rr dr² with dt̃ = dt + (g01/g00) dr.
struct StaticForm {
  double g00 = 1.0;
  double g_rr = -1.0;
};

inline constexpr double kHorizonExclusion = 1e-6;

RadialMetricComponents radial_block(const FlowProfile& profile, double epsilon, double r);

/// g_rr = −(g01² − g00 g11)/g00. Throws SingularError when |g00| ≤ threshold
/// (the transform is singular on the horizon).
StaticForm static_form(const RadialMetricComponents& c, double horizon_threshold = kHorizonExclusion);

using Displacement = std::array<double, 2>;  // (dt, dr)

/// Worst relative mismatch between ds² in the stationary chart and in the
/// static chart over the given displacements. Each mismatch is scaled by
/// max(|ds²|, Σ|terms|) so null displacements do not divide by zero.
double interval_check(const RadialMetricComponents& c, std::span<const Displacement> samples,
                      double horizon_threshold = kHorizonExclusion);

/// r̃(r_to) − r̃(r_from) = ∫ √(g01² − g00 g11) dr by composite Simpson.
double static_radius(const FlowProfile& profile, double epsilon, double r_from, double r_to,
                     int intervals = 256);

} // namespace gordon
