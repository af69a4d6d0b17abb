#include "gordon/radial.hpp"

#include <cmath>

#include "gordon/errors.hpp"

namespace gordon {

RadialInverseMetric radial_inverse_metric(const FlowProfile& profile, double epsilon, double r) {
  const double v = profile.velocity(r);
  const double dv = profile.dvelocity_dr(r);
  const double g2 = 1.0 / (1.0 - v * v);
  const double k = epsilon - 1.0;
  const double kg2 = k * g2;
  // dγ²/dr = 2 v v' γ⁴
  const double dg2 = 2.0 * v * dv * g2 * g2;
  return {
      1.0 + kg2,
      kg2 * v,
      -1.0 + kg2 * v * v,
      k * dg2,
      k * (dv * g2 + v * dg2),
      k * (2.0 * v * dv * g2 + v * v * dg2),
  };
}

RadialMetric radial_metric(const FlowProfile& profile, double epsilon, double r) {
  const double v = profile.velocity(r);
  const double q = (epsilon - 1.0) / epsilon;
  const double qg2 = q / (1.0 - v * v);
  return {1.0 - qg2, qg2 * v, -1.0 - qg2 * v * v};
}

NullSpeeds null_speeds(const FlowProfile& profile, double epsilon, double r) {
  const RadialMetric g = radial_metric(profile, epsilon, r);
  // g11 w² + 2 g01 w + g00 = 0 with g11 < 0; the root free of cancellation is
  // formed directly and the other from the product g00/g11.
  const double disc = g.g01 * g.g01 - g.g00 * g.g11;
  if (!(disc > 0.0)) throw DomainError("radial metric has no real null directions");
  const double root = std::sqrt(disc);
  const double a = -g.g11;
  if (g.g01 >= 0.0) {
    const double out = (g.g01 + root) / a;
    return {out, (g.g00 / g.g11) / out};
  }
  const double in = (g.g01 - root) / a;
  return {(g.g00 / g.g11) / in, in};
}

} // namespace gordon
