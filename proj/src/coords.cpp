#include "gordon/coords.hpp"

#include <algorithm>
#include <cmath>

#include "gordon/errors.hpp"
#include "gordon/radial.hpp"

namespace gordon {

RadialMetricComponents radial_block(const FlowProfile& profile, double epsilon, double r) {
  if (!profile.contains(r)) throw DomainError("radius outside the flow profile domain");
  if (!(epsilon >= 1.0)) throw DomainError("permittivity must satisfy epsilon >= 1");
  const RadialMetric g = radial_metric(profile, epsilon, r);
  return {g.g00, g.g01, g.g11, r};
}

StaticForm static_form(const RadialMetricComponents& c, double horizon_threshold) {
  if (!(std::abs(c.g00) > horizon_threshold))
    throw SingularError("static form is singular at the horizon (|g00| below exclusion threshold)");
  return {c.g00, -c.discriminant() / c.g00};
}

double interval_check(const RadialMetricComponents& c, std::span<const Displacement> samples,
                      double horizon_threshold) {
  const StaticForm s = static_form(c, horizon_threshold);
  const double root = std::sqrt(c.discriminant());
  double worst = 0.0;
  for (const auto& [dt, dr] : samples) {
    const double original = c.g00 * dt * dt + 2.0 * c.g01 * dt * dr + c.g11 * dr * dr;
    const double dt_static = dt + (c.g01 / c.g00) * dr;
    const double dr_static = root * dr;
    const double transformed = s.g00 * dt_static * dt_static - dr_static * dr_static / s.g00;
    const double scale = std::max(std::abs(original), std::abs(c.g00) * dt * dt +
                                                          2.0 * std::abs(c.g01 * dt * dr) +
                                                          std::abs(c.g11) * dr * dr);
    if (scale == 0.0) continue;
    worst = std::max(worst, std::abs(original - transformed) / scale);
  }
  return worst;
}

double static_radius(const FlowProfile& profile, double epsilon, double r_from, double r_to,
                     int intervals) {
  if (intervals < 2) intervals = 2;
  if (intervals % 2) ++intervals;
  auto f = [&](double r) { return std::sqrt(radial_block(profile, epsilon, r).discriminant()); };
  const double h = (r_to - r_from) / intervals;
  double sum = f(r_from) + f(r_to);
  for (int i = 1; i < intervals; ++i) sum += (i % 2 ? 4.0 : 2.0) * f(r_from + i * h);
  return sum * h / 3.0;
}

} // namespace gordon
