#include "gordon/horizon.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "gordon/constants.hpp"
#include "gordon/errors.hpp"

namespace gordon {

const char* to_string(HorizonKind kind) noexcept {
  switch (kind) {
  case HorizonKind::black: return "black";
  case HorizonKind::white: return "white";
  case HorizonKind::none: break;
  }
  return "none";
}

namespace {

double bisect(const FlowProfile& profile, double target, double lo, double hi, double rel_tol) {
  double f_lo = profile.beta(lo) - target;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (hi - lo <= rel_tol * std::abs(mid)) break;
    const double f_mid = profile.beta(mid) - target;
    if (f_mid == 0.0) return mid;
    if ((f_mid < 0.0) == (f_lo < 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

} // namespace

HorizonReport find_ergosurface(const FlowProfile& profile, double epsilon,
                               const HorizonSearchOptions& options) {
  if (!(epsilon >= 1.0)) throw DomainError("permittivity must satisfy epsilon >= 1");
  if (options.scan_samples < 2) throw DomainError("horizon scan needs at least two samples");

  HorizonReport report;
  const double target = 1.0 / std::sqrt(epsilon);
  const double lo = profile.r_min(), hi = profile.r_max();
  const int n = options.scan_samples;
  auto radius_at = [&](int i) { return i == n - 1 ? hi : lo + (hi - lo) * i / (n - 1); };

  double r_prev = radius_at(0);
  double f_prev = profile.beta(r_prev) - target;
  if (f_prev == 0.0) report.roots.push_back(r_prev);
  for (int i = 1; i < n; ++i) {
    const double r = radius_at(i);
    const double f = profile.beta(r) - target;
    if (f == 0.0) {
      report.roots.push_back(r);
    } else if (f_prev != 0.0 && (f < 0.0) != (f_prev < 0.0)) {
      report.roots.push_back(bisect(profile, target, r_prev, r, options.relative_tolerance));
    }
    r_prev = r;
    f_prev = f;
  }

  if (report.roots.empty()) return report;

  if (report.roots.size() > 1) {
    std::ostringstream msg;
    msg << "multiple ergosurfaces (nested horizons) at r =";
    msg.precision(12);
    for (double r : report.roots) msg << ' ' << r;
    report.warnings.push_back(msg.str());
  }
  report.radius = report.roots.back();
  report.beta_h = profile.beta(report.radius);
  report.kind = profile.direction() == FlowDirection::inward ? HorizonKind::black
                                                              : HorizonKind::white;
  return report;
}

HorizonKind classify(const FlowProfile& profile, double epsilon) {
  const HorizonReport h = find_ergosurface(profile, epsilon);
  if (h.kind == HorizonKind::none)
    throw NoHorizonError("flow profile has no horizon for this permittivity");
  return h.kind;
}

double surface_gravity_at(const FlowProfile& profile, double epsilon, double r_h) {
  const double denom = 1.0 - 1.0 / epsilon;
  if (!(denom > 1e-12))
    throw SingularError("surface gravity is singular as epsilon -> 1 (1 - beta_h^2 -> 0)");
  return std::abs(profile.dbeta_dr(r_h)) / denom;
}

double surface_gravity(const FlowProfile& profile, double epsilon) {
  const HorizonReport h = find_ergosurface(profile, epsilon);
  if (h.kind == HorizonKind::none)
    throw NoHorizonError("surface gravity requested for a profile without horizon");
  return surface_gravity_at(profile, epsilon, h.radius);
}

double hawking_temperature(double kappa, double length_scale_m) {
  if (!(kappa >= 0.0)) throw DomainError("surface gravity must be >= 0");
  if (!(length_scale_m > 0.0)) throw DomainError("length scale must be > 0");
  return (kappa / length_scale_m) * si::hbar * si::c / (si::hawking_denominator * si::k_boltzmann);
}

double temperature_estimate(double refractive_index, double radius_m) {
  if (!(refractive_index >= 1.0)) throw DomainError("refractive index must be >= 1");
  if (!(radius_m > 0.0)) throw DomainError("radius must be > 0");
  return si::hbar * si::c / (si::k_boltzmann * refractive_index * radius_m);
}

std::vector<double> planck_spectrum(double temperature, std::span<const double> omega) {
  if (!(temperature > 0.0)) throw DomainError("temperature must be > 0");
  std::vector<double> occupation;
  occupation.reserve(omega.size());
  const double scale = si::hbar / (si::k_boltzmann * temperature);
  // exp(x) overflows a double near x ≈ 709.78.
  constexpr double kTail = 700.0;
  for (double w : omega) {
    if (!(w > 0.0)) throw DomainError("spectrum frequencies must be > 0");
    const double x = scale * w;
    occupation.push_back(x > kTail ? 0.0 : 1.0 / std::expm1(x));
  }
  return occupation;
}

HorizonReport analyze_horizon(const FlowProfile& profile, double epsilon, double length_scale_m,
                              const HorizonSearchOptions& options) {
  HorizonReport h = find_ergosurface(profile, epsilon, options);
  if (h.kind == HorizonKind::none) return h;
  h.kappa = surface_gravity_at(profile, epsilon, h.radius);
  h.temperature = hawking_temperature(h.kappa, length_scale_m);
  h.estimate = temperature_estimate(std::sqrt(epsilon), h.radius * length_scale_m);
  return h;
}

} // namespace gordon
