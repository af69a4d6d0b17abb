#pragma once

#include <span>
#include <string>
#include <vector>

#include "gordon/flow.hpp"

namespace gordon {

enum class HorizonKind { none, black, white };

const char* to_string(HorizonKind kind) noexcept;

/// Horizon data in library units: radii in units of r0, κ in 1/r0.
/// Temperatures are in kelvin and are only filled by analyze_horizon.
struct HorizonReport {
  HorizonKind kind = HorizonKind::none;
  double radius = 0.0;
  double beta_h = 0.0;
  double kappa = 0.0;
  double temperature = 0.0;
  double estimate = 0.0;
  /// Every bracketed root of β(r) = 1/√ε, ascending. `radius` is the outermost.
  std::vector<double> roots;
  std::vector<std::string> warnings;
};

struct HorizonSearchOptions {
  int scan_samples = 512;
  double relative_tolerance = 1e-10;
};

/// Solves g_00 = 0, i.e. β(r)² = 1/ε, by a uniform bracket scan followed by
/// bisection. Returns kind = none when β − 1/√ε never changes sign.
/// Fills radius, kind, beta_h and roots only. Throws DomainError for ε < 1.
HorizonReport find_ergosurface(const FlowProfile& profile, double epsilon,
                               const HorizonSearchOptions& options = {});

/// Inward flow gives a black hole, outward a white hole.
/// Throws NoHorizonError if the profile has no horizon for this ε.
HorizonKind classify(const FlowProfile& profile, double epsilon);

/// κ = |dβ/dr| / (1 − β_h²) at the outermost horizon, with β_h² = 1/ε.
double surface_gravity(const FlowProfile& profile, double epsilon);

/// κ at a given horizon radius. Throws SingularError when 1 − 1/ε vanishes.
double surface_gravity_at(const FlowProfile& profile, double epsilon, double r_h);

/// T = κ ħ c / (4π k_B) with κ given per `length_scale_m` metres.
double hawking_temperature(double kappa, double length_scale_m);

/// Order-of-magnitude scale ħ c / (k_B n R).
double temperature_estimate(double refractive_index, double radius_m);

/// Bose–Einstein occupation 1/(exp(ħω / k_B T) − 1) for angular frequencies
/// in rad/s. Underflows cleanly to 0 in the Wien tail.
std::vector<double> planck_spectrum(double temperature, std::span<const double> omega);

/// Full report: roots, classification, κ, T(κ) and the estimate,
/// with r0 = `length_scale_m` metres.
HorizonReport analyze_horizon(const FlowProfile& profile, double epsilon, double length_scale_m,
                              const HorizonSearchOptions& options = {});

} // namespace gordon
