#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "gordon/constants.hpp"
#include "gordon/errors.hpp"
#include "gordon/horizon.hpp"
#include "support/oracles.hpp"

using namespace gordon;

namespace {

FlowProfile standard(FlowDirection dir = FlowDirection::inward) {
  return FlowProfile::power_law(0.8, 1.0, 1.0, dir, 0.9, 8.0);
}

// ħc/(4π k_B) evaluated independently in long double.
long double hawking_prefactor() {
  const long double hbar = 1.054571817e-34L, c = 299792458.0L, kb = 1.380649e-23L;
  return hbar * c / (4.0L * std::numbers::pi_v<long double> * kb);
}

} // namespace

TEST_CASE("horizon of the standard inward power law") {
  const HorizonReport h = find_ergosurface(standard(), 4.0);
  CHECK(h.kind == HorizonKind::black);
  CHECK(std::abs(h.radius - 1.6) / 1.6 < 1e-9);
  CHECK(h.roots.size() == 1);
  CHECK(h.beta_h == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(classify(standard(), 4.0) == HorizonKind::black);
  CHECK(classify(standard(FlowDirection::outward), 4.0) == HorizonKind::white);
  CHECK(find_ergosurface(standard(FlowDirection::outward), 4.0).radius == h.radius);
}

TEST_CASE("profiles without horizon") {
  const FlowProfile slow = FlowProfile::tanh_step(0.3, 0.3, 2.0, 1.0, FlowDirection::inward, 1.0, 5.0);
  CHECK(find_ergosurface(slow, 4.0).kind == HorizonKind::none);
  CHECK_THROWS_AS(classify(slow, 4.0), NoHorizonError);
  CHECK(find_ergosurface(standard(), 1.0).kind == HorizonKind::none);
  CHECK_THROWS_AS(find_ergosurface(standard(), 0.9), DomainError);
}

TEST_CASE("multiple crossings are all reported") {
  const FlowProfile bump = FlowProfile::tabulated({1, 2, 3, 4, 5}, {0.2, 0.7, 0.7, 0.2, 0.1}, FlowDirection::inward);
  const HorizonReport h = find_ergosurface(bump, 4.0);
  CHECK(h.roots.size() == 2);
  CHECK(h.radius == h.roots.back());
  CHECK_FALSE(h.warnings.empty());
}

TEST_CASE("surface gravity") {
  CHECK(std::abs(surface_gravity(standard(), 4.0) - 0.3125 / 0.75) / (0.3125 / 0.75) < 1e-8);

  // β = 0.5 + a (r − r_h) written as a table of a straight line
  const double a = -0.2, r_h = 2.0;
  std::vector<double> r, b;
  for (int i = 0; i <= 20; ++i) {
    r.push_back(1.0 + 0.1 * i);
    b.push_back(0.5 + a * (r.back() - r_h));
  }
  const FlowProfile line = FlowProfile::tabulated(r, b, FlowDirection::inward);
  CHECK(surface_gravity(line, 4.0) == doctest::Approx(-a / 0.75).epsilon(1e-8));

  // flat β through the horizon
  const FlowProfile flat = FlowProfile::tanh_step(0.5, 0.5, 2.0, 1.0, FlowDirection::inward, 1.0, 3.0);
  CHECK(surface_gravity_at(flat, 4.0, 2.0) == 0.0);
  CHECK_THROWS_AS(surface_gravity_at(standard(), 1.0, 1.6), SingularError);
}

TEST_CASE("Hawking temperature") {
  CHECK(hawking_temperature(0.0, 1.0) == 0.0);
  const double t1 = hawking_temperature(1.0, 1.0);
  CHECK(oracle::relative_error(t1, hawking_prefactor()) < 1e-12);
  CHECK(t1 == doctest::Approx(1.8222e-4).epsilon(1e-4));
  CHECK(hawking_temperature(2.0, 1.0) == doctest::Approx(2.0 * t1).epsilon(1e-15));
  CHECK(hawking_temperature(1.0, 1e-3) == doctest::Approx(1e3 * t1).epsilon(1e-14));
  CHECK_THROWS_AS(hawking_temperature(-1.0, 1.0), DomainError);
}

TEST_CASE("order-of-magnitude estimate") {
  const double hc_over_k = si::hbar * si::c / si::k_boltzmann;
  CHECK(temperature_estimate(1.0, hc_over_k) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(temperature_estimate(2.0, 0.01) == doctest::Approx(0.5 * temperature_estimate(1.0, 0.01)).epsilon(1e-15));
  const long double oracle_value = 1.054571817e-34L * 299792458.0L / (1.380649e-23L * 1.5L * 1e-3L);
  CHECK(oracle::relative_error(temperature_estimate(1.5, 1e-3), oracle_value) < 1e-12);
  CHECK(temperature_estimate(1.5, 1e-3) == doctest::Approx(1.5).epsilon(0.05));
}

TEST_CASE("occupation spectrum") {
  const double T = 2.0;
  const double w_ln2 = si::k_boltzmann * T * std::log(2.0) / si::hbar;
  const std::vector<double> omega{w_ln2, 1e30, si::k_boltzmann * T / si::hbar * 1e-6};
  const std::vector<double> n = planck_spectrum(T, omega);
  CHECK(n[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(n[1] == 0.0);
  CHECK(n[2] == doctest::Approx(1e6).epsilon(1e-6));
  CHECK_THROWS_AS(planck_spectrum(0.0, omega), DomainError);
  const std::vector<double> bad{0.0};
  CHECK_THROWS_AS(planck_spectrum(T, bad), DomainError);
}

TEST_CASE("full report") {
  const HorizonReport h = analyze_horizon(standard(), 4.0, 1e-3);
  CHECK(h.kind == HorizonKind::black);
  CHECK(h.kappa == doctest::Approx(0.3125 / 0.75).epsilon(1e-8));
  const long double expected = (0.3125L / 0.75L) / 1e-3L * hawking_prefactor();
  CHECK(oracle::relative_error(h.temperature, expected) < 1e-8);
  CHECK(h.estimate == doctest::Approx(temperature_estimate(2.0, 1.6e-3)).epsilon(1e-9));
}

TEST_CASE("property: horizon lies where beta^2 epsilon = 1") {
  oracle::Rng rng(31);
  for (int k = 0; k < 300; ++k) {
    const double eps = rng.uniform(1.5, 50.0);
    const double bh = 1.0 / std::sqrt(eps);
    const double p = rng.uniform(0.5, 2.5);
    const double r_h = rng.uniform(1.5, 4.0);
    const double beta0 = bh * std::pow(r_h, p);  // β = β0 r^-p
    const double r_min = r_h * std::pow(bh / 0.99, 1.0 / p) * 1.01;
    if (!(r_min < r_h)) continue;
    const FlowProfile f = FlowProfile::power_law(beta0, 1.0, p, FlowDirection::inward, r_min, 3.0 * r_h);
    const HorizonReport h = find_ergosurface(f, eps);
    REQUIRE(h.kind == HorizonKind::black);
    const double b = f.beta(h.radius);
    CHECK(std::abs(b * b * eps - 1.0) < 1e-9);
    CHECK(std::abs(h.radius - r_h) / r_h < 1e-9);
  }
}

TEST_CASE("property: surface gravity matches a finite difference and the sonic value") {
  oracle::Rng rng(32);
  for (int k = 0; k < 200; ++k) {
    const double eps = rng.uniform(1.5, 30.0);
    const double bh = 1.0 / std::sqrt(eps);
    FlowProfile f = FlowProfile::tanh_step(rng.uniform(0.0, 0.9 * bh), rng.uniform(1.1 * bh, 0.98),
                                           rng.uniform(2.0, 4.0), rng.uniform(0.2, 1.5),
                                           FlowDirection::inward, 0.1, 12.0);
    if (k % 2) f = FlowProfile::power_law(bh * std::pow(2.0, 1.3), 1.0, 1.3, FlowDirection::outward,
                                          2.0 * std::pow(bh / 0.95, 1.0 / 1.3), 9.0);
    const HorizonReport h = find_ergosurface(f, eps);
    REQUIRE(h.kind != HorizonKind::none);
    const double kappa = surface_gravity(f, eps);
    const double step = 1e-6 * h.radius;
    const double fd = std::abs(f.beta(h.radius + step) - f.beta(h.radius - step)) / (2.0 * step);
    CHECK(kappa == doctest::Approx(fd / (1.0 - 1.0 / eps)).epsilon(1e-8));
    // κ (1 − β_h²) is the non-relativistic value |dβ/dr|
    CHECK(kappa * (1.0 - h.beta_h * h.beta_h) == doctest::Approx(std::abs(f.dbeta_dr(h.radius))).epsilon(1e-8));
  }
}

TEST_CASE("property: temperature does not depend on how the profile is represented") {
  oracle::Rng rng(33);
  for (int k = 0; k < 30; ++k) {
    const double eps = rng.uniform(2.0, 10.0);
    const double bh = 1.0 / std::sqrt(eps);
    const FlowProfile f = FlowProfile::power_law(1.8 * bh, 1.0, 1.0, FlowDirection::inward, 2.0 * bh, 6.0);
    const FlowProfile t = tabulate(f, 4001);
    const double L = rng.uniform(1e-6, 1.0);
    const double a = hawking_temperature(surface_gravity(f, eps), L);
    const double b = hawking_temperature(surface_gravity(t, eps), L);
    CHECK(a == doctest::Approx(b).epsilon(1e-6));
  }
}
