#include <cmath>
#include <vector>

#include "doctest.h"
#include "gordon/errors.hpp"
#include "gordon/flow.hpp"
#include "gordon/radial.hpp"
#include "support/oracles.hpp"

using namespace gordon;

TEST_CASE("power-law flow") {
  const FlowProfile f = FlowProfile::power_law(0.8, 1.0, 1.0, FlowDirection::inward, 0.9, 8.0);
  CHECK(f.beta(1.6) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(f.dbeta_dr(1.6) == doctest::Approx(-0.3125).epsilon(1e-15));
  CHECK(f.velocity(2.0) == doctest::Approx(-0.4).epsilon(1e-15));
  CHECK(f.dvelocity_dr(2.0) == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(f.contains(0.9));
  CHECK(f.contains(8.0));
  CHECK_FALSE(f.contains(8.01));

  const FlowProfile w = f.reversed();
  CHECK(w.direction() == FlowDirection::outward);
  CHECK(w.velocity(2.0) == doctest::Approx(0.4).epsilon(1e-15));
  CHECK(w.beta(3.0) == f.beta(3.0));
}

TEST_CASE("flow construction validates speed and domain") {
  CHECK_THROWS_AS(FlowProfile::power_law(0.8, 1.0, 1.0, FlowDirection::inward, 0.7, 8.0), DomainError);
  CHECK_THROWS_AS(FlowProfile::power_law(0.8, 1.0, 1.0, FlowDirection::inward, 2.0, 1.0), DomainError);
  CHECK_THROWS_AS(FlowProfile::power_law(-0.1, 1.0, 1.0, FlowDirection::inward, 1.0, 2.0), DomainError);
  CHECK_THROWS_AS(FlowProfile::tanh_step(0.1, 1.2, 2.0, 0.5, FlowDirection::inward, 1.0, 4.0), DomainError);
  CHECK_THROWS_AS(FlowProfile::tanh_step(0.1, 0.7, 2.0, 0.0, FlowDirection::inward, 1.0, 4.0), DomainError);
  CHECK_THROWS_AS(FlowProfile::tabulated({1.0, 1.0}, {0.1, 0.2}, FlowDirection::inward), DomainError);
  CHECK_THROWS_AS(FlowProfile::tabulated({1.0, 2.0}, {0.1, 1.0}, FlowDirection::inward), DomainError);
  CHECK_THROWS_AS(FlowProfile::tabulated({1.0}, {0.1}, FlowDirection::inward), DomainError);
}

TEST_CASE("tanh step flow") {
  const FlowProfile f = FlowProfile::tanh_step(0.2, 0.8, 3.0, 0.5, FlowDirection::inward, 1.0, 6.0);
  CHECK(f.beta(3.0) == doctest::Approx(0.5).epsilon(1e-15));
  // dβ/dr at the centre: (β_far − β_near) / (2w)
  CHECK(f.dbeta_dr(3.0) == doctest::Approx(-0.6).epsilon(1e-14));
  const double h = 1e-5;
  for (double r : {1.5, 2.7, 3.4, 5.0})
    CHECK(f.dbeta_dr(r) == doctest::Approx((f.beta(r + h) - f.beta(r - h)) / (2 * h)).epsilon(1e-8));
}

TEST_CASE("tabulated flow interpolates its samples and stays monotone") {
  const std::vector<double> r{1.0, 1.5, 2.0, 3.0, 4.5, 6.0};
  const std::vector<double> beta{0.9, 0.7, 0.55, 0.35, 0.2, 0.1};
  const FlowProfile f = FlowProfile::tabulated(r, beta, FlowDirection::inward);
  for (std::size_t i = 0; i < r.size(); ++i) CHECK(f.beta(r[i]) == doctest::Approx(beta[i]).epsilon(1e-15));
  double prev = f.beta(1.0);
  for (int i = 1; i <= 500; ++i) {
    const double x = 1.0 + 5.0 * i / 500.0;
    const double b = f.beta(x);
    CHECK(b <= prev + 1e-15);
    prev = b;
  }
  const double h = 1e-6;
  for (double x : {1.2, 1.77, 2.5, 3.9, 5.5})
    CHECK(f.dbeta_dr(x) == doctest::Approx((f.beta(x + h) - f.beta(x - h)) / (2 * h)).epsilon(1e-6));
}

TEST_CASE("tabulating a smooth profile reproduces it") {
  const FlowProfile f = FlowProfile::power_law(0.8, 1.0, 1.0, FlowDirection::inward, 0.9, 8.0);
  const FlowProfile t = tabulate(f, 2001);
  CHECK(t.r_min() == f.r_min());
  CHECK(t.r_max() == f.r_max());
  for (double r : {1.0, 1.6, 2.345, 5.0, 7.9}) CHECK(t.beta(r) == doctest::Approx(f.beta(r)).epsilon(1e-8));
}

TEST_CASE("radial metric blocks") {
  const FlowProfile still = FlowProfile::power_law(0.0, 1.0, 1.0, FlowDirection::inward, 1.0, 2.0);
  const RadialMetric g = radial_metric(still, 4.0, 1.5);
  CHECK(g.g00 == doctest::Approx(0.25));
  CHECK(g.g01 == 0.0);
  CHECK(g.g11 == -1.0);
  const RadialInverseMetric gi = radial_inverse_metric(still, 4.0, 1.5);
  CHECK(gi.tt == 4.0);
  CHECK(gi.tr == 0.0);
  CHECK(gi.rr == -1.0);
}

TEST_CASE("property: radial blocks are mutual inverses with determinant -epsilon") {
  oracle::Rng rng(21);
  for (int k = 0; k < 500; ++k) {
    const double eps = rng.uniform(1.0, 50.0);
    const double beta0 = rng.uniform(0.0, 0.95);
    const FlowDirection dir = rng.uniform() < 0.5 ? FlowDirection::inward : FlowDirection::outward;
    const FlowProfile f = FlowProfile::power_law(beta0, 1.0, rng.uniform(0.5, 2.0), dir, 1.0, 10.0);
    const double r = rng.uniform(1.0, 10.0);
    const RadialInverseMetric up = radial_inverse_metric(f, eps, r);
    const RadialMetric dn = radial_metric(f, eps, r);
    const double scale = std::abs(up.tt) + std::abs(up.rr);
    CHECK(std::abs(up.tt * up.rr - up.tr * up.tr + eps) < 1e-12 * eps * scale * scale);
    CHECK(std::abs(up.tt * dn.g00 + up.tr * dn.g01 - 1.0) < 1e-12 * scale * scale);
    CHECK(std::abs(up.tt * dn.g01 + up.tr * dn.g11) < 1e-12 * scale * scale);
    CHECK(std::abs(up.tr * dn.g01 + up.rr * dn.g11 - 1.0) < 1e-12 * scale * scale);

    // analytic radial derivatives against central differences
    const double h = 1e-6 * r;
    if (f.contains(r - h) && f.contains(r + h)) {
      const RadialInverseMetric a = radial_inverse_metric(f, eps, r - h);
      const RadialInverseMetric b = radial_inverse_metric(f, eps, r + h);
      CHECK(up.d_tt == doctest::Approx((b.tt - a.tt) / (2 * h)).epsilon(1e-6).scale(scale));
      CHECK(up.d_tr == doctest::Approx((b.tr - a.tr) / (2 * h)).epsilon(1e-6).scale(scale));
      CHECK(up.d_rr == doctest::Approx((b.rr - a.rr) / (2 * h)).epsilon(1e-6).scale(scale));
    }
  }
}

TEST_CASE("property: null speeds follow relativistic velocity addition") {
  oracle::Rng rng(22);
  for (int k = 0; k < 1000; ++k) {
    const double eps = rng.uniform(1.0, 50.0);
    const FlowDirection dir = rng.uniform() < 0.5 ? FlowDirection::inward : FlowDirection::outward;
    const FlowProfile f = FlowProfile::power_law(rng.uniform(0.0, 0.95), 1.0, 1.0, dir, 1.0, 10.0);
    const double r = rng.uniform(1.0, 10.0);
    const double v = f.velocity(r);
    const double n = std::sqrt(eps);
    const NullSpeeds w = null_speeds(f, eps, r);
    CHECK(w.outgoing == doctest::Approx(oracle::light_speed_in_flow(v, n, +1)).epsilon(1e-12).scale(1.0));
    CHECK(w.ingoing == doctest::Approx(oracle::light_speed_in_flow(v, n, -1)).epsilon(1e-12).scale(1.0));
    CHECK(w.outgoing >= w.ingoing);
  }
}

TEST_CASE("null speeds in simple media") {
  const FlowProfile still = FlowProfile::power_law(0.0, 1.0, 1.0, FlowDirection::inward, 1.0, 2.0);
  CHECK(null_speeds(still, 1.0, 1.5).outgoing == 1.0);
  CHECK(null_speeds(still, 1.0, 1.5).ingoing == -1.0);
  CHECK(null_speeds(still, 4.0, 1.5).outgoing == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(null_speeds(still, 4.0, 1.5).ingoing == doctest::Approx(-0.5).epsilon(1e-15));
  // marginal ray at β² = 1/ε
  const FlowProfile bh = FlowProfile::power_law(0.8, 1.0, 1.0, FlowDirection::inward, 0.9, 8.0);
  CHECK(std::abs(null_speeds(bh, 4.0, 1.6).outgoing) < 1e-15);
  CHECK(null_speeds(bh, 4.0, 1.6).ingoing < -0.5);
}
