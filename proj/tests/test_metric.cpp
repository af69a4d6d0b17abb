#include <cmath>

#include "doctest.h"
#include "gordon/errors.hpp"
#include "gordon/metric.hpp"
#include "support/oracles.hpp"

using namespace gordon;

namespace {

bool equals(const Mat4& a, const Mat4& b) {
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (a[i][j] != b[i][j]) return false;
  return true;
}

double max_identity_error(const Mat4& m) {
  long double worst = 0.0L;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) worst = std::max(worst, std::fabs(m[i][j] - (i == j ? 1.0L : 0.0L)));
  return static_cast<double>(worst);
}

FieldStrength random_field(oracle::Rng& rng) { return {rng.vector(2.0), rng.vector(2.0)}; }

} // namespace

TEST_CASE("four-velocity") {
  const FourVelocity rest = four_velocity({0, 0, 0});
  CHECK(rest.upper() == Vec4{1, 0, 0, 0});

  const FourVelocity u = four_velocity({0.6, 0, 0});
  CHECK(static_cast<double>(u.upper()[0]) == doctest::Approx(1.25).epsilon(1e-15));
  CHECK(static_cast<double>(u.upper()[1]) == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(u.upper()[2] == 0.0L);
  CHECK(u.upper()[3] == 0.0L);

  CHECK_THROWS_AS(four_velocity({1.0, 0, 0}), SuperluminalError);
  CHECK_THROWS_AS(four_velocity({0.6, 0.6, 0.6}), SuperluminalError);

  oracle::Rng rng(3);
  for (int k = 0; k < 100; ++k) {
    const Vec4 up = four_velocity(rng.velocity(0.99)).upper();
    const long double norm = up[0] * up[0] - up[1] * up[1] - up[2] * up[2] - up[3] * up[3];
    CHECK(static_cast<double>(std::fabs(norm - 1.0L)) < 1e-15);
  }
}

TEST_CASE("contravariant metric examples") {
  oracle::Rng rng(4);
  for (int k = 0; k < 20; ++k)
    CHECK(equals(contravariant_metric(1.0, four_velocity(rng.velocity(0.99))).components, minkowski));

  const Mat4 rest = contravariant_metric(4.0, four_velocity({0, 0, 0})).components;
  CHECK(equals(rest, Mat4{{{4, 0, 0, 0}, {0, -1, 0, 0}, {0, 0, -1, 0}, {0, 0, 0, -1}}}));

  // γ² = 4/3 at β = 0.5
  const MetricTensor g = contravariant_metric(2.0, four_velocity({0.5, 0, 0}));
  CHECK(static_cast<double>(g(0, 0)) == doctest::Approx(7.0 / 3.0).epsilon(1e-15));
  CHECK(static_cast<double>(g(0, 1)) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(static_cast<double>(g(1, 0)) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(static_cast<double>(g(1, 1)) == doctest::Approx(-2.0 / 3.0).epsilon(1e-15));
  CHECK(g(2, 2) == -1.0L);
  CHECK(g(3, 3) == -1.0L);
  CHECK(g(0, 2) == 0.0L);
  CHECK(g(1, 3) == 0.0L);
  CHECK(g.variance == Variance::contravariant);

  CHECK_THROWS_AS(contravariant_metric(0.999, four_velocity({0, 0, 0})), DomainError);
}

TEST_CASE("covariant metric examples") {
  oracle::Rng rng(5);
  for (int k = 0; k < 20; ++k)
    CHECK(equals(covariant_metric(1.0, four_velocity(rng.velocity(0.99))).components, minkowski));
  const Mat4 rest = covariant_metric(4.0, four_velocity({0, 0, 0})).components;
  CHECK(equals(rest, Mat4{{{0.25, 0, 0, 0}, {0, -1, 0, 0}, {0, 0, -1, 0}, {0, 0, 0, -1}}}));
  CHECK(covariant_metric(4.0, four_velocity({0, 0, 0})).variance == Variance::covariant);
  CHECK_THROWS_AS(covariant_metric(0.5, four_velocity({0, 0, 0})), DomainError);
}

TEST_CASE("determinant") {
  CHECK(metric_determinant(contravariant_metric(1.0, four_velocity({0, 0, 0}))) == -1.0L);
  CHECK(metric_determinant(contravariant_metric(4.0, four_velocity({0, 0, 0}))) == -4.0L);
  const MetricTensor g = contravariant_metric(2.0, four_velocity({0.5, 0.3, 0}));
  CHECK(oracle::relative_error(metric_determinant(g), -2.0L) < 1e-15);
  CHECK(oracle::relative_error(oracle::elimination_det(g.components), -2.0L) < 1e-15);
}

TEST_CASE("property: covariant metric is the matrix inverse of the contravariant one") {
  oracle::Rng rng(6);
  for (int k = 0; k < 2000; ++k) {
    const double eps = rng.uniform(1.0, 100.0);
    const FourVelocity u = four_velocity(rng.velocity(0.99));
    const Mat4 up = contravariant_metric(eps, u).components;
    const Mat4 down = covariant_metric(eps, u).components;
    CHECK(max_identity_error(multiply(down, up)) < 1e-12);
    CHECK(max_identity_error(multiply(up, down)) < 1e-12);
    // against an independent elimination
    const Mat4 ref = oracle::inverse(up);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        CHECK(static_cast<double>(std::fabs(ref[i][j] - down[i][j])) < 1e-12 * (1.0 + std::fabs(static_cast<double>(down[i][j]))));
  }
}

TEST_CASE("property: det of the contravariant metric is -epsilon for any flow") {
  oracle::Rng rng(8);
  for (int k = 0; k < 2000; ++k) {
    const double eps = rng.uniform(1.0, 100.0);
    const MetricTensor g = contravariant_metric(eps, four_velocity(rng.velocity(0.99)));
    CHECK(oracle::relative_error(metric_determinant(g), -eps) < 1e-12);
    CHECK(oracle::relative_error(oracle::elimination_det(g.components), -eps) < 1e-12);
  }
}

TEST_CASE("property: signature and volume factor") {
  oracle::Rng rng(9);
  for (int k = 0; k < 200; ++k) {
    const double eps = rng.uniform(1.0, 100.0);
    const FourVelocity u = four_velocity(rng.velocity(0.99));
    CHECK(is_lorentzian(contravariant_metric(eps, u)));
    CHECK(is_lorentzian(covariant_metric(eps, u)));
    const auto ev = symmetric_eigenvalues(contravariant_metric(eps, u).components);
    const long double product = ev[0] * ev[1] * ev[2] * ev[3];
    CHECK(oracle::relative_error(product, -eps) < 1e-10);
  }
  CHECK(volume_factor(4.0) == 2.0L);
  CHECK(volume_factor(1.0) == 1.0L);
}

TEST_CASE("rest-frame Lagrangian") {
  CHECK(lagrangian_rest({}, 3.0) == 0.0L);
  CHECK(lagrangian_rest({{1, 0, 0}, {0, 0, 0}}, 2.0) == 1.0L);
  CHECK(lagrangian_rest({{1, 1, 1}, {1, 1, 1}}, 1.0) == 0.0L);
}

TEST_CASE("covariant and geometric Lagrangians") {
  const FourVelocity rest = four_velocity({0, 0, 0});
  CHECK(lagrangian_covariant({}, four_velocity({0.3, -0.2, 0.1}), 5.0) == 0.0L);
  CHECK(lagrangian_geometric({}, contravariant_metric(5.0, rest)) == 0.0L);

  oracle::Rng rng(10);
  for (int k = 0; k < 100; ++k) {
    const FieldStrength f = random_field(rng);
    long double e2 = 0, b2 = 0;
    for (int i = 0; i < 3; ++i) {
      e2 += (long double)f.electric[i] * f.electric[i];
      b2 += (long double)f.magnetic[i] * f.magnetic[i];
    }
    const long double vacuum = 0.5L * (e2 - b2);
    CHECK(oracle::relative_error(lagrangian_geometric(f, contravariant_metric(1.0, four_velocity(rng.velocity(0.99)))), vacuum) < 1e-14);
  }
}

TEST_CASE("property: rest-frame reduction is exact") {
  oracle::Rng rng(12);
  const FourVelocity rest = four_velocity({0, 0, 0});
  for (int k = 0; k < 500; ++k) {
    // dyadic inputs make every intermediate exactly representable
    const FieldStrength f{rng.dyadic(), rng.dyadic()};
    const double eps = rng.integer(4, 400) / 4.0;
    CHECK(lagrangian_covariant(f, rest, eps) == lagrangian_rest(f, eps));
    CHECK(lagrangian_geometric(f, contravariant_metric(eps, rest)) == lagrangian_rest(f, eps));
  }
  for (int k = 0; k < 500; ++k) {
    const FieldStrength f = random_field(rng);
    const double eps = rng.uniform(1.0, 100.0);
    const long double ref = lagrangian_rest(f, eps);
    CHECK(std::fabs(lagrangian_covariant(f, rest, eps) - ref) <= 1e-17L * (std::fabs(ref) + 1.0L));
  }
}

TEST_CASE("property: covariant, geometric and boosted-frame Lagrangians agree") {
  oracle::Rng rng(13);
  for (int k = 0; k < 1000; ++k) {
    const FieldStrength f = random_field(rng);
    const Vec3 beta = rng.velocity(0.99);
    const double eps = rng.uniform(1.0, 100.0);
    const FourVelocity u = four_velocity(beta);
    const long double cov = lagrangian_covariant(f, u, eps);
    const long double geo = lagrangian_geometric(f, contravariant_metric(eps, u));
    const long double boosted = oracle::boosted_lagrangian(f.electric, f.magnetic, beta, eps);
    CHECK(oracle::relative_error(cov, geo) < 1e-12);
    CHECK(oracle::relative_error(cov, boosted) < 1e-12);
  }
}

TEST_CASE("field tensor convention") {
  const Mat4 f = field_tensor_lower({{1, 2, 3}, {4, 5, 6}});
  CHECK(f[0][1] == 1.0L);
  CHECK(f[0][2] == 2.0L);
  CHECK(f[0][3] == 3.0L);
  CHECK(f[1][0] == -1.0L);
  CHECK(f[1][2] == -6.0L);
  CHECK(f[2][3] == -4.0L);
  CHECK(f[3][1] == -5.0L);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) CHECK(f[i][j] == -f[j][i]);
}
