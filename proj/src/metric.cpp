#include "gordon/metric.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "gordon/errors.hpp"

namespace gordon {

namespace {

void require_epsilon(double epsilon) {
  if (!(epsilon >= 1.0) || !std::isfinite(epsilon))
    throw DomainError("permittivity must satisfy epsilon >= 1");
}

Mat4 raise_both(const Mat4& lower_f) {
  // η is diagonal, so raising both indices only flips signs.
  Mat4 upper{};
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n) upper[m][n] = minkowski[m][m] * minkowski[n][n] * lower_f[m][n];
  return upper;
}

} // namespace

FourVelocity FourVelocity::from_beta(const Vec3& beta) {
  const metric_real b2 = metric_real(beta[0]) * beta[0] + metric_real(beta[1]) * beta[1] +
                         metric_real(beta[2]) * beta[2];
  if (!(b2 < 1.0L))
    throw SuperluminalError("medium speed must be below the vacuum speed of light (|beta| < 1)");
  const metric_real gamma = 1.0L / std::sqrt(1.0L - b2);
  FourVelocity u;
  u.u_ = {gamma, gamma * beta[0], gamma * beta[1], gamma * beta[2]};
  return u;
}

FourVelocity four_velocity(const Vec3& beta) { return FourVelocity::from_beta(beta); }

MetricTensor contravariant_metric(double epsilon, const FourVelocity& u) {
  require_epsilon(epsilon);
  const metric_real k = metric_real(epsilon) - 1.0L;
  const Vec4& up = u.upper();
  MetricTensor g{minkowski, Variance::contravariant};
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n) g.components[m][n] += k * up[m] * up[n];
  return g;
}

MetricTensor covariant_metric(double epsilon, const FourVelocity& u) {
  require_epsilon(epsilon);
  const metric_real k = (metric_real(epsilon) - 1.0L) / metric_real(epsilon);
  const Vec4 low = u.lower();
  MetricTensor g{minkowski, Variance::covariant};
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n) g.components[m][n] -= k * low[m] * low[n];
  return g;
}

metric_real metric_determinant(const MetricTensor& g) {
  Mat4 a = g.components;
  metric_real det = 1.0L;
  for (int col = 0; col < 4; ++col) {
    int pivot = col;
    for (int row = col + 1; row < 4; ++row)
      if (std::abs(a[row][col]) > std::abs(a[pivot][col])) pivot = row;
    if (a[pivot][col] == 0.0L) return 0.0L;
    if (pivot != col) {
      std::swap(a[pivot], a[col]);
      det = -det;
    }
    det *= a[col][col];
    for (int row = col + 1; row < 4; ++row) {
      const metric_real f = a[row][col] / a[col][col];
      for (int k = col + 1; k < 4; ++k) a[row][k] -= f * a[col][k];
    }
  }
  return det;
}

Mat4 multiply(const Mat4& a, const Mat4& b) {
  Mat4 c{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      metric_real s = 0.0L;
      for (int k = 0; k < 4; ++k) s += a[i][k] * b[k][j];
      c[i][j] = s;
    }
  return c;
}

std::array<metric_real, 4> symmetric_eigenvalues(const Mat4& m) {
  Mat4 a = m;
  for (int sweep = 0; sweep < 64; ++sweep) {
    metric_real off = 0.0L, scale = 0.0L;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) (i == j ? scale : off) += a[i][j] * a[i][j];
    if (off <= 1e-36L * scale) break;
    for (int p = 0; p < 3; ++p)
      for (int q = p + 1; q < 4; ++q) {
        if (a[p][q] == 0.0L) continue;
        const metric_real theta = (a[q][q] - a[p][p]) / (2.0L * a[p][q]);
        const metric_real t = (theta >= 0 ? 1.0L : -1.0L) /
                              (std::abs(theta) + std::sqrt(theta * theta + 1.0L));
        const metric_real c = 1.0L / std::sqrt(t * t + 1.0L);
        const metric_real s = t * c;
        for (int k = 0; k < 4; ++k) {
          const metric_real akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (int k = 0; k < 4; ++k) {
          const metric_real apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
      }
  }
  std::array<metric_real, 4> ev{a[0][0], a[1][1], a[2][2], a[3][3]};
  std::sort(ev.begin(), ev.end());
  return ev;
}

bool is_lorentzian(const MetricTensor& g, metric_real symmetry_tol) {
  metric_real scale = 0.0L;
  for (const auto& row : g.components)
    for (metric_real v : row) scale = std::max(scale, std::abs(v));
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (std::abs(g(i, j) - g(j, i)) > symmetry_tol * std::max(scale, 1.0L)) return false;
  const auto ev = symmetric_eigenvalues(g.components);
  return ev[0] < 0 && ev[1] < 0 && ev[2] < 0 && ev[3] > 0;
}

metric_real volume_factor(double epsilon) {
  require_epsilon(epsilon);
  return std::sqrt(metric_real(epsilon));
}

Mat4 field_tensor_lower(const FieldStrength& f) {
  const auto& e = f.electric;
  const auto& b = f.magnetic;
  Mat4 F{};
  for (int i = 0; i < 3; ++i) {
    F[0][i + 1] = e[i];
    F[i + 1][0] = -e[i];
  }
  F[1][2] = -b[2];
  F[2][1] = b[2];
  F[2][3] = -b[0];
  F[3][2] = b[0];
  F[3][1] = -b[1];
  F[1][3] = b[1];
  return F;
}

metric_real lagrangian_rest(const FieldStrength& f, double epsilon) {
  metric_real e2 = 0.0L, b2 = 0.0L;
  for (int i = 0; i < 3; ++i) {
    e2 += metric_real(f.electric[i]) * f.electric[i];
    b2 += metric_real(f.magnetic[i]) * f.magnetic[i];
  }
  return 0.5L * (metric_real(epsilon) * e2 - b2);
}

metric_real lagrangian_covariant(const FieldStrength& f, const FourVelocity& u, double epsilon) {
  const Mat4 lo = field_tensor_lower(f);
  const Mat4 up = raise_both(lo);
  const Vec4& uu = u.upper();
  const Vec4 ul = u.lower();

  metric_real invariant = 0.0L;
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n) invariant += lo[m][n] * up[m][n];

  // (F_{μν} u^ν)(F^{μλ} u_λ)
  metric_real coupling = 0.0L;
  for (int m = 0; m < 4; ++m) {
    metric_real a = 0.0L, b = 0.0L;
    for (int n = 0; n < 4; ++n) {
      a += lo[m][n] * uu[n];
      b += up[m][n] * ul[n];
    }
    coupling += a * b;
  }
  return -0.25L * invariant - 0.5L * (metric_real(epsilon) - 1.0L) * coupling;
}

metric_real lagrangian_geometric(const FieldStrength& f, const MetricTensor& g) {
  const Mat4 lo = field_tensor_lower(f);
  // gf^{μ}_{σ} = g^{μρ} F_{ρσ}
  Mat4 gf{};
  for (int m = 0; m < 4; ++m)
    for (int s = 0; s < 4; ++s) {
      metric_real acc = 0.0L;
      for (int r = 0; r < 4; ++r) acc += g(m, r) * lo[r][s];
      gf[m][s] = acc;
    }
  metric_real total = 0.0L;
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n) {
      metric_real upper_mn = 0.0L;  // g^{μρ} F_{ρσ} g^{νσ}
      for (int s = 0; s < 4; ++s) upper_mn += gf[m][s] * g(n, s);
      total += lo[m][n] * upper_mn;
    }
  return -0.25L * total;
}

} // namespace gordon
