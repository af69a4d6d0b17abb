#pragma once

#include <array>

namespace gordon {

// The Gordon metric of a fast flow is badly conditioned: for ε = 100 and
// |β| = 0.99 its largest entry is ~5·10³ while the determinant stays −ε.
// Components are therefore carried in extended precision; a double-rounded
// tensor cannot satisfy the inverse identity to 1e-12.
using metric_real = long double;

using Vec3 = std::array<double, 3>;
using Vec4 = std::array<metric_real, 4>;
using Mat4 = std::array<std::array<metric_real, 4>, 4>;

enum class Variance { contravariant, covariant };

/// Minkowski metric diag(+1, −1, −1, −1); it is its own inverse.
inline constexpr Mat4 minkowski{{{1, 0, 0, 0}, {0, -1, 0, 0}, {0, 0, -1, 0}, {0, 0, 0, -1}}};

/// Medium four-velocity u^μ = γ(1, β), normalized u_μ u^μ = 1.
class FourVelocity {
public:
  FourVelocity() = default;

  const Vec4& upper() const noexcept { return u_; }
  /// u_μ, lowered with the Minkowski metric.
  Vec4 lower() const noexcept { return {u_[0], -u_[1], -u_[2], -u_[3]}; }
  metric_real gamma() const noexcept { return u_[0]; }

  /// Throws SuperluminalError when |β| ≥ 1.
  static FourVelocity from_beta(const Vec3& beta);

private:
  Vec4 u_{1, 0, 0, 0};
};

struct MetricTensor {
  Mat4 components{};
  Variance variance = Variance::contravariant;

  metric_real operator()(int mu, int nu) const { return components[mu][nu]; }
};

struct FieldStrength {
  Vec3 electric{};
  Vec3 magnetic{};
};

/// u^μ = (1, β)/√(1 − β²). Throws SuperluminalError for |β| ≥ 1.
FourVelocity four_velocity(const Vec3& beta);

/// g^{μν} = η^{μν} + (ε − 1) u^μ u^ν. Throws DomainError for ε < 1.
MetricTensor contravariant_metric(double epsilon, const FourVelocity& u);

/// g_{μν} = η_{μν} − ((ε − 1)/ε) u_μ u_ν, the inverse of contravariant_metric.
MetricTensor covariant_metric(double epsilon, const FourVelocity& u);

/// General 4×4 determinant (partial-pivot LU). For a Gordon metric this is −ε.
metric_real metric_determinant(const MetricTensor& g);

/// Matrix product of the component arrays.
Mat4 multiply(const Mat4& a, const Mat4& b);

/// True when the symmetric component matrix has one positive and three
/// negative eigenvalues.
bool is_lorentzian(const MetricTensor& g, metric_real symmetry_tol = 1e-14L);

/// Eigenvalues of a symmetric 4×4 matrix, ascending (cyclic Jacobi).
std::array<metric_real, 4> symmetric_eigenvalues(const Mat4& m);

/// √ε: the constant four-volume factor √−g of the Gordon metric. It can be
/// absorbed into the length scale, so the stored components are never
/// rescaled by it.
metric_real volume_factor(double epsilon);

/// F_{μν} with lower indices: F_{0i} = E_i, F_{ij} = −ε_{ijk} B_k.
Mat4 field_tensor_lower(const FieldStrength& f);

/// ½(ε E² − B²), the rest-frame Lagrangian.
metric_real lagrangian_rest(const FieldStrength& f, double epsilon);

/// −¼ F_{μν} F^{μν} − ((ε − 1)/2) F_{μν} u^ν F^{μλ} u_λ, indices moved with η.
metric_real lagrangian_covariant(const FieldStrength& f, const FourVelocity& u, double epsilon);

/// −¼ F_{μν} g^{μρ} g^{νσ} F_{ρσ} with the effective (contravariant) metric.
metric_real lagrangian_geometric(const FieldStrength& f, const MetricTensor& g);

} // namespace gordon
