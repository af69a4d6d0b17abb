#pragma once

#include <span>
#include <variant>
#include <vector>

namespace gordon {

enum class FlowDirection { inward, outward };

/// β(r) = β0 (r0 / r)^p
struct PowerLawFlow {
  double beta0 = 0.0;
  double r0 = 1.0;
  double exponent = 1.0;
};

/// β(r) = β_near + (β_far − β_near) · ½(1 + tanh((r − r_c)/w))
struct TanhStepFlow {
  double beta_far = 0.0;
  double beta_near = 0.0;
  double r_center = 1.0;
  double width = 1.0;
};

/// Monotone cubic (Fritsch–Carlson) interpolant through (r, β) samples.
struct TabulatedFlow {
  std::vector<double> r;
  std::vector<double> beta;
  std::vector<double> slope;  // node derivatives, filled at construction
};

/// Radial medium flow β(r) r̂ (magnitude β ≥ 0, direction carried separately).
/// Invariant: 0 ≤ β < 1 on [r_min, r_max].
class FlowProfile {
public:
  using Family = std::variant<PowerLawFlow, TanhStepFlow, TabulatedFlow>;

  static FlowProfile power_law(double beta0, double r0, double exponent, FlowDirection dir,
                               double r_min, double r_max);
  static FlowProfile tanh_step(double beta_far, double beta_near, double r_center, double width,
                               FlowDirection dir, double r_min, double r_max);
  /// Domain is the sample range. Samples must be strictly increasing in r.
  static FlowProfile tabulated(std::vector<double> r, std::vector<double> beta, FlowDirection dir);

  /// Speed magnitude. Parametric families are evaluated from their formula
  /// anywhere r > 0; tables extrapolate linearly past their ends.
  double beta(double r) const;
  double dbeta_dr(double r) const;

  /// Signed radial velocity v = ±β (negative for inward flow).
  double velocity(double r) const { return sign() * beta(r); }
  double dvelocity_dr(double r) const { return sign() * dbeta_dr(r); }

  FlowDirection direction() const noexcept { return direction_; }
  double r_min() const noexcept { return r_min_; }
  double r_max() const noexcept { return r_max_; }
  bool contains(double r) const noexcept { return r >= r_min_ && r <= r_max_; }
  const Family& family() const noexcept { return family_; }

  /// Same β(r) with the direction reversed (black ↔ white hole).
  FlowProfile reversed() const;

private:
  FlowProfile(Family family, FlowDirection dir, double r_min, double r_max);
  double sign() const noexcept { return direction_ == FlowDirection::inward ? -1.0 : 1.0; }
  void validate() const;

  Family family_;
  FlowDirection direction_;
  double r_min_;
  double r_max_;
};

/// Samples an existing profile onto a uniform table of n points over its domain.
FlowProfile tabulate(const FlowProfile& profile, std::size_t n);

} // namespace gordon
