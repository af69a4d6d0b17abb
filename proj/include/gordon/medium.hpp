#pragma once

#include <optional>
#include <span>
#include <vector>

namespace gordon {

/// One localized oscillator of the medium, reduced to a scalar coupling.
/// Natural units (c = 1); frequencies are relative to a user-chosen scale.
struct OscillatorMode {
  double coupling = 0.0;   // χ ≥ 0
  double frequency = 1.0;  // Ω > 0
};

/// Dielectric medium: either a bath of oscillator modes or a directly
/// specified (non-dispersive) permittivity.
class MediumModel {
public:
  static constexpr double kDefaultResonanceGuard = 1e-6;

  /// Throws DomainError for Ω ≤ 0 or χ < 0.
  static MediumModel from_modes(std::vector<OscillatorMode> modes,
                                double resonance_guard = kDefaultResonanceGuard);
  /// Throws DomainError for ε < 1.
  static MediumModel direct(double epsilon);

  bool is_direct() const noexcept { return direct_.has_value(); }
  std::span<const OscillatorMode> modes() const noexcept { return modes_; }
  double resonance_guard() const noexcept { return guard_; }
  std::optional<double> direct_permittivity() const noexcept { return direct_; }

  /// Smallest Ω among the modes, or +inf for direct / empty models.
  double min_frequency() const noexcept;

private:
  MediumModel() = default;

  std::vector<OscillatorMode> modes_;
  std::optional<double> direct_;
  double guard_ = kDefaultResonanceGuard;
};

/// ε = 1 + Σ χ²/Ω².
double static_permittivity(const MediumModel& model);

/// ε(ω) = 1 + Σ χ²/(Ω² − ω²). Throws ResonanceError when
/// |Ω² − ω²| < guard·Ω² for any mode, DomainError for ω < 0.
double dispersive_permittivity(const MediumModel& model, double omega);

/// Local-operator expansion of ε(ω) kept to order n_terms:
/// 1 + Σ (χ²/Ω²) Σ_{k=0..n} (ω²/Ω²)^k. Throws DivergenceError for ω ≥ min Ω.
double truncated_permittivity(const MediumModel& model, double omega, int n_terms);

/// n = √ε (static).
double refractive_index(const MediumModel& model);

} // namespace gordon
