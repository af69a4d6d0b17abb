#include "gordon/medium.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "gordon/errors.hpp"

namespace gordon {

MediumModel MediumModel::from_modes(std::vector<OscillatorMode> modes, double resonance_guard) {
  for (std::size_t i = 0; i < modes.size(); ++i) {
    const auto& m = modes[i];
    if (!(m.frequency > 0.0) || !std::isfinite(m.frequency))
      throw DomainError("oscillator mode " + std::to_string(i) + ": frequency must be > 0");
    if (!(m.coupling >= 0.0) || !std::isfinite(m.coupling))
      throw DomainError("oscillator mode " + std::to_string(i) + ": coupling must be >= 0");
  }
  if (!(resonance_guard > 0.0))
    throw DomainError("resonance guard must be > 0");
  MediumModel model;
  model.modes_ = std::move(modes);
  model.guard_ = resonance_guard;
  return model;
}

MediumModel MediumModel::direct(double epsilon) {
  if (!(epsilon >= 1.0) || !std::isfinite(epsilon))
    throw DomainError("permittivity must satisfy epsilon >= 1");
  MediumModel model;
  model.direct_ = epsilon;
  return model;
}

double MediumModel::min_frequency() const noexcept {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& mode : modes_) m = std::min(m, mode.frequency);
  return m;
}

double static_permittivity(const MediumModel& model) {
  if (auto eps = model.direct_permittivity()) return *eps;
  double eps = 1.0;
  for (const auto& m : model.modes()) {
    eps += m.coupling * m.coupling / (m.frequency * m.frequency);
  }
  return eps;
}

double dispersive_permittivity(const MediumModel& model, double omega) {
  if (!(omega >= 0.0)) throw DomainError("frequency must be >= 0");
  if (auto eps = model.direct_permittivity()) return *eps;
  if (omega == 0.0) return static_permittivity(model);

  double eps = 1.0;
  for (const auto& m : model.modes()) {
    const double w2 = m.frequency * m.frequency;
    const double gap = w2 - omega * omega;
    if (std::abs(gap) < model.resonance_guard() * w2)
      throw ResonanceError("frequency " + std::to_string(omega) +
                           " is within the resonance guard band of mode at " +
                           std::to_string(m.frequency));
    eps += m.coupling * m.coupling / gap;
  }
  return eps;
}

double truncated_permittivity(const MediumModel& model, double omega, int n_terms) {
  if (n_terms < 0) throw DomainError("n_terms must be >= 0");
  if (!(omega >= 0.0)) throw DomainError("frequency must be >= 0");
  if (auto eps = model.direct_permittivity()) return *eps;
  if (omega >= model.min_frequency())
    throw DivergenceError("local expansion diverges for omega >= min oscillator frequency");

  double eps = 1.0;
  for (const auto& m : model.modes()) {
    const double w2 = m.frequency * m.frequency;
    const double x = omega * omega / w2;
    // Horner from the highest power down keeps n = 0 exactly equal to the static term.
    double series = 1.0;
    for (int k = 0; k < n_terms; ++k) series = 1.0 + x * series;
    eps += (m.coupling * m.coupling / w2) * series;
  }
  return eps;
}

double refractive_index(const MediumModel& model) { return std::sqrt(static_permittivity(model)); }

} // namespace gordon
