#pragma once

#include "gordon/flow.hpp"

namespace gordon {

/// (t, r) block of the contravariant Gordon metric for a radial flow, with
/// analytic radial derivatives. With v the signed radial velocity,
/// γ² = 1/(1 − v²) and k = ε − 1:
///   g^{tt} = 1 + kγ²,  g^{tr} = kγ²v,  g^{rr} = −1 + kγ²v².
/// The block determinant is −ε everywhere.
struct RadialInverseMetric {
  double tt, tr, rr;
  double d_tt, d_tr, d_rr;
};

/// Covariant (t, r) block: g_00 = 1 − qγ², g_01 = qγ²v, g_11 = −1 − qγ²v²,
/// q = (ε − 1)/ε.
struct RadialMetric {
  double g00, g01, g11;
};

RadialInverseMetric radial_inverse_metric(const FlowProfile& profile, double epsilon, double r);
RadialMetric radial_metric(const FlowProfile& profile, double epsilon, double r);

/// Lab-frame speeds dr/dt of the two radial light rays at r, ordered
/// outgoing (the larger) then ingoing.
struct NullSpeeds {
  double outgoing;
  double ingoing;
};

NullSpeeds null_speeds(const FlowProfile& profile, double epsilon, double r);

} // namespace gordon
