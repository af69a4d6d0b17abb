#include "gordon/flow.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gordon/errors.hpp"

namespace gordon {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

void fritsch_carlson_slopes(TabulatedFlow& t) {
  const std::size_t n = t.r.size();
  std::vector<double> h(n - 1), delta(n - 1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    h[k] = t.r[k + 1] - t.r[k];
    delta[k] = (t.beta[k + 1] - t.beta[k]) / h[k];
  }
  auto& m = t.slope;
  m.assign(n, 0.0);
  if (n == 2) {
    m[0] = m[1] = delta[0];
    return;
  }
  // Three-point (parabolic) estimates: second order on non-uniform grids.
  for (std::size_t k = 1; k + 1 < n; ++k) {
    if (delta[k - 1] * delta[k] <= 0.0) continue;
    m[k] = (h[k] * delta[k - 1] + h[k - 1] * delta[k]) / (h[k - 1] + h[k]);
  }
  auto end_slope = [](double h0, double h1, double d0, double d1) {
    double s = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if (s * d0 <= 0.0) return 0.0;
    if (d0 * d1 <= 0.0 && std::abs(s) > 3.0 * std::abs(d0)) return 3.0 * d0;
    return s;
  };
  m[0] = end_slope(h[0], h[1], delta[0], delta[1]);
  m[n - 1] = end_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);

  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (delta[k] == 0.0) {
      m[k] = m[k + 1] = 0.0;
      continue;
    }
    const double a = m[k] / delta[k];
    const double b = m[k + 1] / delta[k];
    const double r2 = a * a + b * b;
    if (r2 > 9.0) {
      const double tau = 3.0 / std::sqrt(r2);
      m[k] = tau * a * delta[k];
      m[k + 1] = tau * b * delta[k];
    }
  }
}

struct HermiteEval {
  double value;
  double slope;
};

HermiteEval eval_table(const TabulatedFlow& t, double r) {
  const std::size_t n = t.r.size();
  if (r <= t.r.front()) return {t.beta.front() + t.slope.front() * (r - t.r.front()), t.slope.front()};
  if (r >= t.r.back()) return {t.beta.back() + t.slope.back() * (r - t.r.back()), t.slope.back()};
  const auto it = std::upper_bound(t.r.begin(), t.r.end(), r);
  const std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(it - t.r.begin()) - 1, n - 2);
  const double h = t.r[k + 1] - t.r[k];
  const double s = (r - t.r[k]) / h;
  const double s2 = s * s, s3 = s2 * s;
  const double y0 = t.beta[k], y1 = t.beta[k + 1];
  const double m0 = t.slope[k] * h, m1 = t.slope[k + 1] * h;
  const double value = (2 * s3 - 3 * s2 + 1) * y0 + (s3 - 2 * s2 + s) * m0 +
                       (-2 * s3 + 3 * s2) * y1 + (s3 - s2) * m1;
  const double ds = (6 * s2 - 6 * s) * y0 + (3 * s2 - 4 * s + 1) * m0 + (-6 * s2 + 6 * s) * y1 +
                    (3 * s2 - 2 * s) * m1;
  return {value, ds / h};
}

} // namespace

FlowProfile::FlowProfile(Family family, FlowDirection dir, double r_min, double r_max)
    : family_(std::move(family)), direction_(dir), r_min_(r_min), r_max_(r_max) {}

FlowProfile FlowProfile::power_law(double beta0, double r0, double exponent, FlowDirection dir,
                                   double r_min, double r_max) {
  if (!(r0 > 0.0)) throw DomainError("power-law flow: r0 must be > 0");
  if (!(exponent > 0.0)) throw DomainError("power-law flow: exponent must be > 0");
  if (!(beta0 >= 0.0)) throw DomainError("power-law flow: beta0 must be >= 0");
  if (!(r_min > 0.0)) throw DomainError("power-law flow: r_min must be > 0");
  FlowProfile p(PowerLawFlow{beta0, r0, exponent}, dir, r_min, r_max);
  p.validate();
  return p;
}

FlowProfile FlowProfile::tanh_step(double beta_far, double beta_near, double r_center,
                                   double width, FlowDirection dir, double r_min, double r_max) {
  if (!(width > 0.0)) throw DomainError("tanh-step flow: width must be > 0");
  FlowProfile p(TanhStepFlow{beta_far, beta_near, r_center, width}, dir, r_min, r_max);
  p.validate();
  return p;
}

FlowProfile FlowProfile::tabulated(std::vector<double> r, std::vector<double> beta,
                                   FlowDirection dir) {
  if (r.size() != beta.size()) throw DomainError("tabulated flow: r and beta lengths differ");
  if (r.size() < 2) throw DomainError("tabulated flow: need at least two samples");
  for (std::size_t i = 0; i + 1 < r.size(); ++i)
    if (!(r[i + 1] > r[i]))
      throw DomainError("tabulated flow: r samples must be strictly increasing (index " +
                        std::to_string(i + 1) + ")");
  const double lo = r.front(), hi = r.back();
  TabulatedFlow t{std::move(r), std::move(beta), {}};
  fritsch_carlson_slopes(t);
  FlowProfile p(std::move(t), dir, lo, hi);
  p.validate();
  return p;
}

void FlowProfile::validate() const {
  if (!(r_min_ < r_max_) || !std::isfinite(r_min_) || !std::isfinite(r_max_))
    throw DomainError("flow profile: domain must satisfy r_min < r_max");
  auto check = [](double b, const char* where) {
    if (!(b >= 0.0 && b < 1.0))
      throw DomainError(std::string("flow profile: beta must lie in [0, 1) (violated at ") + where +
                        ")");
  };
  std::visit(overloaded{
                 // Monotone families attain their extremes at the domain ends.
                 [&](const PowerLawFlow&) {
                   check(beta(r_min_), "r_min");
                   check(beta(r_max_), "r_max");
                 },
                 [&](const TanhStepFlow&) {
                   check(beta(r_min_), "r_min");
                   check(beta(r_max_), "r_max");
                 },
                 // The Fritsch–Carlson interpolant never leaves the range of
                 // neighbouring samples.
                 [&](const TabulatedFlow& t) {
                   for (double b : t.beta) check(b, "a table sample");
                 },
             },
             family_);
}

double FlowProfile::beta(double r) const {
  return std::visit(overloaded{
                        [r](const PowerLawFlow& f) { return f.beta0 * std::pow(f.r0 / r, f.exponent); },
                        [r](const TanhStepFlow& f) {
                          return f.beta_near + (f.beta_far - f.beta_near) * 0.5 *
                                                   (1.0 + std::tanh((r - f.r_center) / f.width));
                        },
                        [r](const TabulatedFlow& f) { return eval_table(f, r).value; },
                    },
                    family_);
}

double FlowProfile::dbeta_dr(double r) const {
  return std::visit(overloaded{
                        [r](const PowerLawFlow& f) {
                          return -f.exponent * f.beta0 * std::pow(f.r0 / r, f.exponent) / r;
                        },
                        [r](const TanhStepFlow& f) {
                          const double th = std::tanh((r - f.r_center) / f.width);
                          return (f.beta_far - f.beta_near) * 0.5 * (1.0 - th * th) / f.width;
                        },
                        [r](const TabulatedFlow& f) { return eval_table(f, r).slope; },
                    },
                    family_);
}

FlowProfile FlowProfile::reversed() const {
  FlowProfile p = *this;
  p.direction_ =
      direction_ == FlowDirection::inward ? FlowDirection::outward : FlowDirection::inward;
  return p;
}

FlowProfile tabulate(const FlowProfile& profile, std::size_t n) {
  if (n < 2) throw DomainError("tabulate: need at least two samples");
  std::vector<double> r(n), b(n);
  const double lo = profile.r_min(), hi = profile.r_max();
  for (std::size_t i = 0; i < n; ++i) {
    r[i] = i + 1 == n ? hi : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    b[i] = profile.beta(r[i]);
  }
  return FlowProfile::tabulated(std::move(r), std::move(b), profile.direction());
}

} // namespace gordon
