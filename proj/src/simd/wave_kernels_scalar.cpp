#include "gordon/simd/wave_kernels.hpp"

namespace gordon::simd {

namespace {

void rhs_scalar(const WaveRhsArgs& w, std::size_t begin, std::size_t end) {
  for (std::size_t i = begin; i < end; ++i) {
    const std::size_t p = i + 2;
    const double* f = w.phi;
    const double* q = w.pi;

    const double dphi_r = (f[p + 1] - f[p - 1]) * w.inv_2h;
    const double ko_phi = ((f[p - 2] + f[p + 2]) - 4.0 * (f[p - 1] + f[p + 1]) + 6.0 * f[p]) * w.ko;
    w.dphi[i] = (w.a[p] * q[p] + w.b[p] * dphi_r) - ko_phi;

    const double adv = (w.b[p + 1] * q[p + 1] - w.b[p - 1] * q[p - 1]) * w.inv_2h;
    const double diff =
        (w.c_face[i + 1] * (f[p + 1] - f[p]) - w.c_face[i] * (f[p] - f[p - 1])) * w.inv_h2;
    const double ko_pi = ((q[p - 2] + q[p + 2]) - 4.0 * (q[p - 1] + q[p + 1]) + 6.0 * q[p]) * w.ko;
    w.dpi[i] = (adv + diff) - ko_pi;
  }
}

void euler_scalar(const double* y, const double* k, double h, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = y[i] + h * k[i];
}

void heun_scalar(const double* y, const double* ystar, const double* k, double h, double* out,
                 std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = 0.5 * (y[i] + (ystar[i] + h * k[i]));
}

void damp_scalar(double* y, const double* d, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] *= d[i];
}

} // namespace

namespace detail {
const KernelTable scalar_table{"scalar", rhs_scalar, euler_scalar, heun_scalar, damp_scalar};
}

} // namespace gordon::simd
