#include <immintrin.h>

#include "gordon/simd/wave_kernels.hpp"

namespace gordon::simd {

namespace {

inline __m256d ld(const double* p) { return _mm256_loadu_pd(p); }

// ((f[-2] + f[+2]) − 4 (f[-1] + f[+1])) + 6 f[0], times ko
inline __m256d ko_term(const double* f, __m256d four, __m256d six, __m256d ko) {
  const __m256d outer = _mm256_add_pd(ld(f - 2), ld(f + 2));
  const __m256d inner = _mm256_mul_pd(four, _mm256_add_pd(ld(f - 1), ld(f + 1)));
  const __m256d sum = _mm256_add_pd(_mm256_sub_pd(outer, inner), _mm256_mul_pd(six, ld(f)));
  return _mm256_mul_pd(sum, ko);
}

void rhs_avx2(const WaveRhsArgs& w, std::size_t begin, std::size_t end) {
  const __m256d inv_2h = _mm256_set1_pd(w.inv_2h);
  const __m256d inv_h2 = _mm256_set1_pd(w.inv_h2);
  const __m256d ko = _mm256_set1_pd(w.ko);
  const __m256d four = _mm256_set1_pd(4.0);
  const __m256d six = _mm256_set1_pd(6.0);

  std::size_t i = begin;
  for (; i + 4 <= end; i += 4) {
    const std::size_t p = i + 2;
    const double* f = w.phi + p;
    const double* q = w.pi + p;
    const double* b = w.b + p;

    const __m256d f0 = ld(f), fm = ld(f - 1), fp = ld(f + 1);
    const __m256d dphi_r = _mm256_mul_pd(_mm256_sub_pd(fp, fm), inv_2h);
    const __m256d dphi = _mm256_add_pd(_mm256_mul_pd(ld(w.a + p), ld(q)),
                                       _mm256_mul_pd(ld(b), dphi_r));
    _mm256_storeu_pd(w.dphi + i, _mm256_sub_pd(dphi, ko_term(f, four, six, ko)));

    const __m256d adv = _mm256_mul_pd(
        _mm256_sub_pd(_mm256_mul_pd(ld(b + 1), ld(q + 1)), _mm256_mul_pd(ld(b - 1), ld(q - 1))),
        inv_2h);
    const __m256d right = _mm256_mul_pd(ld(w.c_face + i + 1), _mm256_sub_pd(fp, f0));
    const __m256d left = _mm256_mul_pd(ld(w.c_face + i), _mm256_sub_pd(f0, fm));
    const __m256d diff = _mm256_mul_pd(_mm256_sub_pd(right, left), inv_h2);
    _mm256_storeu_pd(w.dpi + i, _mm256_sub_pd(_mm256_add_pd(adv, diff), ko_term(q, four, six, ko)));
  }
  if (i < end) detail::scalar_table.rhs(w, i, end);
}

void euler_avx2(const double* y, const double* k, double h, double* out, std::size_t n) {
  const __m256d hv = _mm256_set1_pd(h);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(out + i, _mm256_add_pd(ld(y + i), _mm256_mul_pd(hv, ld(k + i))));
  for (; i < n; ++i) out[i] = y[i] + h * k[i];
}

void heun_avx2(const double* y, const double* ystar, const double* k, double h, double* out,
               std::size_t n) {
  const __m256d hv = _mm256_set1_pd(h);
  const __m256d half = _mm256_set1_pd(0.5);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d inner = _mm256_add_pd(ld(ystar + i), _mm256_mul_pd(hv, ld(k + i)));
    _mm256_storeu_pd(out + i, _mm256_mul_pd(half, _mm256_add_pd(ld(y + i), inner)));
  }
  for (; i < n; ++i) out[i] = 0.5 * (y[i] + (ystar[i] + h * k[i]));
}

void damp_avx2(double* y, const double* d, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) _mm256_storeu_pd(y + i, _mm256_mul_pd(ld(y + i), ld(d + i)));
  for (; i < n; ++i) y[i] *= d[i];
}

} // namespace

namespace detail {
const KernelTable avx2_table{"avx2", rhs_avx2, euler_avx2, heun_avx2, damp_avx2};
}

} // namespace gordon::simd
