#pragma once

// Inner loops of the 1+1 wave solver. Each kernel has a scalar reference
// implementation and, on x86-64, an AVX2 variant picked at runtime. Variants
// perform the same floating-point operations in the same order (no FMA), so
// their results are bit-identical.

#include <cstddef>

namespace gordon::simd {

/// Arguments of the semi-discrete right-hand side.
///   φ_t = a π + b D0 φ − KO(φ)
///   π_t = D0(b π) + D₊(c D₋ φ) − KO(π)
/// `phi`, `pi`, `a`, `b` are ghost-padded by two cells on each side (cell i
/// lives at index i + 2). `c_face` holds the n + 1 face values, face i being
/// the left face of cell i. KO is the fourth-difference dissipation
/// ko · (f[i−2] − 4f[i−1] + 6f[i] − 4f[i+1] + f[i+2]).
struct WaveRhsArgs {
  const double* phi;
  const double* pi;
  const double* a;
  const double* b;
  const double* c_face;
  double* dphi;  // n values, unpadded
  double* dpi;
  std::size_t n;
  double inv_2h;
  double inv_h2;
  double ko;
};

using RhsKernel = void (*)(const WaveRhsArgs& args, std::size_t begin, std::size_t end);
/// out[i] = y[i] + h k[i]
using EulerKernel = void (*)(const double* y, const double* k, double h, double* out, std::size_t n);
/// out[i] = 0.5 (y[i] + (ystar[i] + h k[i]))
using HeunKernel = void (*)(const double* y, const double* ystar, const double* k, double h,
                            double* out, std::size_t n);
/// y[i] *= d[i]
using DampKernel = void (*)(double* y, const double* d, std::size_t n);

struct KernelTable {
  const char* name;
  RhsKernel rhs;
  EulerKernel euler;
  HeunKernel heun;
  DampKernel damp;
};

enum class Isa { scalar, avx2 };

bool isa_available(Isa isa) noexcept;

/// Kernels for a specific ISA. Throws std::runtime_error if unavailable.
const KernelTable& kernels(Isa isa);

/// Best available table. The environment variable GORDON_SIMD=scalar forces
/// the reference path.
const KernelTable& active_kernels();

namespace detail {
extern const KernelTable scalar_table;
#if defined(GORDON_HAVE_AVX2)
extern const KernelTable avx2_table;
#endif
} // namespace detail

} // namespace gordon::simd
