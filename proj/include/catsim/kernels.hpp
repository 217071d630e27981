#pragma once

#include <complex>
#include <cstddef>
#include <string_view>

/// Data-parallel inner loops of the generator and the time stepper.
///
/// Every kernel has a portable scalar reference implementation. An AVX2/FMA
/// variant is compiled in a separate translation unit and chosen at runtime
/// when the CPU reports both features. Setting CATSIM_KERNELS=scalar in the
/// environment forces the reference path.
namespace catsim::kernels {

using cplx = std::complex<double>;

struct KernelSet {
  std::string_view name;

  /// out[i] = (a + b[i]) * x[i]
  void (*diagonal)(cplx* out, cplx a, const cplx* b, const cplx* x, std::size_t count);

  /// out[i] += s * w[i] * x[i]   (w real)
  void (*weighted_accumulate)(cplx* out, cplx s, const double* w, const cplx* x, std::size_t count);

  /// y[i] = x[i] + a * z[i]   over plain doubles; y may alias x.
  void (*axpy)(double* y, const double* x, double a, const double* z, std::size_t count);
};

const KernelSet& scalar_kernels();

/// nullptr when the AVX2 variant is not compiled in or the CPU lacks AVX2/FMA.
const KernelSet* avx2_kernels();

/// Selected once on first use.
const KernelSet& active_kernels();

}  // namespace catsim::kernels
