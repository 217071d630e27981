#include "catsim/kernels.hpp"

namespace catsim::kernels {

namespace {

// Complex products are spelled out in real arithmetic; std::complex operator*
// goes through the Annex G NaN-recovery path, which blocks vectorization.

void diagonal_scalar(cplx* out, cplx a, const cplx* b, const cplx* x, std::size_t count) {
  for (std::size_t i = 0; i < count; ++i) {
    const double cr = a.real() + b[i].real();
    const double ci = a.imag() + b[i].imag();
    const double xr = x[i].real();
    const double xi = x[i].imag();
    out[i] = {cr * xr - ci * xi, cr * xi + ci * xr};
  }
}

void weighted_accumulate_scalar(cplx* out, cplx s, const double* w, const cplx* x, std::size_t count) {
  const double sr = s.real();
  const double si = s.imag();
  for (std::size_t i = 0; i < count; ++i) {
    const double tr = w[i] * x[i].real();
    const double ti = w[i] * x[i].imag();
    out[i] = {out[i].real() + (sr * tr - si * ti), out[i].imag() + (sr * ti + si * tr)};
  }
}

void axpy_scalar(double* y, const double* x, double a, const double* z, std::size_t count) {
  for (std::size_t i = 0; i < count; ++i) y[i] = x[i] + a * z[i];
}

}  // namespace

const KernelSet& scalar_kernels() {
  static const KernelSet set{"scalar", diagonal_scalar, weighted_accumulate_scalar, axpy_scalar};
  return set;
}

}  // namespace catsim::kernels
