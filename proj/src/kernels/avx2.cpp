// AVX2 + FMA variants of the kernels in kernels.hpp. This file is compiled
// with -mavx2 -mfma; nothing here may run before dispatch.cpp has checked
// the CPU feature bits.

#include <immintrin.h>

#include "catsim/kernels.hpp"

namespace catsim::kernels {

namespace {

// Two complex doubles per register: [re0, im0, re1, im1].

void diagonal_avx2(cplx* out, cplx a, const cplx* b, const cplx* x, std::size_t count) {
  auto* po = reinterpret_cast<double*>(out);
  const auto* pb = reinterpret_cast<const double*>(b);
  const auto* px = reinterpret_cast<const double*>(x);
  const __m256d av = _mm256_setr_pd(a.real(), a.imag(), a.real(), a.imag());
  std::size_t i = 0;
  for (; i + 2 <= count; i += 2) {
    const __m256d c = _mm256_add_pd(av, _mm256_loadu_pd(pb + 2 * i));
    const __m256d xv = _mm256_loadu_pd(px + 2 * i);
    const __m256d c_re = _mm256_movedup_pd(c);          // [cr0, cr0, cr1, cr1]
    const __m256d c_im = _mm256_permute_pd(c, 0b1111);  // [ci0, ci0, ci1, ci1]
    const __m256d x_sw = _mm256_permute_pd(xv, 0b0101); // [xi0, xr0, xi1, xr1]
    // even lanes: cr*xr - ci*xi, odd lanes: cr*xi + ci*xr
    const __m256d r = _mm256_fmaddsub_pd(c_re, xv, _mm256_mul_pd(c_im, x_sw));
    _mm256_storeu_pd(po + 2 * i, r);
  }
  for (; i < count; ++i) {
    const double cr = a.real() + b[i].real();
    const double ci = a.imag() + b[i].imag();
    out[i] = {cr * x[i].real() - ci * x[i].imag(), cr * x[i].imag() + ci * x[i].real()};
  }
}

void weighted_accumulate_avx2(cplx* out, cplx s, const double* w, const cplx* x, std::size_t count) {
  auto* po = reinterpret_cast<double*>(out);
  const auto* px = reinterpret_cast<const double*>(x);
  const __m256d s_re = _mm256_set1_pd(s.real());
  const __m256d s_im = _mm256_set1_pd(s.imag());
  std::size_t i = 0;
  for (; i + 2 <= count; i += 2) {
    const __m128d w2 = _mm_loadu_pd(w + i);
    const __m256d wv = _mm256_permute4x64_pd(_mm256_castpd128_pd256(w2), 0b01010000);  // [w0, w0, w1, w1]
    const __m256d t = _mm256_mul_pd(wv, _mm256_loadu_pd(px + 2 * i));
    const __m256d t_sw = _mm256_permute_pd(t, 0b0101);
    const __m256d prod = _mm256_fmaddsub_pd(s_re, t, _mm256_mul_pd(s_im, t_sw));
    _mm256_storeu_pd(po + 2 * i, _mm256_add_pd(_mm256_loadu_pd(po + 2 * i), prod));
  }
  for (; i < count; ++i) {
    const double tr = w[i] * x[i].real();
    const double ti = w[i] * x[i].imag();
    out[i] = {out[i].real() + (s.real() * tr - s.imag() * ti), out[i].imag() + (s.real() * ti + s.imag() * tr)};
  }
}

void axpy_avx2(double* y, const double* x, double a, const double* z, std::size_t count) {
  const __m256d av = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= count; i += 4) {
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(av, _mm256_loadu_pd(z + i), _mm256_loadu_pd(x + i)));
  }
  for (; i < count; ++i) y[i] = x[i] + a * z[i];
}

}  // namespace

const KernelSet& avx2_kernel_set() {
  static const KernelSet set{"avx2", diagonal_avx2, weighted_accumulate_avx2, axpy_avx2};
  return set;
}

}  // namespace catsim::kernels
