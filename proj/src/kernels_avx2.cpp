// SPDX-License-Identifier: Apache-2.0
//
// AVX2+FMA variants. Complex numbers are interleaved (re, im), so one
// 256-bit register holds two complex doubles.

#include "gfmimo/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>

namespace gfmimo::kernels::detail {

namespace {

// Horizontal sum of the four doubles in v.
inline double hsum(__m256d v) noexcept {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

// Sum of even lanes minus sum of odd lanes.
inline double hsum_evens_minus_odds(__m256d v) noexcept {
  const __m256d sign = _mm256_set_pd(-0.0, 0.0, -0.0, 0.0);
  return hsum(_mm256_xor_pd(v, sign));
}

cplx zdotc_avx2(const cplx* a, const cplx* b, std::size_t n) noexcept {
  const double* pa = reinterpret_cast<const double*>(a);
  const double* pb = reinterpret_cast<const double*>(b);
  __m256d acc_rr = _mm256_setzero_pd();  // ar*br, ai*bi lanes
  __m256d acc_ri = _mm256_setzero_pd();  // ar*bi, ai*br lanes
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d va = _mm256_loadu_pd(pa + 2 * i);
    const __m256d vb = _mm256_loadu_pd(pb + 2 * i);
    const __m256d vbs = _mm256_permute_pd(vb, 0x5);  // swap re/im per complex
    acc_rr = _mm256_fmadd_pd(va, vb, acc_rr);
    acc_ri = _mm256_fmadd_pd(va, vbs, acc_ri);
  }
  double re = hsum(acc_rr);
  double im = hsum_evens_minus_odds(acc_ri);
  for (; i < n; ++i) {
    const double ar = pa[2 * i], ai = pa[2 * i + 1];
    const double br = pb[2 * i], bi = pb[2 * i + 1];
    re += ar * br + ai * bi;
    im += ar * bi - ai * br;
  }
  return {re, im};
}

cplx zdotu_avx2(const cplx* a, const cplx* b, std::size_t n) noexcept {
  const double* pa = reinterpret_cast<const double*>(a);
  const double* pb = reinterpret_cast<const double*>(b);
  __m256d acc_rr = _mm256_setzero_pd();
  __m256d acc_ri = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d va = _mm256_loadu_pd(pa + 2 * i);
    const __m256d vb = _mm256_loadu_pd(pb + 2 * i);
    const __m256d vbs = _mm256_permute_pd(vb, 0x5);
    acc_rr = _mm256_fmadd_pd(va, vb, acc_rr);
    acc_ri = _mm256_fmadd_pd(va, vbs, acc_ri);
  }
  double re = hsum_evens_minus_odds(acc_rr);
  double im = hsum(acc_ri);
  for (; i < n; ++i) {
    const double ar = pa[2 * i], ai = pa[2 * i + 1];
    const double br = pb[2 * i], bi = pb[2 * i + 1];
    re += ar * br - ai * bi;
    im += ar * bi + ai * br;
  }
  return {re, im};
}

double znrm2sq_avx2(const cplx* a, std::size_t n) noexcept {
  const double* pa = reinterpret_cast<const double*>(a);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d va = _mm256_loadu_pd(pa + 2 * i);
    acc = _mm256_fmadd_pd(va, va, acc);
  }
  double s = hsum(acc);
  for (; i < n; ++i)
    s += pa[2 * i] * pa[2 * i] + pa[2 * i + 1] * pa[2 * i + 1];
  return s;
}

void zaxpy_avx2(cplx alpha, const cplx* x, cplx* y, std::size_t n) noexcept {
  const double* px = reinterpret_cast<const double*>(x);
  double* py = reinterpret_cast<double*>(y);
  const __m256d var = _mm256_set1_pd(alpha.real());
  const __m256d vai = _mm256_set1_pd(alpha.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d vx = _mm256_loadu_pd(px + 2 * i);
    const __m256d vxs = _mm256_permute_pd(vx, 0x5);
    const __m256d t = _mm256_mul_pd(vxs, vai);
    // even lanes: ar*xr - ai*xi, odd lanes: ar*xi + ai*xr
    const __m256d res = _mm256_fmaddsub_pd(vx, var, t);
    _mm256_storeu_pd(py + 2 * i, _mm256_add_pd(_mm256_loadu_pd(py + 2 * i), res));
  }
  const double ar = alpha.real(), ai = alpha.imag();
  for (; i < n; ++i) {
    const double xr = px[2 * i], xi = px[2 * i + 1];
    py[2 * i] += ar * xr - ai * xi;
    py[2 * i + 1] += ar * xi + ai * xr;
  }
}

}  // namespace

const KernelTable avx2_table = {zdotc_avx2, zdotu_avx2, znrm2sq_avx2,
                                zaxpy_avx2};

bool avx2_available() noexcept {
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}

}  // namespace gfmimo::kernels::detail

#else  // non-x86: the AVX2 table is never selected

namespace gfmimo::kernels::detail {
const KernelTable avx2_table = {nullptr, nullptr, nullptr, nullptr};
bool avx2_available() noexcept { return false; }
}  // namespace gfmimo::kernels::detail

#endif
