// SPDX-License-Identifier: Apache-2.0

#include "gfmimo/kernels.hpp"

namespace gfmimo::kernels::detail {

namespace {

cplx zdotc_scalar(const cplx* a, const cplx* b, std::size_t n) noexcept {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double ar = a[i].real(), ai = a[i].imag();
    const double br = b[i].real(), bi = b[i].imag();
    re += ar * br + ai * bi;
    im += ar * bi - ai * br;
  }
  return {re, im};
}

cplx zdotu_scalar(const cplx* a, const cplx* b, std::size_t n) noexcept {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double ar = a[i].real(), ai = a[i].imag();
    const double br = b[i].real(), bi = b[i].imag();
    re += ar * br - ai * bi;
    im += ar * bi + ai * br;
  }
  return {re, im};
}

double znrm2sq_scalar(const cplx* a, std::size_t n) noexcept {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    acc += a[i].real() * a[i].real() + a[i].imag() * a[i].imag();
  return acc;
}

void zaxpy_scalar(cplx alpha, const cplx* x, cplx* y, std::size_t n) noexcept {
  const double ar = alpha.real(), ai = alpha.imag();
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    y[i] += cplx{ar * xr - ai * xi, ar * xi + ai * xr};
  }
}

}  // namespace

const KernelTable scalar_table = {zdotc_scalar, zdotu_scalar, znrm2sq_scalar,
                                  zaxpy_scalar};

}  // namespace gfmimo::kernels::detail
