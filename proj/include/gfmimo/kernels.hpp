// SPDX-License-Identifier: Apache-2.0
//
// Complex double-precision inner-loop kernels with runtime ISA dispatch.
// The scalar versions are the reference; the AVX2 versions must agree with
// them to floating-point reassociation tolerance (equivalence-tested).

#pragma once

#include <complex>
#include <cstddef>
#include <string>

namespace gfmimo::kernels {

using cplx = std::complex<double>;

enum class Isa { Scalar, Avx2 };

/// ISA selected at startup (best available), overridable for testing.
Isa active() noexcept;

/// Force a specific ISA. Throws std::runtime_error if unsupported on this CPU.
void force(Isa isa);

/// Pick the best ISA the CPU supports (the startup default).
void autoselect() noexcept;

std::string isa_name(Isa isa);

/// sum_i conj(a[i]) * b[i]
cplx zdotc(const cplx* a, const cplx* b, std::size_t n) noexcept;

/// sum_i a[i] * b[i]
cplx zdotu(const cplx* a, const cplx* b, std::size_t n) noexcept;

/// sum_i |a[i]|^2
double znrm2sq(const cplx* a, std::size_t n) noexcept;

/// y[i] += alpha * x[i]
void zaxpy(cplx alpha, const cplx* x, cplx* y, std::size_t n) noexcept;

namespace detail {
struct KernelTable {
  cplx (*zdotc)(const cplx*, const cplx*, std::size_t) noexcept;
  cplx (*zdotu)(const cplx*, const cplx*, std::size_t) noexcept;
  double (*znrm2sq)(const cplx*, std::size_t) noexcept;
  void (*zaxpy)(cplx, const cplx*, cplx*, std::size_t) noexcept;
};
extern const KernelTable scalar_table;
extern const KernelTable avx2_table;  // valid only if avx2_available()
bool avx2_available() noexcept;
}  // namespace detail

}  // namespace gfmimo::kernels
