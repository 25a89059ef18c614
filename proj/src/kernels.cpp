// SPDX-License-Identifier: Apache-2.0

#include "gfmimo/kernels.hpp"

#include <atomic>
#include <stdexcept>

namespace gfmimo::kernels {

namespace {

std::atomic<const detail::KernelTable*> g_table{nullptr};
std::atomic<Isa> g_isa{Isa::Scalar};

const detail::KernelTable* table() noexcept {
  const detail::KernelTable* t = g_table.load(std::memory_order_acquire);
  if (!t) {
    autoselect();
    t = g_table.load(std::memory_order_acquire);
  }
  return t;
}

}  // namespace

void autoselect() noexcept {
  if (detail::avx2_available()) {
    g_table.store(&detail::avx2_table, std::memory_order_release);
    g_isa.store(Isa::Avx2, std::memory_order_release);
  } else {
    g_table.store(&detail::scalar_table, std::memory_order_release);
    g_isa.store(Isa::Scalar, std::memory_order_release);
  }
}

void force(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      g_table.store(&detail::scalar_table, std::memory_order_release);
      break;
    case Isa::Avx2:
      if (!detail::avx2_available())
        throw std::runtime_error("AVX2 kernels requested but CPU lacks avx2+fma");
      g_table.store(&detail::avx2_table, std::memory_order_release);
      break;
  }
  g_isa.store(isa, std::memory_order_release);
}

Isa active() noexcept {
  table();
  return g_isa.load(std::memory_order_acquire);
}

std::string isa_name(Isa isa) {
  return isa == Isa::Avx2 ? "avx2" : "scalar";
}

cplx zdotc(const cplx* a, const cplx* b, std::size_t n) noexcept {
  return table()->zdotc(a, b, n);
}
cplx zdotu(const cplx* a, const cplx* b, std::size_t n) noexcept {
  return table()->zdotu(a, b, n);
}
double znrm2sq(const cplx* a, std::size_t n) noexcept {
  return table()->znrm2sq(a, n);
}
void zaxpy(cplx alpha, const cplx* x, cplx* y, std::size_t n) noexcept {
  table()->zaxpy(alpha, x, y, n);
}

}  // namespace gfmimo::kernels
