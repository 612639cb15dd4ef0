#include "gbeam/kernels.hpp"

#include <atomic>
#include <cmath>

namespace gbeam::kernels {

namespace {

std::atomic<int> g_forced{-1};  // -1 = auto

Isa detect() {
#ifdef GBEAM_BUILD_AVX2
  if (cpu_has_avx2()) return Isa::avx2;
#endif
  return Isa::scalar;
}

}  // namespace

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa active_isa() {
  int f = g_forced.load(std::memory_order_relaxed);
  if (f < 0) return detect();
  Isa want = static_cast<Isa>(f);
#ifdef GBEAM_BUILD_AVX2
  if (want == Isa::avx2 && cpu_has_avx2()) return Isa::avx2;
#endif
  return Isa::scalar;
}

void force_isa(Isa isa) { g_forced.store(static_cast<int>(isa), std::memory_order_relaxed); }
void reset_isa() { g_forced.store(-1, std::memory_order_relaxed); }

namespace ref {

void cmul(cplx* y, const cplx* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] *= x[i];
}

void caxpy(cplx* y, cplx alpha, const cplx* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void accumulate_quadratic_exp(cplx* out, std::size_t n, cplx w, cplx a2, cplx a1,
                              cplx a0, double d0, double dd) {
  for (std::size_t j = 0; j < n; ++j) {
    double d = d0 + static_cast<double>(j) * dd;
    out[j] += w * std::exp((a2 * d + a1) * d + a0);
  }
}

}  // namespace ref

void cmul(cplx* y, const cplx* x, std::size_t n) {
#ifdef GBEAM_BUILD_AVX2
  if (active_isa() == Isa::avx2) return avx2::cmul(y, x, n);
#endif
  ref::cmul(y, x, n);
}

void caxpy(cplx* y, cplx alpha, const cplx* x, std::size_t n) {
#ifdef GBEAM_BUILD_AVX2
  if (active_isa() == Isa::avx2) return avx2::caxpy(y, alpha, x, n);
#endif
  ref::caxpy(y, alpha, x, n);
}

void accumulate_quadratic_exp(cplx* out, std::size_t n, cplx w, cplx a2, cplx a1,
                              cplx a0, double d0, double dd) {
#ifdef GBEAM_BUILD_AVX2
  if (active_isa() == Isa::avx2)
    return avx2::accumulate_quadratic_exp(out, n, w, a2, a1, a0, d0, dd);
#endif
  ref::accumulate_quadratic_exp(out, n, w, a2, a1, a0, d0, dd);
}

}  // namespace gbeam::kernels
