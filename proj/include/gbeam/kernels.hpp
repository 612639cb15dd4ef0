#pragma once

#include <complex>
#include <cstddef>

// Inner arithmetic loops used by the hot paths (split-step phase application,
// beam accumulation on the grid). Each kernel has a scalar reference version
// and, on capable x86-64 hosts, an AVX2 variant picked at runtime. The two are
// equivalence-tested against each other; results agree to roundoff but are not
// bitwise identical.
namespace gbeam::kernels {

using cplx = std::complex<double>;

enum class Isa { scalar, avx2 };

bool cpu_has_avx2();
Isa active_isa();
// Force a specific ISA (tests / --no-simd); Isa::avx2 is ignored when the CPU
// or build lacks it.
void force_isa(Isa isa);
void reset_isa();

// y[i] *= x[i]
void cmul(cplx* y, const cplx* x, std::size_t n);
// y[i] += alpha * x[i]
void caxpy(cplx* y, cplx alpha, const cplx* x, std::size_t n);
// out[j] += w * exp(a2*d*d + a1*d + a0) with d = d0 + j*dd, j = 0..n-1
void accumulate_quadratic_exp(cplx* out, std::size_t n, cplx w, cplx a2, cplx a1,
                              cplx a0, double d0, double dd);

namespace ref {
void cmul(cplx* y, const cplx* x, std::size_t n);
void caxpy(cplx* y, cplx alpha, const cplx* x, std::size_t n);
void accumulate_quadratic_exp(cplx* out, std::size_t n, cplx w, cplx a2, cplx a1,
                              cplx a0, double d0, double dd);
}  // namespace ref

#ifdef GBEAM_BUILD_AVX2
namespace avx2 {
void cmul(cplx* y, const cplx* x, std::size_t n);
void caxpy(cplx* y, cplx alpha, const cplx* x, std::size_t n);
void accumulate_quadratic_exp(cplx* out, std::size_t n, cplx w, cplx a2, cplx a1,
                              cplx a0, double d0, double dd);
}  // namespace avx2
#endif

}  // namespace gbeam::kernels
