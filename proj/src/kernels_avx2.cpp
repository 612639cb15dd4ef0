#include <immintrin.h>

#include <cmath>

#include "gbeam/kernels.hpp"

// AVX2 variants. A __m256d holds two complex<double> in (re, im, re, im)
// layout, matching the array representation of std::complex<double>.
namespace gbeam::kernels::avx2 {

namespace {

inline __m256d cplx_mul(__m256d a, __m256d b) {
  __m256d b_re = _mm256_movedup_pd(b);
  __m256d b_im = _mm256_permute_pd(b, 0xF);
  __m256d a_sw = _mm256_permute_pd(a, 0x5);
  return _mm256_fmaddsub_pd(a, b_re, _mm256_mul_pd(a_sw, b_im));
}

inline __m256d load2(const cplx* p) { return _mm256_loadu_pd(reinterpret_cast<const double*>(p)); }
inline void store2(cplx* p, __m256d v) { _mm256_storeu_pd(reinterpret_cast<double*>(p), v); }

}  // namespace

void cmul(cplx* y, const cplx* x, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) store2(y + i, cplx_mul(load2(y + i), load2(x + i)));
  for (; i < n; ++i) y[i] *= x[i];
}

void caxpy(cplx* y, cplx alpha, const cplx* x, std::size_t n) {
  __m256d av = _mm256_setr_pd(alpha.real(), alpha.imag(), alpha.real(), alpha.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2)
    store2(y + i, _mm256_add_pd(load2(y + i), cplx_mul(load2(x + i), av)));
  for (; i < n; ++i) y[i] += alpha * x[i];
}

// Along the ramp d_j = d0 + j*dd the factor exp(a2 d^2 + a1 d + a0) obeys a
// two-term recurrence: f(d+h) = f(d) r(d), r(d+h) = r(d) s with
// r(d) = exp(a2 (2 h d + h^2) + a1 h) and s = exp(2 a2 h^2). Two interleaved
// chains (even/odd j, h = 2 dd) run in one vector; exact re-inits every block
// cap the rounding drift.
void accumulate_quadratic_exp(cplx* out, std::size_t n, cplx w, cplx a2, cplx a1,
                              cplx a0, double d0, double dd) {
  constexpr std::size_t kBlockPairs = 128;
  auto f_at = [&](double d) { return w * std::exp((a2 * d + a1) * d + a0); };
  const double h = 2.0 * dd;
  auto r_at = [&](double d) { return std::exp(a2 * (2.0 * h * d + h * h) + a1 * h); };
  const cplx s = std::exp(2.0 * a2 * h * h);
  const __m256d sv = _mm256_setr_pd(s.real(), s.imag(), s.real(), s.imag());

  std::size_t j = 0;
  while (j + 2 <= n) {
    double db = d0 + static_cast<double>(j) * dd;
    cplx e0 = f_at(db), e1 = f_at(db + dd);
    cplx r0 = r_at(db), r1 = r_at(db + dd);
    __m256d ev = _mm256_setr_pd(e0.real(), e0.imag(), e1.real(), e1.imag());
    __m256d rv = _mm256_setr_pd(r0.real(), r0.imag(), r1.real(), r1.imag());
    std::size_t pairs = (n - j) / 2;
    if (pairs > kBlockPairs) pairs = kBlockPairs;
    for (std::size_t k = 0; k < pairs; ++k) {
      store2(out + j, _mm256_add_pd(load2(out + j), ev));
      ev = cplx_mul(ev, rv);
      rv = cplx_mul(rv, sv);
      j += 2;
    }
  }
  for (; j < n; ++j) out[j] += f_at(d0 + static_cast<double>(j) * dd);
}

}  // namespace gbeam::kernels::avx2
