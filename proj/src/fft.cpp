#include "gbeam/fft.hpp"

#include <cmath>
#include <stdexcept>

#include "gbeam/kernels.hpp"

namespace gbeam {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

}  // namespace

Fft::Fft(std::size_t n) : n_(n), pow2_(is_pow2(n)) {
  if (n == 0) throw std::invalid_argument("Fft: size must be positive");
  if (pow2_) {
    rev_.resize(n);
    std::size_t log2n = 0;
    while ((std::size_t{1} << log2n) < n) ++log2n;
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t r = 0;
      for (std::size_t b = 0; b < log2n; ++b) r |= ((i >> b) & 1u) << (log2n - 1 - b);
      rev_[i] = r;
    }
    tw_.resize(n / 2);
    for (std::size_t k = 0; k < n / 2; ++k)
      tw_[k] = std::polar(1.0, -2.0 * kPi * static_cast<double>(k) / static_cast<double>(n));
  } else {
    std::size_t m = next_pow2(2 * n - 1);
    sub_ = std::make_unique<Fft>(m);
    chirp_.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
      // j^2 mod 2n keeps the chirp argument exact for large j
      std::size_t q = (j * j) % (2 * n);
      chirp_[j] = std::polar(1.0, -kPi * static_cast<double>(q) / static_cast<double>(n));
    }
    std::vector<std::complex<double>> b(m, 0.0);
    b[0] = std::conj(chirp_[0]);
    for (std::size_t j = 1; j < n; ++j) b[j] = b[m - j] = std::conj(chirp_[j]);
    sub_->forward(b.data());
    bhat_ = std::move(b);
  }
}

void Fft::pow2_transform(std::complex<double>* a, bool inverse) const {
  const std::size_t n = n_;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t r = rev_[i];
    if (i < r) std::swap(a[i], a[r]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len >> 1;
    const std::size_t stride = n / len;
    for (std::size_t start = 0; start < n; start += len) {
      for (std::size_t k = 0; k < half; ++k) {
        std::complex<double> w = tw_[k * stride];
        if (inverse) w = std::conj(w);
        std::complex<double> u = a[start + k];
        std::complex<double> v = a[start + k + half] * w;
        a[start + k] = u + v;
        a[start + k + half] = u - v;
      }
    }
  }
}

void Fft::bluestein(std::complex<double>* data, bool inverse) const {
  const std::size_t n = n_;
  const std::size_t m = sub_->size();
  std::vector<std::complex<double>> a(m, 0.0);
  for (std::size_t j = 0; j < n; ++j)
    a[j] = data[j] * (inverse ? std::conj(chirp_[j]) : chirp_[j]);
  sub_->forward(a.data());
  if (inverse) {
    for (std::size_t j = 0; j < m; ++j) a[j] *= std::conj(bhat_[j]);
  } else {
    kernels::cmul(a.data(), bhat_.data(), m);
  }
  sub_->inverse(a.data());
  const double scale = 1.0 / static_cast<double>(m);
  for (std::size_t j = 0; j < n; ++j) {
    std::complex<double> c = inverse ? std::conj(chirp_[j]) : chirp_[j];
    data[j] = a[j] * c * scale;
  }
}

void Fft::forward(std::complex<double>* data) const {
  if (pow2_)
    pow2_transform(data, false);
  else
    bluestein(data, false);
}

void Fft::inverse(std::complex<double>* data) const {
  if (pow2_)
    pow2_transform(data, true);
  else
    bluestein(data, true);
}

}  // namespace gbeam
