#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <vector>

namespace gbeam {

// In-place complex FFT of a fixed size. Power-of-two sizes use the iterative
// radix-2 scheme; other sizes go through Bluestein's chirp-z reduction to a
// power-of-two convolution. Transforms are unnormalized: inverse(forward(x))
// multiplies x by n.
class Fft {
 public:
  explicit Fft(std::size_t n);

  std::size_t size() const { return n_; }
  void forward(std::complex<double>* data) const;
  void inverse(std::complex<double>* data) const;

 private:
  void pow2_transform(std::complex<double>* data, bool inverse) const;
  void bluestein(std::complex<double>* data, bool inverse) const;

  std::size_t n_ = 0;
  bool pow2_ = false;
  std::vector<std::size_t> rev_;
  std::vector<std::complex<double>> tw_;       // forward twiddles, radix-2 path
  // Bluestein state
  std::unique_ptr<Fft> sub_;
  std::vector<std::complex<double>> chirp_;    // exp(-i pi j^2 / n)
  std::vector<std::complex<double>> bhat_;     // FFT of the chirp filter
};

}  // namespace gbeam
