#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

namespace gbeam {

using cplx = std::complex<double>;

// Uniform periodic grid on the unit interval: points x_l = l/L, integer
// frequencies k = -L/2 .. L/2-1 (cycles per unit interval).
struct Grid {
  std::size_t length = 0;

  static Grid make(std::size_t L);

  double point(std::size_t l) const { return static_cast<double>(l) / static_cast<double>(length); }
  long frequency(std::size_t idx) const {
    return static_cast<long>(idx) - static_cast<long>(length) / 2;
  }
  std::size_t frequency_index(long k) const;
  bool operator==(const Grid&) const = default;
};

// Wrap a displacement to its representative of minimal absolute value in
// (-1/2, 1/2].
double wrap_displacement(double d);

struct Signal {
  Grid grid;
  std::vector<cplx> values;

  static Signal zeros(const Grid& g) { return Signal{g, std::vector<cplx>(g.length, cplx{})}; }
  std::size_t size() const { return values.size(); }
  cplx& operator[](std::size_t i) { return values[i]; }
  const cplx& operator[](std::size_t i) const { return values[i]; }
};

// Unitary DFT, output ordered like Grid::frequency (k = -L/2 first):
// out[idx(k)] = L^{-1/2} sum_l s_l exp(-2 pi i k l / L).
Signal dft(const Signal& s);
Signal idft(const Signal& s);

// Continuum-consistent quadrature norm (L^{-1} sum |s_l|^2)^{1/2}.
double l2_norm(const Signal& s);
// Plain Euclidean norm of the sample vector.
double l2_norm_unweighted(const Signal& s);
// l2_norm(u - v) / l2_norm(v); throws std::invalid_argument("zero reference")
// when v vanishes.
double rel_error(const Signal& u, const Signal& v);

Signal operator-(const Signal& u, const Signal& v);
Signal operator+(const Signal& u, const Signal& v);
Signal operator*(cplx alpha, const Signal& u);

// CSV with header "index,real,imag".
void write_signal_csv(const Signal& s, const std::string& path);
Signal read_signal_csv(const std::string& path);

}  // namespace gbeam
