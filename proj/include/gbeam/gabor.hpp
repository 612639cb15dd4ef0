#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "gbeam/grid.hpp"

namespace gbeam {

// Separable time-frequency lattice for signals of length L: time shift a
// samples, M modulation channels, semiclassical parameter hbar. Atom count is
// (L/a)*M; the system oversamples when M > a (lattice density a/M < 1).
struct GaborLattice {
  std::size_t L = 0;
  std::size_t a = 0;
  std::size_t M = 0;
  double hbar = 0.0;

  static GaborLattice make(std::size_t L, std::size_t a, std::size_t M, double hbar);

  double planck() const { return 2.0 * 3.141592653589793238462643383279502884 * hbar; }
  std::size_t time_steps() const { return L / a; }
  std::size_t atom_count() const { return time_steps() * M; }
  double density() const { return static_cast<double>(a) / static_cast<double>(M); }

  // signed atom indices: n in (-L/2a, L/2a], m in (-M/2, M/2]
  long signed_time_index(std::size_t n) const {
    return static_cast<long>(n) <= static_cast<long>(time_steps()) / 2
               ? static_cast<long>(n)
               : static_cast<long>(n) - static_cast<long>(time_steps());
  }
  long signed_channel(std::size_t m) const {
    return static_cast<long>(m) <= static_cast<long>(M) / 2
               ? static_cast<long>(m)
               : static_cast<long>(m) - static_cast<long>(M);
  }
  double atom_position(long n_signed) const {
    return static_cast<double>(n_signed) * static_cast<double>(a) / static_cast<double>(L);
  }
  double atom_momentum(long m_signed) const {
    return planck() * static_cast<double>(m_signed) * static_cast<double>(L) /
           static_cast<double>(M);
  }
  bool operator==(const GaborLattice&) const = default;
};

// Sampled, periodized, l2-normalized Gaussian (pi*hbar)^{-1/4} exp(-x^2/(2 hbar)).
// Throws "window not numerically periodizable" when exp(-1/(8 hbar)) > 1e-12.
Signal gaussian_window(const GaborLattice& lattice);
// Euclidean norm of the raw sampled Gaussian (the factor removed by the unit
// normalization); beams carry continuum normalization, so superpositions
// divide coefficients by this scale.
double gaussian_window_scale(const GaborLattice& lattice);

struct CoefficientGrid {
  GaborLattice lattice;
  std::vector<cplx> values;  // index n*M + m (m fastest)

  static CoefficientGrid zeros(const GaborLattice& lat) {
    return CoefficientGrid{lat, std::vector<cplx>(lat.atom_count(), cplx{})};
  }
  cplx& at(std::size_t m, std::size_t n) { return values[n * lattice.M + m]; }
  const cplx& at(std::size_t m, std::size_t n) const { return values[n * lattice.M + m]; }
};

// Phase-locked discrete Gabor transform against an arbitrary window:
// c(m,n) = sum_l f(l) conj(w(l-an)) exp(-2 pi i (l-an) m / M).
CoefficientGrid analyze_with(const Signal& f, const Signal& window, const GaborLattice& lattice);
// Matching synthesis: f(l) = sum_{m,n} c(m,n) w(l-an) exp(2 pi i (l-an) m / M).
Signal synth_with(const CoefficientGrid& c, const Signal& window, const GaborLattice& lattice);

// Canonical dual gamma = S^{-1} g (S the frame operator of g), computed by
// conjugate gradients on S. Throws "not a frame" for undersampled or
// degenerate systems.
Signal dual_window(const Signal& g, const GaborLattice& lattice);

// Extreme eigenvalues (a_lo, b_hi) of the frame operator via power iteration
// and a spectral shift.
std::pair<double, double> frame_bounds(const Signal& g, const GaborLattice& lattice);
std::pair<double, double> frame_bounds(const Signal& g, const GaborLattice& lattice, double tol,
                                       std::size_t maxit);

struct GaborSystem {
  GaborLattice lattice;
  Signal window;
  Signal dual;
  double window_scale = 1.0;

  static GaborSystem make(const GaborLattice& lattice);
};

// analyze against the dual window / synthesize with the primary window, the
// pairing used by the parametrix.
CoefficientGrid analyze(const Signal& f, const GaborSystem& sys);
Signal synth(const CoefficientGrid& c, const GaborSystem& sys);

struct ThresholdResult {
  CoefficientGrid coefficients;
  std::vector<std::size_t> retained;  // flat indices with |c| > eta
};

ThresholdResult threshold(const CoefficientGrid& c, double eta);

// CSV with header "m,n,real,imag", m fastest.
void write_coefficients_csv(const CoefficientGrid& c, const std::string& path);

}  // namespace gbeam
