#include "gbeam/gabor.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <stdexcept>

#include "gbeam/fft.hpp"

namespace gbeam {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

// exp(-1/(8 hbar)) <= 1e-12, the seam value of the unit-interval Gaussian
// relative to its peak
bool periodizable(double hbar) { return hbar <= 1.0 / (8.0 * 12.0 * std::log(10.0)); }

struct DgtEngine {
  const GaborLattice lat;
  Fft fft;

  explicit DgtEngine(const GaborLattice& l) : lat(l), fft(l.M) {}

  CoefficientGrid analyze(const Signal& f, const Signal& w) const {
    if (f.grid.length != lat.L || w.grid.length != lat.L)
      throw std::invalid_argument("grid mismatch");
    const std::size_t L = lat.L, a = lat.a, M = lat.M, cols = lat.time_steps();
    CoefficientGrid c = CoefficientGrid::zeros(lat);
    std::vector<cplx> folded(M);
    for (std::size_t n = 0; n < cols; ++n) {
      std::fill(folded.begin(), folded.end(), cplx{});
      const std::size_t off = a * n;
      for (std::size_t u = 0; u < L; ++u) {
        std::size_t l = u + off;
        if (l >= L) l -= L;
        folded[u % M] += f.values[l] * std::conj(w.values[u]);
      }
      fft.forward(folded.data());
      std::copy(folded.begin(), folded.end(), c.values.begin() + n * M);
    }
    return c;
  }

  Signal synth(const CoefficientGrid& c, const Signal& w) const {
    if (c.lattice.L != lat.L || c.lattice.a != lat.a || c.lattice.M != lat.M)
      throw std::invalid_argument("grid mismatch");
    if (w.grid.length != lat.L) throw std::invalid_argument("grid mismatch");
    const std::size_t L = lat.L, a = lat.a, M = lat.M, cols = lat.time_steps();
    Signal f = Signal::zeros(Grid::make(L));
    std::vector<cplx> sm(M);
    for (std::size_t n = 0; n < cols; ++n) {
      std::copy(c.values.begin() + n * M, c.values.begin() + (n + 1) * M, sm.begin());
      fft.inverse(sm.data());  // sm[r] = sum_m c(m,n) exp(2 pi i r m / M)
      const std::size_t off = a * n;
      for (std::size_t u = 0; u < L; ++u) {
        std::size_t l = u + off;
        if (l >= L) l -= L;
        f.values[l] += sm[u % M] * w.values[u];
      }
    }
    return f;
  }

  // frame operator of the window w
  Signal apply_frame_op(const Signal& v, const Signal& w) const { return synth(analyze(v, w), w); }
};

Signal seeded_random_signal(const Grid& g, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> dist(0.0, 1.0);
  Signal v = Signal::zeros(g);
  for (auto& x : v.values) x = cplx(dist(rng), dist(rng));
  return v;
}

// Largest eigenvalue of op (Hermitian PSD) by power iteration. The Rayleigh
// quotient increases monotonically for PSD operators, so stop on either a
// small residual or a stagnating quotient (clustered spectra never reach a
// small residual).
template <class Op>
double power_iterate(const Grid& g, Op&& op, double tol, std::size_t maxit, unsigned seed) {
  Signal v = seeded_random_signal(g, seed);
  double rho = 0.0;
  double rho_prev = -1.0;
  std::size_t stagnant = 0;
  for (std::size_t it = 0; it < maxit; ++it) {
    double nv = l2_norm_unweighted(v);
    if (nv == 0.0) break;
    for (auto& x : v.values) x /= nv;
    Signal sv = op(v);
    double num = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i)
      num += (std::conj(v.values[i]) * sv.values[i]).real();
    rho = num;
    double res = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) res += std::norm(sv.values[i] - rho * v.values[i]);
    res = std::sqrt(res);
    v = std::move(sv);
    if (res <= tol * std::max(std::abs(rho), 1e-300)) break;
    if (rho - rho_prev <= 0.1 * tol * std::max(std::abs(rho), 1e-300)) {
      if (++stagnant >= 20) break;
    } else {
      stagnant = 0;
    }
    rho_prev = rho;
  }
  return rho;
}

std::pair<double, double> frame_bounds_impl(const Signal& g, const GaborLattice& lattice,
                                            double tol, std::size_t maxit) {
  DgtEngine eng(lattice);
  auto apply = [&](const Signal& v) { return eng.apply_frame_op(v, g); };
  double b_hi = power_iterate(g.grid, apply, tol, maxit, 1234u);
  const double shift = b_hi * (1.0 + 1e-6) + 1e-300;
  auto apply_shifted = [&](const Signal& v) {
    Signal sv = eng.apply_frame_op(v, g);
    for (std::size_t i = 0; i < sv.size(); ++i) sv.values[i] = shift * v.values[i] - sv.values[i];
    return sv;
  };
  double mu = power_iterate(g.grid, apply_shifted, tol, maxit, 4321u);
  double a_lo = std::max(shift - mu, 0.0);
  return {a_lo, b_hi};
}

}  // namespace

GaborLattice GaborLattice::make(std::size_t L, std::size_t a, std::size_t M, double hbar) {
  Grid::make(L);  // validates L
  if (a == 0 || L % a != 0) throw std::invalid_argument("GaborLattice: a must divide L");
  if (M == 0 || L % M != 0) throw std::invalid_argument("GaborLattice: M must divide L");
  if (!(hbar > 0.0)) throw std::invalid_argument("GaborLattice: hbar must be positive");
  return GaborLattice{L, a, M, hbar};
}

Signal gaussian_window(const GaborLattice& lattice) {
  if (!periodizable(lattice.hbar))
    throw std::invalid_argument("window not numerically periodizable");
  Grid g = Grid::make(lattice.L);
  Signal w = Signal::zeros(g);
  const double amp = std::pow(kPi * lattice.hbar, -0.25);
  for (std::size_t l = 0; l < lattice.L; ++l) {
    double x = wrap_displacement(g.point(l));
    double acc = 0.0;
    for (int j = -1; j <= 1; ++j) {
      double d = x + static_cast<double>(j);
      acc += std::exp(-d * d / (2.0 * lattice.hbar));
    }
    w.values[l] = amp * acc;
  }
  double s = l2_norm_unweighted(w);
  for (auto& v : w.values) v /= s;
  return w;
}

double gaussian_window_scale(const GaborLattice& lattice) {
  if (!periodizable(lattice.hbar))
    throw std::invalid_argument("window not numerically periodizable");
  Grid g = Grid::make(lattice.L);
  const double amp = std::pow(kPi * lattice.hbar, -0.25);
  double acc = 0.0;
  for (std::size_t l = 0; l < lattice.L; ++l) {
    double x = wrap_displacement(g.point(l));
    double val = 0.0;
    for (int j = -1; j <= 1; ++j) {
      double d = x + static_cast<double>(j);
      val += std::exp(-d * d / (2.0 * lattice.hbar));
    }
    acc += amp * val * amp * val;
  }
  return std::sqrt(acc);
}

CoefficientGrid analyze_with(const Signal& f, const Signal& window, const GaborLattice& lattice) {
  return DgtEngine(lattice).analyze(f, window);
}

Signal synth_with(const CoefficientGrid& c, const Signal& window, const GaborLattice& lattice) {
  return DgtEngine(lattice).synth(c, window);
}

std::pair<double, double> frame_bounds(const Signal& g, const GaborLattice& lattice, double tol,
                                       std::size_t maxit) {
  return frame_bounds_impl(g, lattice, tol, maxit);
}

std::pair<double, double> frame_bounds(const Signal& g, const GaborLattice& lattice) {
  return frame_bounds_impl(g, lattice, 1e-10, 100000);
}

Signal dual_window(const Signal& g, const GaborLattice& lattice) {
  if (g.grid.length != lattice.L) throw std::invalid_argument("grid mismatch");
  if (lattice.M <= lattice.a) throw std::runtime_error("not a frame");
  auto [a_lo, b_hi] = frame_bounds_impl(g, lattice, 1e-4, 400);
  if (!(a_lo > 1e-10 * b_hi)) throw std::runtime_error("not a frame");

  DgtEngine eng(lattice);
  const double gnorm = l2_norm_unweighted(g);
  Signal gamma = Signal::zeros(g.grid);
  Signal r = g;  // residual (gamma starts at 0)
  Signal p = r;
  double rs = 0.0;
  for (const auto& v : r.values) rs += std::norm(v);
  const double tol2 = 1e-13 * gnorm;
  bool converged = false;
  for (int it = 0; it < 2000; ++it) {
    if (std::sqrt(rs) <= tol2) {
      converged = true;
      break;
    }
    Signal sp = eng.apply_frame_op(p, g);
    cplx pap{};
    for (std::size_t i = 0; i < p.size(); ++i) pap += std::conj(p.values[i]) * sp.values[i];
    double alpha = rs / pap.real();
    double rs_new = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      gamma.values[i] += alpha * p.values[i];
      r.values[i] -= alpha * sp.values[i];
      rs_new += std::norm(r.values[i]);
    }
    double beta = rs_new / rs;
    for (std::size_t i = 0; i < p.size(); ++i) p.values[i] = r.values[i] + beta * p.values[i];
    rs = rs_new;
  }
  if (!converged && std::sqrt(rs) > 1e-8 * gnorm) throw std::runtime_error("not a frame");
  return gamma;
}

GaborSystem GaborSystem::make(const GaborLattice& lattice) {
  Signal g = gaussian_window(lattice);
  Signal gamma = dual_window(g, lattice);
  return GaborSystem{lattice, std::move(g), std::move(gamma), gaussian_window_scale(lattice)};
}

CoefficientGrid analyze(const Signal& f, const GaborSystem& sys) {
  return analyze_with(f, sys.dual, sys.lattice);
}

Signal synth(const CoefficientGrid& c, const GaborSystem& sys) {
  return synth_with(c, sys.window, sys.lattice);
}

ThresholdResult threshold(const CoefficientGrid& c, double eta) {
  if (eta < 0.0) throw std::invalid_argument("threshold: eta must be >= 0");
  ThresholdResult out{CoefficientGrid{c.lattice, std::vector<cplx>(c.values.size(), cplx{})}, {}};
  for (std::size_t i = 0; i < c.values.size(); ++i) {
    if (std::abs(c.values[i]) > eta) {
      out.coefficients.values[i] = c.values[i];
      out.retained.push_back(i);
    }
  }
  return out;
}

void write_coefficients_csv(const CoefficientGrid& c, const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  std::fputs("m,n,real,imag\n", f);
  const std::size_t M = c.lattice.M;
  for (std::size_t n = 0; n < c.lattice.time_steps(); ++n)
    for (std::size_t m = 0; m < M; ++m) {
      const cplx& v = c.at(m, n);
      std::fprintf(f, "%zu,%zu,%.17g,%.17g\n", m, n, v.real(), v.imag());
    }
  std::fclose(f);
}

}  // namespace gbeam
