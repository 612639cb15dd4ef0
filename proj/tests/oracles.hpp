#pragma once

// Test-only oracles, independent of the library's transform/integration paths:
// a naive DFT, dense Gabor frame algebra (Eigen), a fixed-step integrator for
// the beam system, and moment helpers.

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "gbeam/beam.hpp"
#include "gbeam/gabor.hpp"
#include "gbeam/grid.hpp"
#include "gbeam/potential.hpp"

namespace oracle {

using gbeam::cplx;
constexpr double kPi = 3.141592653589793238462643383279502884;

inline std::vector<cplx> naive_dft(const std::vector<cplx>& x) {
  const std::size_t n = x.size();
  std::vector<cplx> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    cplx acc{};
    for (std::size_t l = 0; l < n; ++l)
      acc += x[l] * std::polar(1.0, -2.0 * kPi * static_cast<double>(k * l % n) /
                                        static_cast<double>(n));
    out[k] = acc;
  }
  return out;
}

inline gbeam::Signal random_signal(const gbeam::Grid& g, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> dist(0.0, 1.0);
  gbeam::Signal s = gbeam::Signal::zeros(g);
  for (auto& v : s.values) v = cplx(dist(rng), dist(rng));
  return s;
}

// Dense analysis matrix of the phase-locked system with window w: rows are
// atoms (n * M + m), columns are samples; coefficient vector = A * f with
// A(row, l) = conj(w(l - a n)) exp(-2 pi i (l - a n) m / M).
inline Eigen::MatrixXcd dense_analysis_matrix(const gbeam::Signal& w,
                                              const gbeam::GaborLattice& lat) {
  const std::size_t L = lat.L, a = lat.a, M = lat.M, cols = lat.time_steps();
  Eigen::MatrixXcd A(cols * M, L);
  for (std::size_t n = 0; n < cols; ++n)
    for (std::size_t m = 0; m < M; ++m)
      for (std::size_t l = 0; l < L; ++l) {
        std::size_t u = (l + L - (a * n) % L) % L;
        cplx mod = std::polar(1.0, -2.0 * kPi * static_cast<double>((u % M) * m) /
                                       static_cast<double>(M));
        A(n * M + m, l) = std::conj(w.values[u]) * mod;
      }
  return A;
}

// Dense synthesis matrix: f = B * c with
// B(l, row) = w(l - a n) exp(2 pi i (l - a n) m / M).
inline Eigen::MatrixXcd dense_synthesis_matrix(const gbeam::Signal& w,
                                               const gbeam::GaborLattice& lat) {
  return dense_analysis_matrix(w, lat).adjoint();
}

inline Eigen::MatrixXcd dense_frame_operator(const gbeam::Signal& w,
                                             const gbeam::GaborLattice& lat) {
  Eigen::MatrixXcd A = dense_analysis_matrix(w, lat);
  return A.adjoint() * A;
}

inline gbeam::Signal dense_dual_window(const gbeam::Signal& g, const gbeam::GaborLattice& lat) {
  Eigen::MatrixXcd S = dense_frame_operator(g, lat);
  Eigen::VectorXcd gv(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) gv(static_cast<long>(i)) = g.values[i];
  Eigen::VectorXcd gam = S.fullPivLu().solve(gv);
  gbeam::Signal out = gbeam::Signal::zeros(g.grid);
  for (std::size_t i = 0; i < g.size(); ++i) out.values[i] = gam(static_cast<long>(i));
  return out;
}

inline std::pair<double, double> dense_frame_bounds(const gbeam::Signal& g,
                                                    const gbeam::GaborLattice& lat) {
  Eigen::MatrixXcd S = dense_frame_operator(g, lat);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(S);
  const auto& ev = es.eigenvalues();
  return {ev(0), ev(ev.size() - 1)};
}

// Fixed-step classical RK4 on the 7-dimensional beam system; cross-checks the
// adaptive integrator.
inline gbeam::BeamState rk4_fixed(const gbeam::BeamState& s0, const gbeam::Potential& V,
                                  double t_end, double dt) {
  std::array<double, 7> y = {s0.x,        s0.p,        s0.M.real(), s0.M.imag(),
                             s0.N.real(), s0.N.imag(), s0.delta};
  auto rhs = [&](const std::array<double, 7>& u) {
    std::array<double, 7> d;
    d[0] = u[1];
    d[1] = -V.dv(u[0]);
    d[2] = u[4];
    d[3] = u[5];
    double vxx = V.d2v(u[0]);
    d[4] = -vxx * u[2];
    d[5] = -vxx * u[3];
    d[6] = 0.5 * u[1] * u[1] - V.v(u[0]);
    return d;
  };
  double t = s0.t;
  double arg_prev = std::atan2(s0.M.imag(), s0.M.real());
  int branch = s0.branch;
  while (t < t_end - 1e-15) {
    double h = std::min(dt, t_end - t);
    auto k1 = rhs(y);
    std::array<double, 7> tmp;
    for (int i = 0; i < 7; ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
    auto k2 = rhs(tmp);
    for (int i = 0; i < 7; ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
    auto k3 = rhs(tmp);
    for (int i = 0; i < 7; ++i) tmp[i] = y[i] + h * k3[i];
    auto k4 = rhs(tmp);
    for (int i = 0; i < 7; ++i) y[i] += h / 6.0 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
    t += h;
    double arg_new = std::atan2(y[3], y[2]);
    if (arg_new - arg_prev > kPi) --branch;
    if (arg_new - arg_prev < -kPi) ++branch;
    arg_prev = arg_new;
  }
  gbeam::BeamState s;
  s.t = t_end;
  s.x = y[0];
  s.p = y[1];
  s.M = {y[2], y[3]};
  s.N = {y[4], y[5]};
  s.delta = y[6];
  s.branch = branch;
  return s;
}

// Im(conj(M) N) - 1 with compensated products: the two terms cancel to O(1)
// from magnitudes ~ |M||N|, so the plain-double evaluation noise would swamp
// the integrator's actual drift on exponentially stretched trajectories.
// Both spec invariants reduce to this quantity in d = 1:
// |conj(M)N - M conj(N) - 2i| = 2|d| and |Im(N/M) |M|^2 - 1| = |d|.
inline double symplectic_defect(const gbeam::BeamState& s) {
  const double a = s.N.imag(), b = s.M.real(), c = s.N.real(), d = s.M.imag();
  double p1 = a * b, e1 = std::fma(a, b, -p1);
  double p2 = c * d, e2 = std::fma(c, d, -p2);
  return std::abs((p1 - p2 - 1.0) + (e1 - e2));
}

// center and standard deviation of |u|^2 as a distribution in the wrapped
// displacement from x_ref
inline std::pair<double, double> beam_moments(const gbeam::Signal& u, double x_ref) {
  double w_sum = 0.0, m1 = 0.0, m2 = 0.0;
  for (std::size_t l = 0; l < u.size(); ++l) {
    double w = std::norm(u.values[l]);
    double d = gbeam::wrap_displacement(u.grid.point(l) - x_ref);
    w_sum += w;
    m1 += w * d;
    m2 += w * d * d;
  }
  m1 /= w_sum;
  m2 /= w_sum;
  return {m1, std::sqrt(std::max(m2 - m1 * m1, 0.0))};
}

}  // namespace oracle
