#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace gbeam {

// Adaptive Dormand-Prince 5(4) embedded pair over a fixed-size real state.
// The per-step callback sees each accepted state and may stop the
// integration early (event handling lives in the caller).
template <std::size_t N>
using RkState = std::array<double, N>;

enum class RkStepAction { continue_integration, stop };

template <std::size_t N, class Rhs, class OnAccept>
void rk45_integrate(RkState<N>& y, double& t, double t_end, double tol, Rhs&& rhs,
                    OnAccept&& on_accept) {
  static_assert(N >= 1);
  if (!(t_end > t)) throw std::invalid_argument("rk45: t_end must exceed start time");
  if (!(tol >= 1e-13 && tol <= 1e-6)) throw std::invalid_argument("rk45: tol out of [1e-13, 1e-6]");

  // Dormand-Prince coefficients
  constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  constexpr double a21 = 1.0 / 5;
  constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                   a54 = -212.0 / 729;
  constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                   a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                   b6 = 11.0 / 84;
  constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                   e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

  const double span = t_end - t;
  double h = span / 100.0;
  const double h_min = std::max(span, 1.0) * 1e-14;

  RkState<N> k1{}, k2{}, k3{}, k4{}, k5{}, k6{}, k7{}, ytmp{}, ynew{};
  rhs(t, y, k1);
  bool have_k1 = true;

  while (t < t_end) {
    // underflow of the controller-chosen step means a stiff/singular problem;
    // a tiny remaining span is simply the final step
    if (h < h_min && t_end - t > h_min) throw std::runtime_error("stiff or singular");
    if (h > t_end - t || t_end - t <= h_min) h = t_end - t;
    if (!have_k1) {
      rhs(t, y, k1);
      have_k1 = true;
    }
    for (std::size_t i = 0; i < N; ++i) ytmp[i] = y[i] + h * a21 * k1[i];
    rhs(t + c2 * h, ytmp, k2);
    for (std::size_t i = 0; i < N; ++i) ytmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
    rhs(t + c3 * h, ytmp, k3);
    for (std::size_t i = 0; i < N; ++i)
      ytmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    rhs(t + c4 * h, ytmp, k4);
    for (std::size_t i = 0; i < N; ++i)
      ytmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    rhs(t + c5 * h, ytmp, k5);
    for (std::size_t i = 0; i < N; ++i)
      ytmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
    rhs(t + h, ytmp, k6);
    for (std::size_t i = 0; i < N; ++i)
      ynew[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
    rhs(t + h, ynew, k7);

    double err = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      double sc = tol + tol * std::max(std::abs(y[i]), std::abs(ynew[i]));
      err += (e / sc) * (e / sc);
    }
    err = std::sqrt(err / static_cast<double>(N));

    if (err <= 1.0) {
      t += h;
      y = ynew;
      k1 = k7;  // FSAL
      if (on_accept(t, y) == RkStepAction::stop) return;
    } else {
      have_k1 = true;  // k1 still valid at unchanged (t, y)
    }
    double factor = 0.9 * std::pow(std::max(err, 1e-10), -0.2);
    factor = std::min(5.0, std::max(0.2, factor));
    h *= factor;
  }
}

}  // namespace gbeam
