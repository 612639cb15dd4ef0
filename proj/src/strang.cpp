#include "gbeam/strang.hpp"

#include <cmath>
#include <stdexcept>

#include "gbeam/kernels.hpp"

namespace gbeam {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
}

StrangConfig StrangConfig::make(double T, double dt_requested, double hbar) {
  if (!(T > 0.0) || !(dt_requested > 0.0))
    throw std::invalid_argument("StrangConfig: T and dt must be positive");
  if (dt_requested > T) dt_requested = T;
  auto steps = static_cast<std::size_t>(std::ceil(T / dt_requested - 1e-12));
  if (steps == 0) steps = 1;
  return StrangConfig{T / static_cast<double>(steps), steps, hbar};
}

StrangSolver::StrangSolver(const Grid& grid, const Potential& V, double hbar, double dt)
    : grid_(grid), dt_(dt), fft_(grid.length) {
  if (!(hbar > 0.0)) throw std::invalid_argument("StrangSolver: hbar must be positive");
  const std::size_t L = grid.length;
  half_potential_.resize(L);
  kinetic_.resize(L);
  for (std::size_t l = 0; l < L; ++l)
    half_potential_[l] = std::polar(1.0, -V.v(grid.point(l)) * dt / (2.0 * hbar));
  const double inv_l = 1.0 / static_cast<double>(L);
  for (std::size_t i = 0; i < L; ++i) {
    // DC-first FFT ordering: frequency k = i for i < L/2, else i - L
    long k = static_cast<long>(i) < static_cast<long>(L) / 2
                 ? static_cast<long>(i)
                 : static_cast<long>(i) - static_cast<long>(L);
    double om = 2.0 * kPi * static_cast<double>(k);
    kinetic_[i] = std::polar(inv_l, -hbar * om * om * dt / 2.0);
  }
}

void StrangSolver::step(Signal& u) const {
  if (u.grid.length != grid_.length) throw std::invalid_argument("grid mismatch");
  kernels::cmul(u.values.data(), half_potential_.data(), u.values.size());
  fft_.forward(u.values.data());
  kernels::cmul(u.values.data(), kinetic_.data(), u.values.size());
  fft_.inverse(u.values.data());
  kernels::cmul(u.values.data(), half_potential_.data(), u.values.size());
}

Signal StrangSolver::solve(const Signal& u0, std::size_t steps) const {
  Signal u = u0;
  for (std::size_t i = 0; i < steps; ++i) step(u);
  return u;
}

Signal strang_step(const Signal& u, const Potential& V, double hbar, double dt) {
  StrangSolver solver(u.grid, V, hbar, dt);
  Signal out = u;
  solver.step(out);
  return out;
}

Signal strang_solve(const Signal& u0, const Potential& V, double T, double dt, double hbar) {
  StrangConfig cfg = StrangConfig::make(T, dt, hbar);
  StrangSolver solver(u0.grid, V, hbar, cfg.dt);
  return solver.solve(u0, cfg.steps);
}

}  // namespace gbeam
