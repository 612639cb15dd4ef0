#pragma once

#include <cstddef>

#include "gbeam/fft.hpp"
#include "gbeam/grid.hpp"
#include "gbeam/potential.hpp"

namespace gbeam {

// Strang-splitting step count/size for a horizon T: dt is shrunk so that
// steps * dt == T exactly.
struct StrangConfig {
  double dt = 0.0;
  std::size_t steps = 0;
  double hbar = 0.0;

  static StrangConfig make(double T, double dt_requested, double hbar);
};

// Pseudo-spectral reference solver for i hbar u_t = (-hbar^2/2 d_xx + V) u on
// the periodic grid:
//   u <- exp(-i V dt / (2 hbar)) IDFT[ exp(-i hbar (2 pi k)^2 dt / 2) DFT[
//        exp(-i V dt / (2 hbar)) u ] ].
// Negative dt integrates backwards.
class StrangSolver {
 public:
  StrangSolver(const Grid& grid, const Potential& V, double hbar, double dt);

  const Grid& grid() const { return grid_; }
  double dt() const { return dt_; }
  void step(Signal& u) const;
  Signal solve(const Signal& u0, std::size_t steps) const;

 private:
  Grid grid_;
  double dt_;
  Fft fft_;
  std::vector<cplx> half_potential_;  // exp(-i V dt / (2 hbar))
  std::vector<cplx> kinetic_;         // exp(-i hbar (2 pi k)^2 dt / 2) / L, DC-first order
};

// One step in the spec's operator form.
Signal strang_step(const Signal& u, const Potential& V, double hbar, double dt);

// Integrate u0 over [0, T] with step size ~dt (adjusted to divide T).
Signal strang_solve(const Signal& u0, const Potential& V, double T, double dt, double hbar);

}  // namespace gbeam
