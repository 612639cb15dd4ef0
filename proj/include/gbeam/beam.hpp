#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "gbeam/gabor.hpp"
#include "gbeam/potential.hpp"

namespace gbeam {

// One Gaussian beam: center (x, p), linearized-flow pair (M, N) with
// conj(M) N - M conj(N) = 2i, symmetrized action delta, and the winding count
// of M around 0 (fixes the branch of sqrt(M)). x lives on the universal cover
// and is wrapped only at synthesis time.
struct BeamState {
  double t = 0.0;
  double x = 0.0;
  double p = 0.0;
  cplx M{1.0, 0.0};
  cplx N{0.0, 1.0};
  double delta = 0.0;
  int branch = 0;

  // continuous argument of M
  double arg_m() const;
  cplx gamma() const;       // N / M; throws "focal point" when M ~ 0
  double im_gamma() const;  // Im(N/M), the inverse squared beam width
};

// Atom (n, m) of the lattice in signed index convention:
// x0 = a n / L, p0 = 2 pi hbar m L / M, delta0 = x0 p0 / 2, M0 = 1, N0 = i.
BeamState initial_state(long n, long m, const GaborLattice& lattice);

struct BeamEvent {
  double t = 0.0;
  std::string reason;
};

struct BeamTrajectory {
  std::vector<BeamState> samples;  // solver-accepted times, strictly increasing
  std::optional<BeamEvent> event;

  const BeamState& back() const { return samples.back(); }
};

// Integrate the beam system x' = p, p' = -V'(x), M' = N, N' = -V''(x) M,
// delta' = p^2/2 - V(x) with adaptive RK45 at absolute = relative
// tolerance tol. With width_event set, integration stops at the first time
// Im(N/M) drops below the threshold and the crossing is bisected to the
// recorded event time.
BeamTrajectory propagate(const BeamState& s0, const Potential& V, double t_end, double tol = 1e-10,
                         std::optional<double> width_event = std::nullopt);

// Final state only (still the full adaptive integration).
BeamState propagate_to(const BeamState& s0, const Potential& V, double t_end, double tol = 1e-10);

// Debug CSV: t,x,p,ReM,ImM,ReN,ImN,delta,branch
void write_trajectory_csv(const BeamTrajectory& traj, const std::string& path);

}  // namespace gbeam
