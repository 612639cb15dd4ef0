#pragma once

#include "gbeam/beam.hpp"
#include "gbeam/grid.hpp"

namespace gbeam {

struct BeamAmplitude {
  cplx value{};
};

// a(t) = (pi hbar)^{-1/4} |M|^{-1/2} exp(-i arg_cont(M) / 2), the branch-true
// square root (pi hbar)^{-1/4} M^{-1/2}.
BeamAmplitude amplitude(const BeamState& s, double hbar);

// out += weight * phi with
// phi(x) = exp(i delta/hbar) exp(i p (x-x_t)/hbar) a(t) exp(i Gamma (x-x_t)^2/(2 hbar)),
// evaluated at the wrapped displacement of minimal absolute value and
// truncated beyond min(1/2, 8 sqrt(hbar/Im Gamma)) from the center.
void accumulate_beam(Signal& out, const BeamState& s, cplx weight, double hbar);

Signal evaluate_beam(const BeamState& s, cplx coefficient, double hbar, const Grid& grid);

}  // namespace gbeam
