#include "gbeam/beam_eval.hpp"

#include <cmath>
#include <stdexcept>

#include "gbeam/kernels.hpp"

namespace gbeam {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
}

BeamAmplitude amplitude(const BeamState& s, double hbar) {
  const double absm = std::abs(s.M);
  if (absm < 1e-12) throw std::runtime_error("focal point");
  const double mod = std::pow(kPi * hbar, -0.25) / std::sqrt(absm);
  return BeamAmplitude{std::polar(mod, -0.5 * s.arg_m())};
}

void accumulate_beam(Signal& out, const BeamState& s, cplx weight, double hbar) {
  const double im_gamma = s.im_gamma();
  if (!(im_gamma > 0.0)) throw std::runtime_error("beam width not positive");
  const cplx gam = s.gamma();
  const cplx a = amplitude(s, hbar).value;

  const std::size_t L = out.grid.length;
  const double xc = s.x - std::floor(s.x);  // wrapped center in [0, 1)
  const double radius = std::min(0.5, 8.0 * std::sqrt(hbar / im_gamma));

  // grid indices covering [xc - radius, xc + radius]
  const double Ld = static_cast<double>(L);
  long lo = static_cast<long>(std::ceil((xc - radius) * Ld));
  long hi = static_cast<long>(std::floor((xc + radius) * Ld));
  if (hi - lo + 1 >= static_cast<long>(L)) {
    // full coverage: one period centered at xc keeps d wrapped
    lo = static_cast<long>(std::ceil((xc - 0.5) * Ld));
    hi = lo + static_cast<long>(L) - 1;
  }

  // exp(A d^2 + B d + C), d = x_l - xc
  const cplx A = (cplx{0.0, 1.0} * gam) / (2.0 * hbar);
  const cplx B = cplx{0.0, s.p / hbar};
  const cplx C = cplx{0.0, s.delta / hbar};
  const cplx w = weight * a;

  // contiguous output spans (the support may cross the seam)
  long first = lo;
  while (first <= hi) {
    long lw = ((first % static_cast<long>(L)) + static_cast<long>(L)) % static_cast<long>(L);
    long span = std::min(hi - first + 1, static_cast<long>(L) - lw);
    double d0 = static_cast<double>(first) / Ld - xc;
    kernels::accumulate_quadratic_exp(out.values.data() + lw, static_cast<std::size_t>(span), w,
                                      A, B, C, d0, 1.0 / Ld);
    first += span;
  }
}

Signal evaluate_beam(const BeamState& s, cplx coefficient, double hbar, const Grid& grid) {
  Signal out = Signal::zeros(grid);
  accumulate_beam(out, s, coefficient, hbar);
  return out;
}

}  // namespace gbeam
