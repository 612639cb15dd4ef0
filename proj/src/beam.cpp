#include "gbeam/beam.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "gbeam/rk45.hpp"

namespace gbeam {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kFocalEps = 1e-12;

using Y = RkState<7>;  // x, p, Re M, Im M, Re N, Im N, delta

Y pack(const BeamState& s) {
  return {s.x, s.p, s.M.real(), s.M.imag(), s.N.real(), s.N.imag(), s.delta};
}

BeamState unpack(double t, const Y& y, int branch) {
  BeamState s;
  s.t = t;
  s.x = y[0];
  s.p = y[1];
  s.M = {y[2], y[3]};
  s.N = {y[4], y[5]};
  s.delta = y[6];
  s.branch = branch;
  return s;
}

double principal_arg(const cplx& z) { return std::atan2(z.imag(), z.real()); }

// keeps |continuous - principal| a multiple of 2 pi while following the
// smaller increment across a step
int update_branch(int branch, double arg_prev, double arg_new) {
  double d = arg_new - arg_prev;
  if (d > kPi) return branch - 1;
  if (d < -kPi) return branch + 1;
  return branch;
}

struct BeamRhs {
  const Potential& V;
  void operator()(double, const Y& y, Y& dy) const {
    dy[0] = y[1];
    dy[1] = -V.dv(y[0]);
    dy[2] = y[4];
    dy[3] = y[5];
    const double vxx = V.d2v(y[0]);
    dy[4] = -vxx * y[2];
    dy[5] = -vxx * y[3];
    dy[6] = 0.5 * y[1] * y[1] - V.v(y[0]);
  }
};

void check_focal(const cplx& m) {
  if (std::abs(m) < kFocalEps) throw std::runtime_error("focal point");
}

// integrate with branch tracking, no events
BeamState advance(const BeamState& s0, const Potential& V, double t_end, double tol) {
  Y y = pack(s0);
  double t = s0.t;
  int branch = s0.branch;
  double arg_prev = principal_arg(s0.M);
  rk45_integrate<7>(y, t, t_end, tol, BeamRhs{V}, [&](double, const Y& ya) {
    cplx m{ya[2], ya[3]};
    check_focal(m);
    double arg_new = principal_arg(m);
    branch = update_branch(branch, arg_prev, arg_new);
    arg_prev = arg_new;
    return RkStepAction::continue_integration;
  });
  return unpack(t, y, branch);
}

}  // namespace

double BeamState::arg_m() const { return principal_arg(M) + 2.0 * kPi * branch; }

cplx BeamState::gamma() const {
  check_focal(M);
  return N / M;
}

double BeamState::im_gamma() const { return gamma().imag(); }

BeamState initial_state(long n, long m, const GaborLattice& lat) {
  const long cols = static_cast<long>(lat.time_steps());
  const long chan = static_cast<long>(lat.M);
  if (n <= -(cols - cols / 2) || n > cols / 2) throw std::out_of_range("index out of range");
  if (m <= -(chan - chan / 2) || m > chan / 2) throw std::out_of_range("index out of range");
  BeamState s;
  s.t = 0.0;
  s.x = lat.atom_position(n);
  s.p = lat.atom_momentum(m);
  s.delta = 0.5 * s.x * s.p;
  s.M = {1.0, 0.0};
  s.N = {0.0, 1.0};
  s.branch = 0;
  return s;
}

BeamTrajectory propagate(const BeamState& s0, const Potential& V, double t_end, double tol,
                         std::optional<double> width_event) {
  if (!(t_end > s0.t)) throw std::invalid_argument("propagate: t_end must exceed s0.t");
  check_focal(s0.M);

  BeamTrajectory traj;
  traj.samples.push_back(s0);
  if (width_event && s0.im_gamma() < *width_event) {
    traj.event = BeamEvent{s0.t, "beam width threshold"};
    return traj;
  }

  Y y = pack(s0);
  double t = s0.t;
  int branch = s0.branch;
  double arg_prev = principal_arg(s0.M);
  bool fired = false;
  BeamState before = s0;  // last accepted state ahead of the event

  rk45_integrate<7>(y, t, t_end, tol, BeamRhs{V}, [&](double ta, const Y& ya) {
    cplx m{ya[2], ya[3]};
    check_focal(m);
    double arg_new = principal_arg(m);
    branch = update_branch(branch, arg_prev, arg_new);
    arg_prev = arg_new;
    BeamState s = unpack(ta, ya, branch);
    if (width_event && s.im_gamma() < *width_event) {
      fired = true;
      // crossing lies in (before.t, ta]; bisect by re-integration
      double lo = before.t, hi = ta;
      for (int it = 0; it < 60 && hi - lo > 1e-13 * std::max(1.0, hi); ++it) {
        double mid = 0.5 * (lo + hi);
        if (mid <= before.t || mid >= ta) break;
        BeamState sm = advance(before, V, mid, tol);
        if (sm.im_gamma() < *width_event)
          hi = mid;
        else
          lo = mid;
      }
      BeamState se = (hi > before.t) ? advance(before, V, hi, tol) : before;
      traj.samples.push_back(se);
      traj.event = BeamEvent{se.t, "beam width threshold"};
      return RkStepAction::stop;
    }
    traj.samples.push_back(s);
    before = s;
    return RkStepAction::continue_integration;
  });

  if (!fired && traj.samples.back().t < t_end) {
    // rk45 always lands exactly on t_end; defensive
    traj.samples.push_back(unpack(t_end, y, branch));
  }
  return traj;
}

BeamState propagate_to(const BeamState& s0, const Potential& V, double t_end, double tol) {
  if (t_end == s0.t) return s0;
  return advance(s0, V, t_end, tol);
}

void write_trajectory_csv(const BeamTrajectory& traj, const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  std::fputs("t,x,p,ReM,ImM,ReN,ImN,delta,branch\n", f);
  for (const auto& s : traj.samples)
    std::fprintf(f, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%d\n", s.t, s.x, s.p,
                 s.M.real(), s.M.imag(), s.N.real(), s.N.imag(), s.delta, s.branch);
  std::fclose(f);
}

}  // namespace gbeam
