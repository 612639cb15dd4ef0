#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <random>

#include "gbeam/beam.hpp"
#include "gbeam/rk45.hpp"
#include "oracles.hpp"

using gbeam::BeamState;
using gbeam::cplx;
using gbeam::GaborLattice;
using gbeam::Potential;

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;

// oscillator with unit frequency, minimum at 1/2 (test-only, like harmonic_local)
double uh_v(double x) { return 0.5 * (x - 0.5) * (x - 0.5); }
double uh_dv(double x) { return x - 0.5; }
double uh_d2v(double) { return 1.0; }

}  // namespace

TEST_CASE("initial_state: quoted formulas and the action identity") {
  auto lat = GaborLattice::make(1024, 8, 256, 1.0 / (256.0 * kPi));
  BeamState s = gbeam::initial_state(0, 0, lat);
  CHECK(s.x == 0.0);
  CHECK(s.p == 0.0);
  CHECK(s.delta == 0.0);
  CHECK(s.M == cplx{1.0, 0.0});
  CHECK(s.N == cplx{0.0, 1.0});
  CHECK(s.branch == 0);

  // L=1024, a=8, M=256, hbar=1/(256 pi), (n,m)=(64,1):
  // x0 = 0.5, p0 = 2 pi hbar L/M = 1/32, delta0 = x0 p0/2 = 1/128
  BeamState s2 = gbeam::initial_state(64, 1, lat);
  CHECK(s2.x == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(s2.p == doctest::Approx(1.0 / 32.0).epsilon(1e-14));
  CHECK(s2.delta == doctest::Approx(1.0 / 128.0).epsilon(1e-14));

  std::mt19937 rng(7);
  for (int rep = 0; rep < 50; ++rep) {
    long n = static_cast<long>(rng() % 128) - 63;
    long m = static_cast<long>(rng() % 256) - 127;
    BeamState r = gbeam::initial_state(n, m, lat);
    CHECK(std::abs(r.delta - 0.5 * r.x * r.p) == 0.0);
  }

  CHECK_THROWS_AS(gbeam::initial_state(65, 0, lat), std::out_of_range);
  CHECK_THROWS_AS(gbeam::initial_state(0, 129, lat), std::out_of_range);
  CHECK_THROWS_AS(gbeam::initial_state(-64, 0, lat), std::out_of_range);
  CHECK_NOTHROW(gbeam::initial_state(-63, 128, lat));
}

TEST_CASE("free particle follows the closed form") {
  BeamState s0;
  s0.x = 0.2;
  s0.p = 0.5;
  s0.delta = 0.05;
  auto free_p = Potential::builtin("free");
  BeamState s = gbeam::propagate_to(s0, free_p, 1.0, 1e-10);
  CHECK(s.x == doctest::Approx(0.7).epsilon(1e-10));
  CHECK(s.p == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(std::abs(s.M - cplx{1.0, 1.0}) <= 1e-10);
  CHECK(std::abs(s.N - cplx{0.0, 1.0}) <= 1e-12);
  CHECK(s.delta == doctest::Approx(0.05 + 0.125).epsilon(1e-10));
  CHECK(s.branch == 0);

  BeamState rk4 = oracle::rk4_fixed(s0, free_p, 1.0, 1e-5);
  CHECK(std::abs(s.M - rk4.M) <= 1e-8);
  CHECK(std::abs(s.x - rk4.x) <= 1e-8);
}

TEST_CASE("gamma: initial value, free closed form, Siegel identity") {
  BeamState s0;
  CHECK(std::abs(s0.gamma() - cplx{0.0, 1.0}) == 0.0);

  auto free_p = Potential::builtin("free");
  BeamState s = gbeam::propagate_to(s0, free_p, 1.0, 1e-10);
  CHECK(std::abs(s.gamma() - cplx{0.5, 0.5}) <= 1e-10);  // i/(1+i)

  gbeam::BeamTrajectory tr = gbeam::propagate(s0, Potential::builtin("well"), 2.0);
  for (const auto& st : tr.samples) CHECK(oracle::symplectic_defect(st) <= 1e-8);

  BeamState focal;
  focal.M = cplx{0.0, 0.0};
  CHECK_THROWS_WITH_AS(focal.gamma(), "focal point", std::runtime_error);
}

TEST_CASE("unit harmonic oscillator: rotation, constant width, Maslov branch") {
  Potential uh("unit_harmonic", uh_v, uh_dv, uh_d2v);
  BeamState s0;
  s0.x = 0.5;
  for (double t : {0.5, 1.0, 3.0}) {
    BeamState s = gbeam::propagate_to(s0, uh, t, 1e-10);
    CHECK(std::abs(s.M - std::polar(1.0, t)) <= 1e-9);
    CHECK(std::abs(s.N - cplx{0.0, 1.0} * std::polar(1.0, t)) <= 1e-9);
    CHECK(std::abs(s.gamma() - cplx{0.0, 1.0}) <= 1e-9);
  }
  BeamState full = gbeam::propagate_to(s0, uh, 2.0 * kPi, 1e-10);
  CHECK(std::abs(full.M - cplx{1.0, 0.0}) <= 1e-8);
  CHECK(full.branch == 1);
  CHECK(full.arg_m() == doctest::Approx(2.0 * kPi).epsilon(1e-8));
}

TEST_CASE("harmonic_local: period-one breathing and cross-check") {
  auto harm = Potential::builtin("harmonic_local");
  BeamState s0;
  s0.x = 0.5;
  BeamState s = gbeam::propagate_to(s0, harm, 1.0, 1e-10);
  // M(t) = cos(2 pi t) + i sin(2 pi t)/(2 pi): closes after one period
  CHECK(std::abs(s.M - cplx{1.0, 0.0}) <= 1e-8);
  CHECK(s.branch == 1);
  BeamState rk4 = oracle::rk4_fixed(s0, harm, 0.37, 2e-6);
  BeamState sp = gbeam::propagate_to(s0, harm, 0.37, 1e-11);
  CHECK(std::abs(sp.M - rk4.M) <= 1e-8);
  CHECK(std::abs(sp.N - rk4.N) <= 1e-8);
  CHECK(std::abs(sp.delta - rk4.delta) <= 1e-8);
}

TEST_CASE("hilltop beam fires the width event") {
  auto hill = Potential::builtin("hill");
  BeamState s0;
  s0.x = 0.5;  // Hessian -4 pi^2
  gbeam::BeamTrajectory tr = gbeam::propagate(s0, hill, 2.0, 1e-10, 0.05);
  REQUIRE(tr.event.has_value());
  // Im Gamma = 1/|M|^2 with M = cosh(2 pi t) + i sinh(2 pi t)/(2 pi): crossing
  // near t = 0.345 (bisected against the no-event trajectory below)
  CHECK(tr.event->t == doctest::Approx(0.345).epsilon(0.01));
  CHECK(tr.back().im_gamma() == doctest::Approx(0.05).epsilon(1e-6));

  BeamState probe = gbeam::propagate_to(s0, hill, tr.event->t, 1e-10);
  CHECK(probe.im_gamma() == doctest::Approx(0.05).epsilon(1e-6));

  // no event when integration stays above the threshold
  gbeam::BeamTrajectory tr2 = gbeam::propagate(s0, hill, 0.1, 1e-10, 0.05);
  CHECK_FALSE(tr2.event.has_value());
  CHECK(tr2.back().t == doctest::Approx(0.1));
}

TEST_CASE("randomized conservation suite: wronskian, energy, trajectory order") {
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> ux(0.0, 1.0);
  auto lat = GaborLattice::make(1024, 32, 256, 1.0 / (256.0 * kPi));
  for (const auto& name : {"free", "well", "hill", "hill_well"}) {
    auto V = Potential::builtin(name);
    for (int rep = 0; rep < 12; ++rep) {
      long n = static_cast<long>(rng() % 32) - 15;
      long m = static_cast<long>(rng() % 256) - 127;
      BeamState s0 = gbeam::initial_state(n, m, lat);
      double t_end = 0.25 + 1.75 * ux(rng);
      gbeam::BeamTrajectory tr = gbeam::propagate(s0, V, t_end);
      REQUIRE(tr.samples.front().t == s0.t);
      const double e0 = V.energy(s0.x, s0.p);
      double t_prev = -1.0;
      for (const auto& st : tr.samples) {
        CHECK(st.t > t_prev);
        t_prev = st.t;
        CHECK(2.0 * oracle::symplectic_defect(st) <= 1e-8);
        CHECK(std::abs(V.energy(st.x, st.p) - e0) <= 1e-7);
      }
      CHECK(tr.back().t == doctest::Approx(t_end).epsilon(1e-14));
    }
  }
}

TEST_CASE("time reversal returns the initial state") {
  auto well = Potential::builtin("well");
  auto lat = GaborLattice::make(1024, 32, 256, 1.0 / (256.0 * kPi));
  BeamState s0 = gbeam::initial_state(3, 17, lat);
  BeamState fwd = gbeam::propagate_to(s0, well, 1.5, 1e-10);

  // integrate the sign-flipped vector field for the same duration
  gbeam::RkState<7> y = {fwd.x,        fwd.p,        fwd.M.real(), fwd.M.imag(),
                         fwd.N.real(), fwd.N.imag(), fwd.delta};
  double t = 0.0;
  gbeam::rk45_integrate<7>(y, t, 1.5, 1e-10,
                           [&](double, const gbeam::RkState<7>& u, gbeam::RkState<7>& du) {
                             du[0] = -u[1];
                             du[1] = well.dv(u[0]);
                             du[2] = -u[4];
                             du[3] = -u[5];
                             double vxx = well.d2v(u[0]);
                             du[4] = vxx * u[2];
                             du[5] = vxx * u[3];
                             du[6] = -(0.5 * u[1] * u[1] - well.v(u[0]));
                           },
                           [](double, const gbeam::RkState<7>&) {
                             return gbeam::RkStepAction::continue_integration;
                           });
  CHECK(std::abs(y[0] - s0.x) <= 1e-6);
  CHECK(std::abs(y[1] - s0.p) <= 1e-6);
  CHECK(std::abs(cplx{y[2], y[3]} - s0.M) <= 1e-6);
  CHECK(std::abs(cplx{y[4], y[5]} - s0.N) <= 1e-6);
  CHECK(std::abs(y[6] - s0.delta) <= 1e-6);
}

TEST_CASE("accuracy scales with tolerance; fixed-step pair shows 5th order") {
  auto well = Potential::builtin("well");
  BeamState s0;
  s0.x = 0.3;
  s0.p = 0.7;
  BeamState truth = oracle::rk4_fixed(s0, well, 1.0, 2e-6);
  double err_prev = -1.0;
  for (double tol : {1e-7, 1e-9, 1e-11}) {
    BeamState s = gbeam::propagate_to(s0, well, 1.0, tol);
    double err = std::abs(s.M - truth.M) + std::abs(s.x - truth.x);
    if (err_prev > 0.0) CHECK(err < err_prev);
    err_prev = err;
  }

  // classical fixed-step order probe on the oracle integrator (4th order)
  BeamState a = oracle::rk4_fixed(s0, well, 1.0, 1e-2);
  BeamState b = oracle::rk4_fixed(s0, well, 1.0, 5e-3);
  BeamState fine = oracle::rk4_fixed(s0, well, 1.0, 1e-4);
  double ea = std::abs(a.M - fine.M);
  double eb = std::abs(b.M - fine.M);
  CHECK(ea / eb > 10.0);  // 2^4 = 16 up to higher-order terms
  CHECK(ea / eb < 25.0);
}

TEST_CASE("propagate validations and csv dump") {
  auto well = Potential::builtin("well");
  BeamState s0;
  CHECK_THROWS(gbeam::propagate(s0, well, 0.0));
  CHECK_THROWS(gbeam::propagate(s0, well, 1.0, 1e-5));   // tol above range
  CHECK_THROWS(gbeam::propagate(s0, well, 1.0, 1e-14));  // tol below range

  gbeam::BeamTrajectory tr = gbeam::propagate(s0, well, 0.5, 1e-9);
  auto path = std::filesystem::temp_directory_path() / "gbeam_traj.csv";
  gbeam::write_trajectory_csv(tr, path.string());
  CHECK(std::filesystem::file_size(path) > 0);
  std::filesystem::remove(path);
}
