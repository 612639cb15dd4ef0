#include <doctest.h>

#include <cmath>

#include "gbeam/potential.hpp"

using gbeam::Potential;

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
}

TEST_CASE("builtin values at reference points") {
  auto well = Potential::builtin("well");
  CHECK(well.v(0.5) == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(std::abs(well.dv(0.5)) <= 1e-12);
  CHECK(well.d2v(0.5) == doctest::Approx(4.0 * kPi * kPi).epsilon(1e-14));

  auto hill = Potential::builtin("hill");
  CHECK(hill.v(0.5) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(hill.d2v(0.5) == doctest::Approx(-4.0 * kPi * kPi).epsilon(1e-14));

  auto free_p = Potential::builtin("free");
  for (double x : {0.0, 0.3, 0.9}) {
    CHECK(free_p.v(x) == 0.0);
    CHECK(free_p.dv(x) == 0.0);
    CHECK(free_p.d2v(x) == 0.0);
  }

  auto hw = Potential::builtin("hill_well");
  CHECK(hw.v(0.25) == doctest::Approx(9.0).epsilon(1e-14));   // well bottom
  CHECK(hw.v(0.75) == doctest::Approx(11.0).epsilon(1e-14));  // hill top
  CHECK(hw.d2v(0.25) == doctest::Approx(4.0 * kPi * kPi).epsilon(1e-13));
  CHECK(hw.d2v(0.75) == doctest::Approx(-4.0 * kPi * kPi).epsilon(1e-13));

  auto harm = Potential::builtin("harmonic_local");
  CHECK(harm.v(0.5) == 0.0);
  CHECK(harm.d2v(0.1) == doctest::Approx(4.0 * kPi * kPi));

  CHECK_THROWS(Potential::builtin("bogus"));
}

TEST_CASE("derivatives agree with central finite differences") {
  const double h = 1e-5;
  for (const auto& name : Potential::builtin_names()) {
    auto p = Potential::builtin(name);
    for (int j = 0; j <= 100; ++j) {
      double x = static_cast<double>(j) / 100.0;
      double fd1 = (p.v(x + h) - p.v(x - h)) / (2.0 * h);
      double fd2 = (p.v(x + h) - 2.0 * p.v(x) + p.v(x - h)) / (h * h);
      CHECK(std::abs(fd1 - p.dv(x)) <= 1e-6);
      CHECK(std::abs(fd2 - p.d2v(x)) <= 1e-4);
    }
  }
}

TEST_CASE("periodic builtins wrap to 1e-12") {
  for (const auto& name : {"free", "well", "hill", "hill_well"}) {
    auto p = Potential::builtin(name);
    for (int j = 0; j < 37; ++j) {
      double x = static_cast<double>(j) / 37.0;
      CHECK(std::abs(p.v(x + 1.0) - p.v(x)) <= 1e-12);
    }
  }
}

TEST_CASE("hessian sign regions") {
  CHECK_THROWS(hessian_sign_regions(Potential::builtin("well"), 8));

  auto find_region = [](const std::vector<gbeam::SignRegion>& rs, int sign) {
    for (const auto& r : rs)
      if (r.sign == sign && r.hi - r.lo > 0.3) return r;
    return gbeam::SignRegion{};
  };

  // well: positive Hessian exactly on [0.25, 0.75]
  auto rw = hessian_sign_regions(Potential::builtin("well"), 64);
  auto pos = find_region(rw, +1);
  CHECK(pos.lo == doctest::Approx(0.25).epsilon(1e-9));
  CHECK(pos.hi == doctest::Approx(0.75).epsilon(1e-9));

  // hill: non-positive Hessian on [0.25, 0.75]
  auto rh = hessian_sign_regions(Potential::builtin("hill"), 64);
  auto neg = find_region(rh, -1);
  CHECK(neg.lo == doctest::Approx(0.25).epsilon(1e-9));
  CHECK(neg.hi == doctest::Approx(0.75).epsilon(1e-9));

  // hill_well: V'' = -4 pi^2 sin(2 pi (x + 1/2)), non-positive on [0.5, 1]
  auto rhw = hessian_sign_regions(Potential::builtin("hill_well"), 64);
  auto neg2 = find_region(rhw, -1);
  CHECK(neg2.lo == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(neg2.hi == doctest::Approx(1.0).epsilon(1e-9));

  // free: flat everywhere
  auto rf = hessian_sign_regions(Potential::builtin("free"), 64);
  REQUIRE(rf.size() == 1);
  CHECK(rf[0].sign == 0);
  CHECK(rf[0].lo == 0.0);
  CHECK(rf[0].hi == 1.0);
}
