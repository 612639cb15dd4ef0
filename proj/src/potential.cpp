#include "gbeam/potential.hpp"

#include <cmath>
#include <stdexcept>

namespace gbeam {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kTwoPi = 2.0 * kPi;

double zero_fn(double) { return 0.0; }

double harm_v(double x) { return 2.0 * kPi * kPi * (x - 0.5) * (x - 0.5); }
double harm_dv(double x) { return 4.0 * kPi * kPi * (x - 0.5); }
double harm_d2v(double) { return 4.0 * kPi * kPi; }

double well_v(double x) { return std::cos(kTwoPi * x); }
double well_dv(double x) { return -kTwoPi * std::sin(kTwoPi * x); }
double well_d2v(double x) { return -kTwoPi * kTwoPi * std::cos(kTwoPi * x); }

double hill_v(double x) { return std::cos(kTwoPi * (x + 0.5)); }
double hill_dv(double x) { return -kTwoPi * std::sin(kTwoPi * (x + 0.5)); }
double hill_d2v(double x) { return -kTwoPi * kTwoPi * std::cos(kTwoPi * (x + 0.5)); }

double hw_v(double x) { return 10.0 + std::sin(kTwoPi * (x + 0.5)); }
double hw_dv(double x) { return kTwoPi * std::cos(kTwoPi * (x + 0.5)); }
double hw_d2v(double x) { return -kTwoPi * kTwoPi * std::sin(kTwoPi * (x + 0.5)); }

}  // namespace

Potential Potential::builtin(const std::string& name) {
  if (name == "free") return Potential(name, zero_fn, zero_fn, zero_fn);
  if (name == "harmonic_local") return Potential(name, harm_v, harm_dv, harm_d2v);
  if (name == "well") return Potential(name, well_v, well_dv, well_d2v);
  if (name == "hill") return Potential(name, hill_v, hill_dv, hill_d2v);
  if (name == "hill_well") return Potential(name, hw_v, hw_dv, hw_d2v);
  throw std::invalid_argument("unknown potential: " + name);
}

std::vector<std::string> Potential::builtin_names() {
  return {"free", "harmonic_local", "well", "hill", "hill_well"};
}

std::vector<SignRegion> hessian_sign_regions(const Potential& p, int resolution) {
  if (resolution < 16) throw std::invalid_argument("hessian_sign_regions: resolution >= 16");
  const int n = resolution;
  double scale = 0.0;
  std::vector<double> val(n + 1);
  for (int j = 0; j <= n; ++j) {
    val[j] = p.d2v(static_cast<double>(j) / n);
    scale = std::max(scale, std::abs(val[j]));
  }
  const double tol = (scale > 0.0) ? 1e-10 * scale : 0.0;
  auto sgn = [&](double v) { return (v > tol) ? 1 : (v < -tol ? -1 : 0); };

  auto refine = [&](double lo, double hi, int slo) {
    // bisect the sign change of d2v inside [lo, hi]; d2v(lo) has sign slo
    for (int it = 0; it < 60; ++it) {
      double mid = 0.5 * (lo + hi);
      if (sgn(p.d2v(mid)) == slo)
        lo = mid;
      else
        hi = mid;
    }
    return 0.5 * (lo + hi);
  };

  // classify the strictly signed samples; isolated zeros at crossings are
  // swallowed by the bisection between their signed neighbors
  std::vector<SignRegion> regions;
  int cur = 0;
  int cur_idx = 0;
  double start = 0.0;
  for (int j = 0; j <= n; ++j) {
    int s = sgn(val[j]);
    if (s == 0) continue;
    if (cur == 0) {
      cur = s;
      cur_idx = j;
      continue;
    }
    if (s == cur) {
      cur_idx = j;
      continue;
    }
    double b = refine(static_cast<double>(cur_idx) / n, static_cast<double>(j) / n, cur);
    regions.push_back({start, b, cur});
    start = b;
    cur = s;
    cur_idx = j;
  }
  regions.push_back({start, 1.0, cur});
  return regions;
}

}  // namespace gbeam
