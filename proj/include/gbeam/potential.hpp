#pragma once

#include <string>
#include <vector>

namespace gbeam {

// Potential on the periodic unit interval with closed-form derivatives; the
// Hamiltonian is H(x, p) = V(x) + p^2/2. harmonic_local is a non-periodic
// test potential used near its minimum on sub-intervals.
class Potential {
 public:
  using Fn = double (*)(double);

  Potential() = default;
  Potential(std::string name, Fn v, Fn dv, Fn d2v)
      : name_(std::move(name)), v_(v), dv_(dv), d2v_(d2v) {}

  const std::string& name() const { return name_; }
  double v(double x) const { return v_(x); }
  double dv(double x) const { return dv_(x); }
  double d2v(double x) const { return d2v_(x); }
  double energy(double x, double p) const { return 0.5 * p * p + v(x); }

  // free, harmonic_local, well, hill, hill_well; throws on unknown name
  static Potential builtin(const std::string& name);
  static std::vector<std::string> builtin_names();

 private:
  std::string name_;
  Fn v_ = nullptr;
  Fn dv_ = nullptr;
  Fn d2v_ = nullptr;
};

struct SignRegion {
  double lo = 0.0;
  double hi = 0.0;
  int sign = 0;  // sign of d2v on (lo, hi)
};

// Sign of the Hessian sampled at `resolution` points, contiguous runs merged;
// run boundaries are refined by bisection on d2v. resolution >= 16.
std::vector<SignRegion> hessian_sign_regions(const Potential& p, int resolution);

}  // namespace gbeam
