#pragma once

#include <map>
#include <string>
#include <vector>

#include "gbeam/gabor.hpp"
#include "gbeam/grid.hpp"
#include "gbeam/potential.hpp"
#include "gbeam/propagator.hpp"

namespace gbeam {

// Initial datum selection. "paper" is the chirped Gaussian
// u0(x) = exp(-25 (x-1/2)^2) exp(i tau0(x)/h),
// tau0(x) = -(1/5) log(exp(5(x-1/2)) + exp(-5(x-1/2)));
// "windowed" multiplies it by exp(-sigma (x-c)^2), "shifted" rolls it by half
// the signal length.
struct DatumSpec {
  enum class Kind { paper, windowed, shifted };
  Kind kind = Kind::paper;
  double sigma = 200.0;
  double center = 0.5;

  static DatumSpec parse(const std::string& text);
  std::string str() const;
};

struct Scenario {
  std::string name = "custom";
  std::size_t L = 1024;
  double hbar = 1.0 / (256.0 * 3.141592653589793238462643383279502884);
  std::size_t a = 32;
  std::size_t M = 256;
  std::string potential = "well";
  DatumSpec datum;
  double eta = 0.01;
  double T = 1.0;
  ReinitPolicy reinit;
  std::vector<double> output_times;  // defaults to {T}
  double reference_dt = 1e-4;
  double ode_tol = 1e-10;
  bool with_reference = true;
  int threads = 1;

  // order-probe scenarios run a multi-hbar slope fit instead of a single run
  bool is_probe = false;
  std::vector<double> probe_hbars;
  std::vector<std::size_t> probe_L;
  std::vector<std::size_t> probe_a;
  std::vector<std::size_t> probe_M;
};

// Built-in presets: well, hill, hill_well, free, order_probe.
Scenario preset(const std::string& name);
std::vector<std::string> preset_names();

// key = value text file; '#' starts a comment. Unknown keys are an error.
Scenario load_scenario(const std::string& path);

// Eager validation: lattice divisibility and oversampling, window
// periodizability, parameter ranges. Throws with scenario context.
void validate(const Scenario& sc);

Signal paper_datum(const Grid& grid, double h);
Signal windowed_datum(const Grid& grid, double h, double sigma, double center);
Signal shifted_datum(const Grid& grid, double h);
Signal make_datum(const Grid& grid, double h, const DatumSpec& spec);

struct RunReport {
  Scenario scenario;
  std::vector<double> output_times;
  std::vector<double> rel_errors;  // vs reference; empty when reference off
  std::vector<std::size_t> atoms_retained;
  std::vector<double> segment_times;
  double wall_seconds = 0.0;
  // probe results
  double slope = 0.0;
  bool degenerate = false;
  std::vector<double> probe_errors;
  std::string summary_path;
};

// Execute the scenario and write state_t<t>.csv, reference_t<t>.csv,
// coeffs_seg<k>.csv and summary.txt under out_dir.
RunReport run_scenario(const Scenario& sc, const std::string& out_dir);

}  // namespace gbeam
