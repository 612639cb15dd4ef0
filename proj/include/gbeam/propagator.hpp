#pragma once

#include <string>
#include <vector>

#include "gbeam/beam.hpp"
#include "gbeam/gabor.hpp"
#include "gbeam/grid.hpp"
#include "gbeam/potential.hpp"

namespace gbeam {

// Reinitialization schedule: none (single segment), uniform:K (fixed
// subintervals), event:R (global restart when any retained beam's Im Gamma
// drops below R).
struct ReinitPolicy {
  enum class Kind { none, uniform, event };
  Kind kind = Kind::none;
  int segments = 1;
  double width_threshold = 0.2;

  static ReinitPolicy none() { return {}; }
  static ReinitPolicy uniform(int k);
  static ReinitPolicy event(double threshold);
  static ReinitPolicy parse(const std::string& text);
  std::string str() const;
};

struct EvolveOptions {
  double eta = 0.0;
  ReinitPolicy reinit;
  std::vector<double> output_times;  // sorted internally; outputs follow sorted order
  double ode_tol = 1e-10;
  int threads = 1;
};

struct ParametrixRun {
  std::vector<double> segment_times;  // boundaries: 0 = first, T = last
  std::vector<CoefficientGrid> segment_coefficients;  // thresholded, per segment
  std::vector<std::size_t> atoms_retained;            // per segment
  std::vector<double> output_times;
  std::vector<Signal> outputs;
  std::vector<std::string> warnings;
};

// Order-zero parametrix: threshold(analyze(f0)), one beam per retained atom,
// superposition at the requested times; re-expanded at each segment boundary.
ParametrixRun evolve(const Signal& f0, const GaborSystem& sys, const Potential& V, double T,
                     const EvolveOptions& opts);

struct ProbeCase {
  GaborSystem sys;
  Signal f0;
  double reference_dt = 1e-4;
};

struct OrderProbeResult {
  std::vector<double> hbars;
  std::vector<double> errors;
  std::vector<double> floors;  // reference self-error estimates
  double slope = 0.0;
  bool degenerate = false;
  std::string note;
};

// Error against the split-step reference at horizon T per case, and the
// least-squares slope of log error vs log hbar. Cases must come in strictly
// decreasing hbar (>= 3 of them). Degenerate fits (errors at the reference
// accuracy floor, or hbar-independent) are flagged, not silently returned.
OrderProbeResult duhamel_order_probe(const Potential& V, const std::vector<ProbeCase>& cases,
                                     double T, const EvolveOptions& opts);

}  // namespace gbeam
