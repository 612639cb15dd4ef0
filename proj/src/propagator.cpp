#include "gbeam/propagator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <thread>

#include "gbeam/beam_eval.hpp"
#include "gbeam/strang.hpp"

namespace gbeam {

namespace {

constexpr std::size_t kAtomBlock = 64;  // fixed block size keeps reductions deterministic

struct Atom {
  BeamState state;
  cplx weight;
};

std::vector<Atom> make_atoms(const ThresholdResult& thr, const GaborSystem& sys, double t0) {
  const GaborLattice& lat = sys.lattice;
  std::vector<Atom> atoms;
  atoms.reserve(thr.retained.size());
  for (std::size_t idx : thr.retained) {
    std::size_t n = idx / lat.M;
    std::size_t m = idx % lat.M;
    BeamState s = initial_state(lat.signed_time_index(n), lat.signed_channel(m), lat);
    s.t = t0;
    // phase-locked coefficient -> Weyl coefficient of Gab_exp, and continuum
    // beam normalization -> discrete window normalization
    cplx w = thr.coefficients.values[idx] *
             std::polar(1.0 / sys.window_scale, -0.5 * s.x * s.p / lat.hbar);
    atoms.push_back({s, w});
  }
  return atoms;
}

// Evaluate all atoms at the given times (relative states starting at atoms[i].state.t),
// accumulating weighted beams into per-time signals. Deterministic: per-block
// partials are merged in block order regardless of thread count.
std::vector<Signal> superpose_at(const std::vector<Atom>& atoms, const Potential& V,
                                 const std::vector<double>& times, const Grid& grid, double hbar,
                                 double tol, int threads,
                                 std::vector<BeamState>* final_states) {
  const std::size_t ntimes = times.size();
  std::vector<Signal> partial_template(ntimes, Signal::zeros(grid));
  if (atoms.empty()) return partial_template;

  const std::size_t nblocks = (atoms.size() + kAtomBlock - 1) / kAtomBlock;
  if (final_states) final_states->resize(atoms.size());

  auto process_block = [&](std::size_t b, std::vector<Signal>& acc) {
    const std::size_t lo = b * kAtomBlock;
    const std::size_t hi = std::min(atoms.size(), lo + kAtomBlock);
    for (std::size_t i = lo; i < hi; ++i) {
      BeamState s = atoms[i].state;
      for (std::size_t j = 0; j < ntimes; ++j) {
        s = propagate_to(s, V, times[j], tol);
        accumulate_beam(acc[j], s, atoms[i].weight, hbar);
      }
      if (final_states) (*final_states)[i] = s;
    }
  };

  if (threads <= 1 || nblocks == 1) {
    // same association as the threaded path: per-block partials merged in
    // block order, so results are bit-identical for any thread count
    std::vector<Signal> acc = partial_template;
    std::vector<Signal> part = partial_template;
    for (std::size_t b = 0; b < nblocks; ++b) {
      for (auto& s : part) std::fill(s.values.begin(), s.values.end(), cplx{});
      process_block(b, part);
      for (std::size_t j = 0; j < ntimes; ++j)
        for (std::size_t i = 0; i < acc[j].size(); ++i) acc[j].values[i] += part[j].values[i];
    }
    return acc;
  }

  std::vector<std::vector<Signal>> block_partials(nblocks);
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      std::size_t b = next.fetch_add(1);
      if (b >= nblocks) return;
      block_partials[b] = partial_template;
      process_block(b, block_partials[b]);
    }
  };
  std::vector<std::thread> pool;
  const int nthreads = std::min<int>(threads, static_cast<int>(nblocks));
  pool.reserve(nthreads);
  for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();

  std::vector<Signal> acc = partial_template;
  for (std::size_t b = 0; b < nblocks; ++b)
    for (std::size_t j = 0; j < ntimes; ++j)
      for (std::size_t i = 0; i < acc[j].size(); ++i)
        acc[j].values[i] += block_partials[b][j].values[i];
  return acc;
}

}  // namespace

ReinitPolicy ReinitPolicy::uniform(int k) {
  if (k < 1) throw std::invalid_argument("reinit uniform: segment count must be >= 1");
  ReinitPolicy p;
  p.kind = Kind::uniform;
  p.segments = k;
  return p;
}

ReinitPolicy ReinitPolicy::event(double threshold) {
  if (!(threshold > 0.0 && threshold < 1.0))
    throw std::invalid_argument("reinit event: threshold must lie in (0, 1)");
  ReinitPolicy p;
  p.kind = Kind::event;
  p.width_threshold = threshold;
  return p;
}

ReinitPolicy ReinitPolicy::parse(const std::string& text) {
  if (text == "none") return none();
  if (text.rfind("uniform:", 0) == 0) return uniform(std::stoi(text.substr(8)));
  if (text.rfind("event:", 0) == 0) return event(std::stod(text.substr(6)));
  throw std::invalid_argument("reinit policy must be none | uniform:K | event:R, got: " + text);
}

std::string ReinitPolicy::str() const {
  switch (kind) {
    case Kind::none:
      return "none";
    case Kind::uniform:
      return "uniform:" + std::to_string(segments);
    case Kind::event: {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "event:%g", width_threshold);
      return buf;
    }
  }
  return "none";
}

ParametrixRun evolve(const Signal& f0, const GaborSystem& sys, const Potential& V, double T,
                     const EvolveOptions& opts) {
  if (!(T > 0.0)) throw std::invalid_argument("evolve: T must be positive");
  if (opts.eta < 0.0) throw std::invalid_argument("evolve: eta must be >= 0");
  if (f0.grid.length != sys.lattice.L) throw std::invalid_argument("grid mismatch");

  std::vector<double> wanted = opts.output_times;
  std::sort(wanted.begin(), wanted.end());
  wanted.erase(std::unique(wanted.begin(), wanted.end()), wanted.end());
  for (double t : wanted)
    if (t < 0.0 || t > T + 1e-12) throw std::invalid_argument("evolve: output time outside [0, T]");

  ParametrixRun run;
  run.output_times = wanted;
  run.outputs.assign(wanted.size(), Signal::zeros(f0.grid));
  run.segment_times.push_back(0.0);

  const double hbar = sys.lattice.hbar;
  Signal u = f0;
  double t0 = 0.0;
  std::size_t out_idx = 0;
  int segment = 0;
  bool dead = false;  // everything thresholded away

  while (t0 < T) {
    double t1 = T;
    if (opts.reinit.kind == ReinitPolicy::Kind::uniform)
      t1 = std::min(T, (segment + 1) * T / opts.reinit.segments);

    CoefficientGrid c = analyze(u, sys);
    ThresholdResult thr = threshold(c, opts.eta);
    run.segment_coefficients.push_back(thr.coefficients);
    run.atoms_retained.push_back(thr.retained.size());

    if (thr.retained.empty() && !dead) {
      run.warnings.push_back("threshold removed every coefficient; output is zero");
      dead = true;
    }

    std::vector<Atom> atoms = make_atoms(thr, sys, t0);

    if (!dead && opts.reinit.kind == ReinitPolicy::Kind::event) {
      // first pass: earliest width event over the retained beams
      double fire = t1;
      for (const auto& atom : atoms) {
        BeamTrajectory tr =
            propagate(atom.state, V, t1, opts.ode_tol, opts.reinit.width_threshold);
        if (tr.event && tr.event->t > t0) fire = std::min(fire, tr.event->t);
      }
      t1 = fire;
    }

    // requested times inside [t0, t1]; t == 0 outputs come from the newborn beams
    std::vector<double> seg_times;
    std::vector<std::size_t> seg_out_slots;
    while (out_idx < wanted.size() && (wanted[out_idx] <= t1 || t1 >= T)) {
      seg_times.push_back(std::min(t1, std::max(wanted[out_idx], t0)));
      seg_out_slots.push_back(out_idx);
      ++out_idx;
    }
    bool t1_requested = !seg_times.empty() && seg_times.back() == t1;
    std::vector<double> eval_times = seg_times;
    if (!t1_requested) eval_times.push_back(t1);  // always needed for the next expansion

    std::vector<Signal> sums = superpose_at(atoms, V, eval_times, f0.grid, hbar, opts.ode_tol,
                                            opts.threads, nullptr);
    for (std::size_t j = 0; j < seg_times.size(); ++j) run.outputs[seg_out_slots[j]] = sums[j];
    u = sums.back();

    run.segment_times.push_back(t1);
    t0 = t1;
    ++segment;
  }
  return run;
}

OrderProbeResult duhamel_order_probe(const Potential& V, const std::vector<ProbeCase>& cases,
                                     double T, const EvolveOptions& opts) {
  if (cases.size() < 3)
    throw std::invalid_argument("duhamel_order_probe: need at least 3 hbar values");
  for (std::size_t i = 1; i < cases.size(); ++i)
    if (!(cases[i].sys.lattice.hbar < cases[i - 1].sys.lattice.hbar))
      throw std::invalid_argument("duhamel_order_probe: hbar values must strictly decrease");

  OrderProbeResult res;
  EvolveOptions run_opts = opts;
  run_opts.output_times = {0.0, T};
  std::vector<double> recon;
  for (const auto& pc : cases) {
    const double hbar = pc.sys.lattice.hbar;
    ParametrixRun run = evolve(pc.f0, pc.sys, V, T, run_opts);
    Signal ref = strang_solve(pc.f0, V, T, pc.reference_dt, hbar);
    Signal ref_coarse = strang_solve(pc.f0, V, T, 2.0 * pc.reference_dt, hbar);
    res.hbars.push_back(hbar);
    recon.push_back(rel_error(run.outputs.front(), pc.f0));
    res.errors.push_back(rel_error(run.outputs.back(), ref));
    res.floors.push_back(rel_error(ref_coarse, ref));
  }

  // least-squares slope of log err vs log hbar
  const std::size_t n = res.hbars.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double x = std::log(res.hbars[i]);
    double y = std::log(std::max(res.errors[i], 1e-300));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  res.slope = (static_cast<double>(n) * sxy - sx * sy) / (static_cast<double>(n) * sxx - sx * sx);

  double emax = *std::max_element(res.errors.begin(), res.errors.end());
  double emin = *std::min_element(res.errors.begin(), res.errors.end());
  double fmax = *std::max_element(res.floors.begin(), res.floors.end());
  bool at_recon_floor = true;
  for (std::size_t i = 0; i < res.errors.size(); ++i)
    at_recon_floor = at_recon_floor && res.errors[i] <= 5.0 * recon[i];
  if (emax <= 10.0 * fmax) {
    res.degenerate = true;
    res.note = "errors are at the reference accuracy floor";
  } else if (at_recon_floor) {
    res.degenerate = true;
    res.note = "errors are at the threshold reconstruction floor";
  } else if (emax / std::max(emin, 1e-300) < 1.3) {
    res.degenerate = true;
    res.note = "errors do not vary with hbar";
  }
  return res;
}

}  // namespace gbeam
