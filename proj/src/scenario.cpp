#include "gbeam/scenario.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "gbeam/strang.hpp"

namespace gbeam {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

std::string format_time(double t) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", t);
  return buf;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (!tok.empty()) out.push_back(std::stod(tok));
  }
  return out;
}

std::vector<std::size_t> parse_size_list(const std::string& text) {
  std::vector<std::size_t> out;
  for (double v : parse_double_list(text)) out.push_back(static_cast<std::size_t>(v));
  return out;
}

}  // namespace

DatumSpec DatumSpec::parse(const std::string& text) {
  DatumSpec d;
  if (text == "paper") {
    d.kind = Kind::paper;
  } else if (text == "paper_shifted" || text == "shifted") {
    d.kind = Kind::shifted;
  } else if (text == "paper_windowed" || text == "windowed") {
    d.kind = Kind::windowed;
  } else {
    throw std::invalid_argument("datum must be paper | paper_windowed | paper_shifted, got: " +
                                text);
  }
  return d;
}

std::string DatumSpec::str() const {
  switch (kind) {
    case Kind::paper:
      return "paper";
    case Kind::windowed:
      return "paper_windowed";
    case Kind::shifted:
      return "paper_shifted";
  }
  return "paper";
}

Signal paper_datum(const Grid& grid, double h) {
  Signal u = Signal::zeros(grid);
  for (std::size_t l = 0; l < grid.length; ++l) {
    double s = grid.point(l) - 0.5;
    double tau = -std::log(std::exp(5.0 * s) + std::exp(-5.0 * s)) / 5.0;
    u.values[l] = std::polar(std::exp(-25.0 * s * s), tau / h);
  }
  return u;
}

Signal windowed_datum(const Grid& grid, double h, double sigma, double center) {
  Signal u = paper_datum(grid, h);
  for (std::size_t l = 0; l < grid.length; ++l) {
    double d = wrap_displacement(grid.point(l) - center);
    u.values[l] *= std::exp(-sigma * d * d);
  }
  return u;
}

Signal shifted_datum(const Grid& grid, double h) {
  Signal u = paper_datum(grid, h);
  Signal out = Signal::zeros(grid);
  const std::size_t half = grid.length / 2;
  for (std::size_t l = 0; l < grid.length; ++l)
    out.values[(l + half) % grid.length] = u.values[l];
  return out;
}

Signal make_datum(const Grid& grid, double h, const DatumSpec& spec) {
  switch (spec.kind) {
    case DatumSpec::Kind::paper:
      return paper_datum(grid, h);
    case DatumSpec::Kind::windowed:
      return windowed_datum(grid, h, spec.sigma, spec.center);
    case DatumSpec::Kind::shifted:
      return shifted_datum(grid, h);
  }
  return paper_datum(grid, h);
}

Scenario preset(const std::string& name) {
  Scenario sc;
  sc.name = name;
  if (name == "well") {
    sc.potential = "well";
    sc.T = 1.0;
    sc.reinit = ReinitPolicy::none();
  } else if (name == "hill") {
    sc.potential = "hill";
    sc.T = 2.0;
    sc.reinit = ReinitPolicy::uniform(8);
  } else if (name == "hill_well") {
    sc.potential = "hill_well";
    sc.T = 2.0;
    sc.reinit = ReinitPolicy::uniform(8);
  } else if (name == "free") {
    sc.potential = "free";
    sc.T = 0.5;
    sc.reinit = ReinitPolicy::none();
    sc.reference_dt = 1e-3;
  } else if (name == "order_probe") {
    sc.potential = "well";
    sc.T = 0.5;
    sc.is_probe = true;
    sc.eta = 1e-3;
    sc.probe_hbars = {1.0 / (512.0 * kPi), 1.0 / (1024.0 * kPi), 1.0 / (2048.0 * kPi)};
    sc.probe_L = {2048, 4096, 8192};
    sc.probe_a = {32, 64, 64};
    sc.probe_M = {256, 512, 512};
    sc.reference_dt = 1e-4;
  } else {
    throw std::invalid_argument("unknown preset: " + name);
  }
  if (sc.output_times.empty()) sc.output_times = {sc.T};
  return sc;
}

std::vector<std::string> preset_names() {
  return {"well", "hill", "hill_well", "free", "order_probe"};
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scenario config: " + path);
  Scenario sc;
  bool based_on_preset = false;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto eq = line.find('=');
    if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
    if (eq == std::string::npos)
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected key = value");
    auto trim = [](std::string s) {
      auto b = s.find_first_not_of(" \t\r\n");
      auto e = s.find_last_not_of(" \t\r\n");
      return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
    };
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    try {
      if (key == "preset") {
        sc = preset(val);
        based_on_preset = true;
      } else if (key == "name") {
        sc.name = val;
      } else if (key == "L") {
        sc.L = std::stoul(val);
      } else if (key == "hbar") {
        sc.hbar = std::stod(val);
      } else if (key == "h") {
        sc.hbar = std::stod(val);  // the experiments' name for the same knob
      } else if (key == "a") {
        sc.a = std::stoul(val);
      } else if (key == "M") {
        sc.M = std::stoul(val);
      } else if (key == "potential") {
        sc.potential = val;
      } else if (key == "datum") {
        sc.datum = DatumSpec::parse(val);
      } else if (key == "datum_sigma") {
        sc.datum.sigma = std::stod(val);
      } else if (key == "datum_center") {
        sc.datum.center = std::stod(val);
      } else if (key == "eta") {
        sc.eta = std::stod(val);
      } else if (key == "T") {
        sc.T = std::stod(val);
      } else if (key == "reinit") {
        sc.reinit = ReinitPolicy::parse(val);
      } else if (key == "output_times") {
        sc.output_times = parse_double_list(val);
      } else if (key == "reference_dt") {
        sc.reference_dt = std::stod(val);
      } else if (key == "ode_tol") {
        sc.ode_tol = std::stod(val);
      } else if (key == "reference") {
        sc.with_reference = (val == "on" || val == "true" || val == "1");
      } else if (key == "threads") {
        sc.threads = std::stoi(val);
      } else if (key == "probe_hbars") {
        sc.probe_hbars = parse_double_list(val);
        sc.is_probe = true;
      } else if (key == "probe_L") {
        sc.probe_L = parse_size_list(val);
      } else if (key == "probe_a") {
        sc.probe_a = parse_size_list(val);
      } else if (key == "probe_M") {
        sc.probe_M = parse_size_list(val);
      } else {
        throw std::runtime_error("unknown key: " + key);
      }
    } catch (const std::exception& e) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (!based_on_preset && sc.name == "custom") sc.name = std::filesystem::path(path).stem().string();
  if (sc.output_times.empty()) sc.output_times = {sc.T};
  return sc;
}

void validate(const Scenario& sc) {
  try {
    if (sc.is_probe) {
      if (sc.probe_hbars.size() < 3) throw std::invalid_argument("probe needs >= 3 hbar values");
      if (sc.probe_L.size() != sc.probe_hbars.size() ||
          sc.probe_a.size() != sc.probe_hbars.size() || sc.probe_M.size() != sc.probe_hbars.size())
        throw std::invalid_argument("probe_L/probe_a/probe_M must match probe_hbars in length");
      for (std::size_t i = 0; i < sc.probe_hbars.size(); ++i) {
        GaborLattice lat =
            GaborLattice::make(sc.probe_L[i], sc.probe_a[i], sc.probe_M[i], sc.probe_hbars[i]);
        if (lat.M <= lat.a) throw std::invalid_argument("lattice must oversample (M > a)");
        gaussian_window(lat);
      }
    } else {
      GaborLattice lat = GaborLattice::make(sc.L, sc.a, sc.M, sc.hbar);
      if (lat.M <= lat.a) throw std::invalid_argument("lattice must oversample (M > a)");
      gaussian_window(lat);  // periodizability
    }
    Potential::builtin(sc.potential);
    if (!(sc.T > 0.0)) throw std::invalid_argument("T must be positive");
    if (sc.eta < 0.0) throw std::invalid_argument("eta must be >= 0");
    if (!(sc.reference_dt > 0.0)) throw std::invalid_argument("reference_dt must be positive");
    if (!(sc.ode_tol >= 1e-13 && sc.ode_tol <= 1e-6))
      throw std::invalid_argument("ode_tol must lie in [1e-13, 1e-6]");
    if (sc.threads < 1) throw std::invalid_argument("threads must be >= 1");
    for (double t : sc.output_times)
      if (t < 0.0 || t > sc.T) throw std::invalid_argument("output times must lie in [0, T]");
  } catch (const std::exception& e) {
    throw std::runtime_error("scenario '" + sc.name + "': " + e.what());
  }
}

RunReport run_scenario(const Scenario& sc, const std::string& out_dir) {
  validate(sc);
  std::filesystem::create_directories(out_dir);
  RunReport rep;
  rep.scenario = sc;
  auto t_start = std::chrono::steady_clock::now();

  std::ofstream summary(out_dir + "/summary.txt");
  summary.precision(12);
  summary << "preset = " << sc.name << "\n";

  const Potential V = Potential::builtin(sc.potential);

  if (sc.is_probe) {
    std::vector<ProbeCase> cases;
    for (std::size_t i = 0; i < sc.probe_hbars.size(); ++i) {
      GaborLattice lat =
          GaborLattice::make(sc.probe_L[i], sc.probe_a[i], sc.probe_M[i], sc.probe_hbars[i]);
      GaborSystem sys = GaborSystem::make(lat);
      Signal f0 = make_datum(Grid::make(lat.L), lat.hbar, sc.datum);
      cases.push_back({std::move(sys), std::move(f0), sc.reference_dt});
    }
    EvolveOptions opts;
    opts.eta = sc.eta;
    opts.ode_tol = sc.ode_tol;
    opts.threads = sc.threads;
    OrderProbeResult pr = duhamel_order_probe(V, cases, sc.T, opts);
    rep.slope = pr.slope;
    rep.degenerate = pr.degenerate;
    rep.probe_errors = pr.errors;
    summary << "potential = " << sc.potential << "\nT = " << sc.T << "\neta = " << sc.eta << "\n";
    for (std::size_t i = 0; i < pr.hbars.size(); ++i)
      summary << "rel_error@hbar=" << pr.hbars[i] << " = " << pr.errors[i]
              << " (reference floor " << pr.floors[i] << ")\n";
    summary << "slope = " << pr.slope << "\n";
    if (pr.degenerate) summary << "degenerate = " << pr.note << "\n";
  } else {
    GaborLattice lat = GaborLattice::make(sc.L, sc.a, sc.M, sc.hbar);
    GaborSystem sys = GaborSystem::make(lat);
    Grid grid = Grid::make(sc.L);
    Signal f0 = make_datum(grid, sc.hbar, sc.datum);

    EvolveOptions opts;
    opts.eta = sc.eta;
    opts.reinit = sc.reinit;
    opts.output_times = sc.output_times;
    opts.ode_tol = sc.ode_tol;
    opts.threads = sc.threads;
    ParametrixRun run = evolve(f0, sys, V, sc.T, opts);

    rep.output_times = run.output_times;
    rep.atoms_retained = run.atoms_retained;
    rep.segment_times = run.segment_times;

    for (std::size_t k = 0; k < run.segment_coefficients.size(); ++k)
      write_coefficients_csv(run.segment_coefficients[k],
                             out_dir + "/coeffs_seg" + std::to_string(k) + ".csv");
    for (std::size_t j = 0; j < run.output_times.size(); ++j)
      write_signal_csv(run.outputs[j],
                       out_dir + "/state_t" + format_time(run.output_times[j]) + ".csv");

    summary << "L = " << sc.L << "\nh = " << sc.hbar << "\neta = " << sc.eta
            << "\npotential = " << sc.potential << "\ndatum = " << sc.datum.str()
            << "\nreinit = " << sc.reinit.str() << "\nT = " << sc.T << "\n";
    summary << "segments = " << run.atoms_retained.size() << "\n";
    summary << "segment_times =";
    for (double t : run.segment_times) summary << " " << t;
    summary << "\natoms_retained =";
    for (std::size_t nat : run.atoms_retained) summary << " " << nat;
    summary << "\n";
    for (const auto& w : run.warnings) summary << "warning = " << w << "\n";

    if (sc.with_reference) {
      Signal u = f0;
      double t_prev = 0.0;
      for (std::size_t j = 0; j < run.output_times.size(); ++j) {
        double t = run.output_times[j];
        if (t > t_prev) u = strang_solve(u, V, t - t_prev, sc.reference_dt, sc.hbar);
        t_prev = t;
        write_signal_csv(u, out_dir + "/reference_t" + format_time(t) + ".csv");
        double e = rel_error(run.outputs[j], u);
        rep.rel_errors.push_back(e);
        summary << "rel_error@t" << format_time(t) << " = " << e << "\n";
      }
    }
  }

  rep.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
  summary << "wall_seconds = " << rep.wall_seconds << "\n";
  rep.summary_path = out_dir + "/summary.txt";
  return rep;
}

}  // namespace gbeam
