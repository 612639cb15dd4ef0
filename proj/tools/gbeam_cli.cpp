#include <cstdio>
#include <exception>
#include <filesystem>
#include <string>

#include <CLI11.hpp>

#include "gbeam/kernels.hpp"
#include "gbeam/scenario.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Gaussian-beam parametrix runner for the 1-D periodic Schrodinger equation"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "execute a preset or a key=value config file");
  std::string target;
  run->add_option("scenario", target, "preset name (well, hill, hill_well, free, order_probe) or config path")
      ->required();
  double eta = -1.0, T = -1.0, hbar = -1.0;
  std::string reinit, out_dir = "out", reference;
  int threads = 0;
  bool no_simd = false;
  run->add_option("--eta", eta, "coefficient threshold");
  run->add_option("--T", T, "time horizon");
  run->add_option("--reinit", reinit, "none | uniform:K | event:R");
  run->add_option("--hbar", hbar, "semiclassical parameter");
  run->add_option("--out", out_dir, "output directory");
  run->add_option("--reference", reference, "on | off");
  run->add_option("--threads", threads, "worker threads for beam propagation");
  run->add_flag("--no-simd", no_simd, "force scalar kernels");

  CLI11_PARSE(app, argc, argv);

  try {
    if (no_simd) gbeam::kernels::force_isa(gbeam::kernels::Isa::scalar);

    gbeam::Scenario sc;
    if (std::filesystem::exists(target) && !std::filesystem::is_directory(target))
      sc = gbeam::load_scenario(target);
    else
      sc = gbeam::preset(target);

    if (eta >= 0.0) sc.eta = eta;
    if (T > 0.0) {
      sc.T = T;
      sc.output_times = {T};
    }
    if (hbar > 0.0) sc.hbar = hbar;
    if (!reinit.empty()) sc.reinit = gbeam::ReinitPolicy::parse(reinit);
    if (!reference.empty()) sc.with_reference = (reference == "on");
    if (threads > 0) sc.threads = threads;

    gbeam::RunReport rep = gbeam::run_scenario(sc, out_dir);

    std::printf("scenario %s finished in %.2fs\n", sc.name.c_str(), rep.wall_seconds);
    if (sc.is_probe) {
      std::printf("slope = %.4f%s\n", rep.slope, rep.degenerate ? " (degenerate fit)" : "");
    } else {
      for (std::size_t j = 0; j < rep.rel_errors.size(); ++j)
        std::printf("rel_error@t%g = %.6g\n", rep.output_times[j], rep.rel_errors[j]);
    }
    std::printf("summary: %s\n", rep.summary_path.c_str());
    return 0;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
