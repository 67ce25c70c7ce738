// eraser_corr: command-line front end for the dual Mach-Zehnder
// quantum-eraser correlation simulator.
//
// Subcommands: chsh, fig2, fig3, mc, sweep. Shared flags (usable before or
// after the subcommand): --config, --seed, --events, --mode, --engine,
// --out, --svg. ERASER_CORR_THREADS caps the Monte-Carlo worker count;
// results are identical for every worker count, so the cap only affects
// wall-clock time.
//
// Exit codes: 0 all asserted flags pass, 1 an asserted bound or consistency
// check failed, 2 configuration/usage/I/O error.

#include <charconv>
#include <cstdlib>
#include <exception>
#include <iostream>
#include <string>
#include <string_view>
#include <thread>

#include <CLI11.hpp>

#include "eraser/commands.hpp"
#include "eraser/config.hpp"

namespace {

unsigned resolve_workers() {
  unsigned workers = std::thread::hardware_concurrency();
  if (workers == 0) workers = 1;
  if (const char* env = std::getenv("ERASER_CORR_THREADS")) {
    const std::string_view sv(env);
    unsigned cap = 0;
    const auto res = std::from_chars(sv.data(), sv.data() + sv.size(), cap);
    if (res.ec == std::errc() && res.ptr == sv.data() + sv.size() && cap > 0) {
      workers = std::min(workers, cap);
    }
  }
  return workers;
}

void print_result(const eraser::CommandResult& result) {
  std::cout << result.summary << "\n";
  for (const auto& path : result.outputs) {
    std::cout << "wrote " << path.string() << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Coherently pumped dual Mach-Zehnder quantum-eraser simulator: "
      "closed-form and Monte-Carlo coincidence rates with CHSH analysis"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "eraser_corr 1.0.0");

  std::string config_path;
  std::uint64_t seed = 0;
  std::uint64_t events = 0;
  std::string out_dir;
  std::string mode = "quantum";
  std::string engine = "analytic";
  bool svg = false;

  auto* config_opt =
      app.add_option("--config", config_path, "run configuration file")
          ->check(CLI::ExistingFile);
  auto* seed_opt = app.add_option("--seed", seed, "override the source seed");
  auto* events_opt = app.add_option(
      "--events", events, "override the Monte-Carlo event count (>= 1)");
  auto* out_opt =
      app.add_option("--out", out_dir, "override the output directory");
  auto* mode_opt =
      app.add_option("--mode", mode, "quantum or classical physics")
          ->check(CLI::IsMember({"quantum", "classical"}));
  auto* engine_opt =
      app.add_option("--engine", engine, "rate engine for chsh")
          ->check(CLI::IsMember({"analytic", "mc"}));
  app.add_flag("--svg", svg, "also emit SVG plots next to figure CSVs");

  auto* chsh = app.add_subcommand(
      "chsh", "CHSH run over the canonical schedule -> chsh_report");
  auto* fig2 = app.add_subcommand(
      "fig2", "polarizer fringe scan -> fig2_upper.csv / fig2_lower.csv");

  eraser::Fig3Options fig3_opt;
  auto* fig3 = app.add_subcommand(
      "fig3", "decoherence scan over delta*tau -> fig3.csv");
  fig3->add_option("--zeta", fig3_opt.zeta_deg, "D1 analyzer axis, degrees")
      ->capture_default_str();
  fig3->add_option("--xi", fig3_opt.xi_deg,
                   "D4 analyzer axis, degrees (theta is slaved to it)")
      ->capture_default_str();
  fig3->add_option("--tau-lo", fig3_opt.delta_tau_lo, "grid start (> 0)")
      ->capture_default_str();
  fig3->add_option("--tau-hi", fig3_opt.delta_tau_hi, "grid end")
      ->capture_default_str();
  fig3->add_option("--steps", fig3_opt.steps, "log-spaced grid points")
      ->capture_default_str();

  auto* mc = app.add_subcommand(
      "mc", "one Monte-Carlo tally checked against the closed form");

  eraser::SweepOptions sweep_opt;
  auto* sweep = app.add_subcommand(
      "sweep", "closed-form parameter sweep -> sweep_<param>.csv");
  sweep->add_option("--param", sweep_opt.param, "zeta or tau")
      ->check(CLI::IsMember({"zeta", "tau"}))
      ->capture_default_str();
  sweep->add_option("--lo", sweep_opt.lo, "grid start (deg for zeta, s for tau)")
      ->capture_default_str();
  sweep->add_option("--hi", sweep_opt.hi, "grid end")
      ->capture_default_str();
  sweep->add_option("--steps", sweep_opt.steps, "grid points")
      ->capture_default_str();

  for (CLI::App* sub : {chsh, fig2, fig3, mc, sweep}) {
    sub->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    eraser::RunConfig cfg;
    if (config_opt->count() > 0) {
      cfg = eraser::load_run_config(config_path);
    }
    if (seed_opt->count() > 0) cfg.source.seed = seed;
    if (events_opt->count() > 0) {
      if (events == 0) {
        std::cerr << "error: --events must be >= 1\n";
        return 2;
      }
      cfg.n_events = events;
    }
    if (out_opt->count() > 0) cfg.output_dir = out_dir;
    if (svg) cfg.emit_svg = true;
    if (mode_opt->count() > 0) {
      cfg.mc_mode = mode == "quantum" ? eraser::McMode::quantum_gated
                                      : eraser::McMode::classical_ungated;
    }

    const unsigned workers = resolve_workers();
    eraser::CommandResult result;
    if (chsh->parsed()) {
      eraser::ChshOptions opt;
      opt.engine = engine == "analytic" ? eraser::Engine::analytic
                                        : eraser::Engine::mc;
      opt.mode = mode == "quantum" ? eraser::RunMode::quantum
                                   : eraser::RunMode::classical;
      opt.workers = workers;
      result = eraser::cmd_chsh(cfg, opt);
    } else if (fig2->parsed()) {
      result = eraser::cmd_fig2(cfg);
    } else if (fig3->parsed()) {
      result = eraser::cmd_fig3(cfg, fig3_opt);
    } else if (mc->parsed()) {
      result = eraser::cmd_mc(cfg, workers);
    } else {
      result = eraser::cmd_sweep(cfg, sweep_opt);
    }
    print_result(result);
    return result.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
