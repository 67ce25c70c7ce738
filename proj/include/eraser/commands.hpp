#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "eraser/bell.hpp"
#include "eraser/config.hpp"

// Command bodies behind the CLI subcommands. Each one derives its inputs
// from a RunConfig, writes its artifacts under cfg.output_dir with atomic
// whole-file writes, and reports the written paths plus a one-line summary.
// Exit code convention: 0 when every asserted flag (bound, z-score) holds,
// 1 when one fails; configuration and I/O problems surface as exceptions and
// are mapped to exit code 2 by the CLI driver.

namespace eraser {

enum class Engine { analytic, mc };
enum class RunMode { quantum, classical };

const char* to_string(Engine engine);
const char* to_string(RunMode mode);

struct CommandResult {
  int exit_code = 0;
  std::vector<std::filesystem::path> outputs;
  std::string summary;
};

struct ChshOptions {
  Engine engine = Engine::analytic;
  RunMode mode = RunMode::quantum;
  unsigned workers = 1;
};

/// CHSH run over the canonical schedule. quantum uses the gated rates
/// (closed form at the configured delay difference, or Born-sampled
/// coincidences), classical the dephased limit / ungated sampling. Writes
/// chsh_report.json or .csv per the configured output format; the report
/// carries the four E values, S with its standard error and a bound flag
/// (Tsirelson 2*sqrt(2) for quantum, 2 for classical).
CommandResult cmd_chsh(const RunConfig& cfg, const ChshOptions& opt);

/// Polarizer fringe scan: zeta over 0..180 degrees in 1-degree steps with
/// eta slaved to 90 - zeta, xi/theta from the config. Writes fig2_upper.csv
/// (gated rates) and fig2_lower.csv (ungated intensity products under a
/// uniform-cycle phase ensemble), each column normalized to its own maximum.
CommandResult cmd_fig2(const RunConfig& cfg);

struct Fig3Options {
  // Defaults keep the two gated rates within 1% of the shared plateau for
  // every grid point with delta_tau >= 100 (worst-case envelope 1/100).
  double zeta_deg = 67.5;
  double xi_deg = 22.5;  // theta is slaved to xi so both rates share a plateau
  double delta_tau_lo = 1e-2;
  double delta_tau_hi = 1e3;
  std::size_t steps = 60;
};

/// Decoherence scan over log-spaced delta*tau. Writes fig3.csv with columns
/// delta_tau, r14, r13, envelope, plateau_ref.
CommandResult cmd_fig3(const RunConfig& cfg, const Fig3Options& opt);

/// One Monte-Carlo tally at the configured settings, checked against the
/// matching closed-form prediction. Writes tally.json (counts and discards)
/// and rates.csv (pair, estimate, stderr, analytic_value, z_score); exit
/// code 1 when any |z| > 4.
CommandResult cmd_mc(const RunConfig& cfg, unsigned workers);

struct SweepOptions {
  std::string param = "zeta";  // zeta | tau
  double lo = 0.0;             // degrees for zeta, seconds for tau
  double hi = 180.0;
  std::size_t steps = 181;
};

/// Generic closed-form sweep. zeta: fringe scan with raw (unnormalized)
/// gated rates and ungated products. tau: all four gated rates plus the
/// envelope against the delay difference. Writes sweep_<param>.csv.
CommandResult cmd_sweep(const RunConfig& cfg, const SweepOptions& opt);

}  // namespace eraser
