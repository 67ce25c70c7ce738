#include "eraser/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>
#include <numbers>
#include <stdexcept>

#include <json.hpp>

#include "eraser/montecarlo.hpp"
#include "eraser/svg.hpp"
#include "eraser/table.hpp"

namespace eraser {

using ordered_json = nlohmann::ordered_json;

const char* to_string(Engine engine) {
  return engine == Engine::analytic ? "analytic" : "mc";
}

const char* to_string(RunMode mode) {
  return mode == RunMode::quantum ? "quantum" : "classical";
}

namespace {

constexpr double kTsirelsonBound = 2.8284271247461903;  // 2*sqrt(2)
constexpr double kClassicalBound = 2.0;

std::filesystem::path out_path(const RunConfig& cfg, const char* name) {
  return std::filesystem::path(cfg.output_dir) / name;
}

void write_table(const RunConfig& cfg, const char* csv_name,
                 const Table& table, const PlotSpec* plot,
                 CommandResult& result) {
  const auto csv = out_path(cfg, csv_name);
  atomic_write_text(csv, to_csv(table));
  result.outputs.push_back(csv);
  if (plot != nullptr && cfg.emit_svg) {
    auto svg = csv;
    svg.replace_extension(".svg");
    atomic_write_text(svg, emit_svg(table, *plot));
    result.outputs.push_back(svg);
  }
}

/// Runs one Monte-Carlo measurement per distinct (alpha, beta) setting. The
/// k-th call uses seed base_seed + k, so the four CHSH tallies are
/// statistically independent while the whole report stays a pure function of
/// the base seed.
RateSource mc_rate_source(const RunConfig& cfg, RunMode mode,
                          unsigned workers) {
  auto measurement = std::make_shared<std::uint64_t>(0);
  return [cfg, mode, workers, measurement](Angle alpha, Angle beta) {
    McConfig mc = cfg.mc_config();
    mc.mode = mode == RunMode::quantum ? McMode::quantum_gated
                                       : McMode::classical_ungated;
    mc.settings = chsh_settings(mc.settings, alpha, beta);
    mc.source.seed = cfg.source.seed + (*measurement)++;
    const CoincidenceTally tally = run_mc(mc, workers);
    const auto est = estimate_rates(tally);
    RateQuad q;
    for (std::size_t i = 0; i < est.size(); ++i) {
      q.rate[i] = est[i].rate;
      q.se[i] = est[i].se;
    }
    return q;
  };
}

// The four (alpha, beta) measurements in BellReport::e order.
std::array<std::pair<Angle, Angle>, 4> schedule_combos(
    const AngleSchedule& sched) {
  return {{{sched.alpha, sched.beta},
           {sched.alpha_prime, sched.beta},
           {sched.alpha, sched.beta_prime},
           {sched.alpha_prime, sched.beta_prime}}};
}

std::string chsh_report_csv(const BellReport& report, const ChshOptions& opt,
                            const RunConfig& cfg, double tau, double bound,
                            bool bound_ok) {
  const auto combos = schedule_combos(report.schedule);
  std::string head = "mode,engine,tau";
  std::string row = std::string(to_string(opt.mode)) + "," +
                    to_string(opt.engine) + "," + format_double(tau);
  for (std::size_t i = 0; i < combos.size(); ++i) {
    const std::string tag = std::to_string(i + 1);
    head += ",alpha" + tag + "_deg,beta" + tag + "_deg,e" + tag + ",e" + tag +
            "_stderr";
    row += "," + format_double(combos[i].first.degrees()) + "," +
           format_double(combos[i].second.degrees()) + "," +
           format_double(report.e[i].value) + "," +
           format_double(report.e[i].se);
  }
  head += ",s,s_stderr,seed,n_events,bound,bound_ok\n";
  row += "," + format_double(report.s) + "," + format_double(report.s_se) +
         "," + std::to_string(cfg.source.seed) + "," +
         std::to_string(cfg.n_events) + "," + format_double(bound) + "," +
         (bound_ok ? "true" : "false") + "\n";
  return head + row;
}

std::string chsh_report_json(const BellReport& report, const ChshOptions& opt,
                             const RunConfig& cfg, double tau, double bound,
                             bool bound_ok) {
  const auto combos = schedule_combos(report.schedule);
  ordered_json j;
  j["command"] = "chsh";
  j["mode"] = to_string(opt.mode);
  j["engine"] = to_string(opt.engine);
  j["tau"] = tau;
  j["schedule_deg"] = {
      {"alpha", report.schedule.alpha.degrees()},
      {"alpha_prime", report.schedule.alpha_prime.degrees()},
      {"beta", report.schedule.beta.degrees()},
      {"beta_prime", report.schedule.beta_prime.degrees()},
  };
  j["seed"] = cfg.source.seed;
  j["n_events"] = cfg.n_events;
  ordered_json evals = ordered_json::array();
  for (std::size_t i = 0; i < combos.size(); ++i) {
    evals.push_back({{"alpha_deg", combos[i].first.degrees()},
                     {"beta_deg", combos[i].second.degrees()},
                     {"value", report.e[i].value},
                     {"stderr", report.e[i].se}});
  }
  j["e_values"] = std::move(evals);
  j["s"] = report.s;
  j["s_stderr"] = report.s_se;
  j["bound"] = bound;
  j["bound_ok"] = bound_ok;
  return j.dump(2) + "\n";
}

}  // namespace

CommandResult cmd_chsh(const RunConfig& cfg, const ChshOptions& opt) {
  const EraserSettings base = cfg.settings();
  validate(base);
  const double tau = base.tau();

  RateSource source;
  if (opt.engine == Engine::analytic) {
    source = opt.mode == RunMode::quantum
                 ? analytic_rate_source(base, tau)
                 : analytic_classical_limit_source(base);
  } else {
    source = mc_rate_source(cfg, opt.mode, opt.workers);
  }

  const BellReport report = compute_S(canonical_chsh_schedule(), source);

  const double bound =
      opt.mode == RunMode::quantum ? kTsirelsonBound : kClassicalBound;
  // Closed-form runs must sit on the bound to roundoff; sampled runs get a
  // four-sigma statistical allowance.
  const double slack = std::max(1e-9, 4.0 * report.s_se);
  const bool bound_ok = report.s <= bound + slack;

  CommandResult result;
  result.exit_code = bound_ok ? 0 : 1;

  const bool json = cfg.output_format == OutputFormat::json;
  const auto path = out_path(cfg, json ? "chsh_report.json" : "chsh_report.csv");
  atomic_write_text(path, json ? chsh_report_json(report, opt, cfg, tau, bound,
                                                  bound_ok)
                               : chsh_report_csv(report, opt, cfg, tau, bound,
                                                 bound_ok));
  result.outputs.push_back(path);

  char line[160];
  std::snprintf(line, sizeof line,
                "chsh %s/%s: S = %.6f +/- %.6f (bound %.6f %s)",
                to_string(opt.mode), to_string(opt.engine), report.s,
                report.s_se, bound, bound_ok ? "ok" : "VIOLATED");
  result.summary = line;
  return result;
}

namespace {

/// Each column scaled to its own maximum; flat-zero columns pass through so
/// the normalization never manufactures NaNs.
std::vector<double> normalized(const std::vector<double>& values) {
  const double peak = *std::max_element(values.begin(), values.end());
  std::vector<double> out;
  out.reserve(values.size());
  for (double v : values) out.push_back(peak > 0.0 ? v / peak : v);
  return out;
}

}  // namespace

CommandResult cmd_fig2(const RunConfig& cfg) {
  const EraserSettings base = cfg.settings();
  validate(base);

  std::vector<double> grid_rad;
  grid_rad.reserve(181);
  for (int deg = 0; deg <= 180; ++deg) {
    grid_rad.push_back(deg * std::numbers::pi / 180.0);
  }
  const auto rows = sweep_fringe(base, grid_rad, base.tau(),
                                 PhaseDistribution::uniform_cycle());

  std::vector<double> r14, r13, i1i4, i1i3;
  for (const FringeRow& row : rows) {
    r14.push_back(row.r14);
    r13.push_back(row.r13);
    i1i4.push_back(row.i1i4);
    i1i3.push_back(row.i1i3);
  }
  r14 = normalized(r14);
  r13 = normalized(r13);
  i1i4 = normalized(i1i4);
  i1i3 = normalized(i1i3);

  Table upper{{"zeta_deg", "r14_norm", "r13_norm"}, {}};
  Table lower{{"zeta_deg", "i1i4_norm", "i1i3_norm"}, {}};
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const double deg = static_cast<double>(i);
    upper.rows.push_back({deg, r14[i], r13[i]});
    lower.rows.push_back({deg, i1i4[i], i1i3[i]});
  }

  CommandResult result;
  PlotSpec upper_plot{0, {1, 2}, "gated coincidence fringes", "zeta (deg)",
                      "rate / max", false};
  PlotSpec lower_plot{0, {1, 2}, "ungated intensity products", "zeta (deg)",
                      "product / max", false};
  write_table(cfg, "fig2_upper.csv", upper, &upper_plot, result);
  write_table(cfg, "fig2_lower.csv", lower, &lower_plot, result);
  result.summary = "fig2: 181-point fringe scan written";
  return result;
}

CommandResult cmd_fig3(const RunConfig& cfg, const Fig3Options& opt) {
  if (opt.steps < 2) {
    throw std::invalid_argument("fig3: need at least 2 grid points");
  }
  if (!(opt.delta_tau_lo > 0.0) || !(opt.delta_tau_hi > opt.delta_tau_lo)) {
    throw std::invalid_argument(
        "fig3: need 0 < delta_tau_lo < delta_tau_hi for a log grid");
  }

  EraserSettings s = cfg.settings();
  s.zeta = Angle::from_degrees(opt.zeta_deg);
  s.eta = Angle::from_radians(0.5 * std::numbers::pi - s.zeta.radians());
  s.xi = Angle::from_degrees(opt.xi_deg);
  s.theta = s.xi;  // shared plateau requires matching analyzer axes
  validate(s);

  std::vector<double> grid;
  grid.reserve(opt.steps);
  const double lg_lo = std::log10(opt.delta_tau_lo);
  const double lg_hi = std::log10(opt.delta_tau_hi);
  for (std::size_t i = 0; i < opt.steps; ++i) {
    const double frac =
        static_cast<double>(i) / static_cast<double>(opt.steps - 1);
    grid.push_back(std::pow(10.0, lg_lo + frac * (lg_hi - lg_lo)));
  }

  Table table{{"delta_tau", "r14", "r13", "envelope", "plateau_ref"}, {}};
  for (const DecoherenceRow& row : sweep_decoherence(s, grid)) {
    table.rows.push_back(
        {row.delta_tau, row.r14, row.r13, row.envelope_v, row.plateau});
  }

  CommandResult result;
  PlotSpec plot{0,       {1, 2}, "decoherence of the gated rates",
                "delta * tau", "rate",  true};
  write_table(cfg, "fig3.csv", table, &plot, result);
  char line[120];
  std::snprintf(line, sizeof line,
                "fig3: %zu-point decoherence scan written (zeta = %g deg, "
                "xi = theta = %g deg)",
                opt.steps, opt.zeta_deg, opt.xi_deg);
  result.summary = line;
  return result;
}

CommandResult cmd_mc(const RunConfig& cfg, unsigned workers) {
  const McConfig mc = cfg.mc_config();
  const CoincidenceTally tally = run_mc(mc, workers);

  // Matching closed-form prediction, as a per-split-event probability.
  std::array<double, 4> expected{};
  for (std::size_t i = 0; i < expected.size(); ++i) {
    const double i0_sq = mc.settings.i0 * mc.settings.i0;
    expected[i] =
        mc.mode == McMode::quantum_gated
            ? coincidence_rate(kAllPairs[i], mc.settings,
                               mc.settings.tau()) /
                  i0_sq
            : classical_intensity_product(
                  kAllPairs[i], mc.settings,
                  PhaseDistribution::from_detuning(mc.settings.delta,
                                                   mc.settings.tau_a,
                                                   mc.settings.tau_b)) /
                  i0_sq;
  }
  const ConsistencyReport check = mc_vs_values_check(tally, expected);

  ordered_json j;
  j["command"] = "mc";
  j["mode"] = mc.mode == McMode::quantum_gated ? "quantum_gated"
                                               : "classical_ungated";
  j["seed"] = mc.source.seed;
  j["n_events"] = tally.n_events;
  j["n_split"] = tally.n_split();
  ordered_json counts;
  for (PairId pair : kAllPairs) {
    counts[to_string(pair)] = tally.count(pair);
  }
  j["counts"] = std::move(counts);
  ordered_json discards;
  for (DiscardReason r : kAllDiscards) {
    discards[to_string(r)] = tally.discard(r);
  }
  j["discards"] = std::move(discards);
  j["consistent"] = check.consistent;

  std::string rates_csv = "pair,estimate,stderr,analytic_value,z_score\n";
  for (const PairCheck& c : check.pairs) {
    rates_csv += std::string(to_string(c.pair)) + "," +
                 format_double(c.empirical) + "," + format_double(c.se) + "," +
                 format_double(c.analytic) + "," + format_double(c.z) + "\n";
  }

  CommandResult result;
  result.exit_code = check.consistent ? 0 : 1;
  const auto tally_path = out_path(cfg, "tally.json");
  const auto rates_path = out_path(cfg, "rates.csv");
  atomic_write_text(tally_path, j.dump(2) + "\n");
  atomic_write_text(rates_path, rates_csv);
  result.outputs = {tally_path, rates_path};

  char line[160];
  std::snprintf(line, sizeof line,
                "mc %s: %llu events, %llu coincidences, engines %s",
                j["mode"].get<std::string>().c_str(),
                static_cast<unsigned long long>(tally.n_events),
                static_cast<unsigned long long>(tally.total_coincidences()),
                check.consistent ? "consistent" : "INCONSISTENT");
  result.summary = line;
  return result;
}

CommandResult cmd_sweep(const RunConfig& cfg, const SweepOptions& opt) {
  if (opt.steps < 2) {
    throw std::invalid_argument("sweep: need at least 2 grid points");
  }
  if (!(opt.hi > opt.lo)) {
    throw std::invalid_argument("sweep: need lo < hi");
  }
  const EraserSettings base = cfg.settings();
  validate(base);

  std::vector<double> grid;
  grid.reserve(opt.steps);
  for (std::size_t i = 0; i < opt.steps; ++i) {
    const double frac =
        static_cast<double>(i) / static_cast<double>(opt.steps - 1);
    grid.push_back(opt.lo + frac * (opt.hi - opt.lo));
  }

  CommandResult result;
  if (opt.param == "zeta") {
    std::vector<double> grid_rad;
    grid_rad.reserve(grid.size());
    for (double deg : grid) {
      grid_rad.push_back(deg * std::numbers::pi / 180.0);
    }
    Table table{{"zeta_deg", "r14", "r13", "i1i4", "i1i3"}, {}};
    const auto rows = sweep_fringe(base, grid_rad, base.tau(),
                                   PhaseDistribution::uniform_cycle());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      table.rows.push_back(
          {grid[i], rows[i].r14, rows[i].r13, rows[i].i1i4, rows[i].i1i3});
    }
    PlotSpec plot{0, {1, 2}, "gated rates vs zeta", "zeta (deg)", "rate",
                  false};
    write_table(cfg, "sweep_zeta.csv", table, &plot, result);
  } else if (opt.param == "tau") {
    Table table{{"tau", "r14", "r23", "r13", "r24", "envelope"}, {}};
    for (double tau : grid) {
      std::vector<double> row{tau};
      for (PairId pair : kAllPairs) {
        row.push_back(coincidence_rate(pair, base, tau));
      }
      row.push_back(envelope(tau, base.delta));
      table.rows.push_back(std::move(row));
    }
    PlotSpec plot{0, {1, 3}, "gated rates vs delay difference", "tau (s)",
                  "rate", false};
    write_table(cfg, "sweep_tau.csv", table, &plot, result);
  } else {
    throw std::invalid_argument("sweep: param must be zeta or tau");
  }

  char line[120];
  std::snprintf(line, sizeof line, "sweep %s: %zu points over [%g, %g]",
                opt.param.c_str(), opt.steps, opt.lo, opt.hi);
  result.summary = line;
  return result;
}

}  // namespace eraser
