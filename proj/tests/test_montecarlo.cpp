#include <doctest.h>

#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "eraser/montecarlo.hpp"

// ---------------------------------------------------------------------------
// Event engine tests. The strongest checks are per-event: the Born-rule
// outcome distribution of a single split pair must agree with the closed-form
// bracket evaluated at that event's detuning, for every pair and every
// setting. Ensemble tests then only have to confirm unbiased sampling.
// ---------------------------------------------------------------------------

using namespace eraser;

namespace {

EraserSettings settings_deg(double zeta, double eta, double theta, double xi,
                            double tau_a = 0.0, double tau_b = 0.0) {
  EraserSettings s;
  s.zeta = Angle::from_degrees(zeta);
  s.eta = Angle::from_degrees(eta);
  s.theta = Angle::from_degrees(theta);
  s.xi = Angle::from_degrees(xi);
  s.tau_a = tau_a;
  s.tau_b = tau_b;
  return s;
}

McConfig chsh_mc(double alpha_deg, double beta_deg, std::uint64_t n_events,
                 std::uint64_t seed) {
  McConfig cfg;
  cfg.n_events = n_events;
  cfg.mode = McMode::quantum_gated;
  cfg.settings = chsh_settings(settings_deg(0, 0, 0, 0),
                               Angle::from_degrees(alpha_deg),
                               Angle::from_degrees(beta_deg));
  cfg.source.seed = seed;
  return cfg;
}

}  // namespace

TEST_SUITE("montecarlo") {

TEST_CASE("per-event outcome mass is normalized in both modes") {
  std::mt19937 gen(101);
  std::uniform_real_distribution<double> angle_u(0.0, 180.0);
  std::uniform_real_distribution<double> delay_u(-3.0, 3.0);
  std::uniform_real_distribution<double> detuning_u(-2.0, 2.0);
  std::uniform_real_distribution<double> phase_u(0.0, 2.0 * std::numbers::pi);
  for (int trial = 0; trial < 300; ++trial) {
    const EraserSettings s =
        settings_deg(angle_u(gen), angle_u(gen), angle_u(gen), angle_u(gen),
                     delay_u(gen), delay_u(gen));
    const double detuning = detuning_u(gen);
    const EventProbs q = gated_event_probs(s, detuning, phase_u(gen));
    CHECK(q.sum() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(q.filtered >= 0.0);
    CHECK(q.absorbed >= 0.0);
    for (double p : q.pair) CHECK(p >= 0.0);

    const EventProbs c = classical_event_probs(s, detuning);
    CHECK(c.sum() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(c.filtered == 0.0);
  }
}

TEST_CASE("per-event gated probabilities equal the closed-form bracket at "
          "the event's own fringe phase") {
  // For one detuning the ensemble average collapses to a point, so the
  // closed form evaluated at visibility cos(2 detuning tau) must reproduce
  // the chain probabilities exactly. This welds the two engines together
  // event by event, not just in distribution.
  std::mt19937 gen(202);
  std::uniform_real_distribution<double> angle_u(0.0, 180.0);
  std::uniform_real_distribution<double> delay_u(-3.0, 3.0);
  std::uniform_real_distribution<double> detuning_u(-2.0, 2.0);
  for (int trial = 0; trial < 200; ++trial) {
    const EraserSettings s =
        settings_deg(angle_u(gen), angle_u(gen), angle_u(gen), angle_u(gen),
                     delay_u(gen), delay_u(gen));
    const double detuning = detuning_u(gen);
    const EventProbs q = gated_event_probs(s, detuning, 1.234);
    const double point_visibility = std::cos(2.0 * detuning * s.tau());
    for (std::size_t i = 0; i < kAllPairs.size(); ++i) {
      CHECK(q.pair[i] ==
            doctest::Approx(coincidence_rate_at_visibility(
                                kAllPairs[i], s, point_visibility))
                .epsilon(1e-12));
    }
  }
}

TEST_CASE("gated probabilities ignore the pump's global phase") {
  const EraserSettings s = settings_deg(10, 100, 50, 140, 0.8, 0.2);
  const EventProbs a = gated_event_probs(s, 0.9, 0.0);
  const EventProbs b = gated_event_probs(s, 0.9, 2.7);
  for (std::size_t i = 0; i < a.pair.size(); ++i) {
    CHECK(a.pair[i] == doctest::Approx(b.pair[i]).epsilon(1e-13));
  }
  CHECK(a.filtered == doctest::Approx(b.filtered).epsilon(1e-13));
  CHECK(a.absorbed == doctest::Approx(b.absorbed).epsilon(1e-13));
}

TEST_CASE("quantum mode: fixed absorption and the CHSH-mapped half-half "
          "split of the detected mass") {
  // Each polarizer behind a balanced port transmits half its photon's mass
  // regardless of axis, so the joint detection mass is always 1/4 and the
  // absorbed complement 3/4. Under the CHSH mapping the detected quarter
  // splits exactly evenly between kept (beating) and filtered (dc) products.
  std::mt19937 gen(303);
  std::uniform_real_distribution<double> angle_u(0.0, 180.0);
  std::uniform_real_distribution<double> detuning_u(-2.0, 2.0);
  for (int trial = 0; trial < 100; ++trial) {
    const EraserSettings any =
        settings_deg(angle_u(gen), angle_u(gen), angle_u(gen), angle_u(gen),
                     0.7, -0.4);
    const EventProbs q = gated_event_probs(any, detuning_u(gen), 0.3);
    CHECK(q.absorbed == doctest::Approx(0.75).epsilon(1e-12));

    const EraserSettings mapped = chsh_settings(
        any, Angle::from_degrees(angle_u(gen)),
        Angle::from_degrees(angle_u(gen)));
    const EventProbs m = gated_event_probs(mapped, detuning_u(gen), 0.1);
    const double kept = m.pair[0] + m.pair[1] + m.pair[2] + m.pair[3];
    CHECK(kept == doctest::Approx(0.125).epsilon(1e-12));
    CHECK(m.filtered == doctest::Approx(0.125).epsilon(1e-12));
  }
}

TEST_CASE("classical mode samples the product of local fringes") {
  const EraserSettings s = settings_deg(30, 120, 75, 22.5, 1.5, 0.5);
  const double detuning = 0.8;
  const EventProbs c = classical_event_probs(s, detuning);
  const double phi = 2.0 * detuning * s.tau_b;
  const double psi = 2.0 * detuning * s.tau_a;
  CHECK(c.pair[0] == doctest::Approx(local_intensity(1, s, phi) *
                                     local_intensity(4, s, psi))
                         .epsilon(1e-13));
  CHECK(c.pair[1] == doctest::Approx(local_intensity(2, s, phi) *
                                     local_intensity(3, s, psi))
                         .epsilon(1e-13));
  CHECK(c.pair[2] == doctest::Approx(local_intensity(1, s, phi) *
                                     local_intensity(3, s, psi))
                         .epsilon(1e-13));
  CHECK(c.pair[3] == doctest::Approx(local_intensity(2, s, phi) *
                                     local_intensity(4, s, psi))
                         .epsilon(1e-13));
}

TEST_CASE("tally bookkeeping: every event lands in exactly one bucket") {
  McConfig cfg = chsh_mc(0.0, 22.5, 100000, 11);
  const CoincidenceTally tally = run_mc(cfg);
  std::uint64_t total = tally.total_coincidences();
  for (DiscardReason r : kAllDiscards) total += tally.discard(r);
  CHECK(total == tally.n_events);
  CHECK(tally.n_events == cfg.n_events);
  CHECK(tally.n_split() ==
        tally.n_events - tally.discard(DiscardReason::bunched_at_bs0));
}

TEST_CASE("tally merge is associative and order-insensitive") {
  const McConfig cfg = chsh_mc(45.0, 67.5, 30000, 5);
  const CoincidenceTally whole = run_mc_range(cfg, 0, 30000);

  CoincidenceTally ab = run_mc_range(cfg, 0, 7777);
  ab.merge(run_mc_range(cfg, 7777, 30000));
  CHECK(ab == whole);

  CoincidenceTally ba = run_mc_range(cfg, 7777, 30000);
  ba.merge(run_mc_range(cfg, 0, 7777));
  CHECK(ba == whole);
}

TEST_CASE("worker count never changes the tally") {
  McConfig cfg = chsh_mc(0.0, 22.5, 100001, 31);  // odd count stresses ranges
  const CoincidenceTally one = run_mc(cfg, 1);
  const CoincidenceTally two = run_mc(cfg, 2);
  const CoincidenceTally eight = run_mc(cfg, 8);
  CHECK(one == two);
  CHECK(one == eight);

  cfg.mode = McMode::classical_ungated;
  CHECK(run_mc(cfg, 1) == run_mc(cfg, 8));
}

TEST_CASE("matched analyzers never fire the joint-zero pair") {
  // zeta = xi with tau = 0: the per-event R14 probability is exactly zero,
  // so no draw can ever select it — the count is identically zero, not just
  // statistically small.
  McConfig cfg;
  cfg.n_events = 100000;
  cfg.settings = chsh_settings(settings_deg(0, 0, 0, 0),
                               Angle::from_degrees(22.5),
                               Angle::from_degrees(22.5));
  cfg.source.seed = 17;
  const CoincidenceTally tally = run_mc(cfg, 4);
  CHECK(tally.count(PairId::r14) == 0);
  // Its mirror pair R23 is equally dark under the mapping.
  CHECK(tally.count(PairId::r23) == 0);
  CHECK(tally.total_coincidences() > 0);
}

TEST_CASE("split and retained fractions sit at one half") {
  McConfig cfg = chsh_mc(0.0, 22.5, 1'000'000, 1);
  const CoincidenceTally tally = run_mc(cfg, 8);

  const double n = static_cast<double>(tally.n_events);
  const double split = static_cast<double>(tally.n_split());
  const double sigma_split = std::sqrt(0.25 * n);
  CHECK(std::abs(split - 0.5 * n) < 4.0 * sigma_split);

  // Retained vs filtered among detected outcomes is Bernoulli(1/2) exactly
  // at CHSH-mapped settings.
  const double kept = static_cast<double>(tally.total_coincidences());
  const double filtered = static_cast<double>(
      tally.discard(DiscardReason::same_polarization_filtered));
  const double detected = kept + filtered;
  const double sigma_keep = std::sqrt(0.25 * detected);
  CHECK(std::abs(kept - 0.5 * detected) < 4.0 * sigma_keep);
}

TEST_CASE("sampled detunings reproduce the decoherence envelope") {
  SourceConfig src;
  src.seed = 23;
  src.aom_bandwidth = 1.0;
  const int n = 200000;
  for (double tau : {0.5, 10.0}) {
    double sum = 0.0, sum_sq = 0.0;
    for (int j = 0; j < n; ++j) {
      const double c = std::cos(2.0 * sample_pair_event(src, j).detuning * tau);
      sum += c;
      sum_sq += c * c;
    }
    const double mean = sum / n;
    const double var = sum_sq / n - mean * mean;
    const double se = std::sqrt(var / n);
    CHECK(std::abs(mean - envelope(tau, src.aom_bandwidth)) < 4.0 * se);
  }
}

TEST_CASE("events_for_split_target hits the requested split count exactly") {
  SourceConfig src;
  src.seed = 3;
  const std::uint64_t n = events_for_split_target(src, 1000);
  std::uint64_t split = 0;
  for (std::uint64_t j = 0; j < n; ++j) {
    if (sample_pair_event(src, j).routing == Routing::split) ++split;
  }
  CHECK(split == 1000);
  // Minimality: the final event is the 1000th split.
  CHECK(sample_pair_event(src, n - 1).routing == Routing::split);
}

TEST_CASE("rate estimation from a synthetic tally") {
  CoincidenceTally tally;
  tally.counts = {500, 500, 0, 0};
  tally.n_events = 2000;  // no bunched discards: n_split = 2000
  tally.discards = {0, 500, 500};
  const auto rates = estimate_rates(tally);
  CHECK(rates[0].rate == doctest::Approx(0.25));
  CHECK(rates[0].se == doctest::Approx(0.009682458365518542).epsilon(1e-12));
  CHECK(rates[2].rate == 0.0);
  CHECK(rates[2].se == 0.0);

  CoincidenceTally empty;
  empty.n_events = 100;
  empty.discards = {50, 25, 25};
  CHECK_THROWS_AS(estimate_rates(empty), std::invalid_argument);
}

TEST_CASE("engines agree at the benchmark point (0, 22.5) degrees") {
  McConfig cfg = chsh_mc(0.0, 22.5, 1'000'000, 2);
  const CoincidenceTally tally = run_mc(cfg, 8);
  const ConsistencyReport report =
      mc_vs_analytic_check(tally, cfg.settings, cfg.settings.tau());
  CHECK(report.consistent);
  for (const PairCheck& c : report.pairs) {
    CHECK(std::abs(c.z) <= 4.0);
    CHECK(c.se > 0.0);
  }
}

TEST_CASE("a zero-rate pair with zero counts scores z = 0") {
  McConfig cfg;
  cfg.n_events = 50000;
  cfg.settings = chsh_settings(settings_deg(0, 0, 0, 0),
                               Angle::from_degrees(22.5),
                               Angle::from_degrees(22.5));
  cfg.source.seed = 8;
  const CoincidenceTally tally = run_mc(cfg);
  const ConsistencyReport report =
      mc_vs_analytic_check(tally, cfg.settings, 0.0);
  CHECK(report.pairs[0].z == 0.0);
  CHECK(report.consistent);
}

TEST_CASE("a corrupted prediction is flagged") {
  McConfig cfg = chsh_mc(0.0, 22.5, 200000, 6);
  const CoincidenceTally tally = run_mc(cfg, 4);
  std::array<double, 4> expected{};
  for (std::size_t i = 0; i < expected.size(); ++i) {
    expected[i] = coincidence_rate(kAllPairs[i], cfg.settings, 0.0);
  }
  CHECK(mc_vs_values_check(tally, expected).consistent);

  // Shift one prediction by ten standard errors: must trip the flag.
  const auto rates = estimate_rates(tally);
  expected[3] += 10.0 * rates[3].se;
  CHECK_FALSE(mc_vs_values_check(tally, expected).consistent);
}

TEST_CASE("classical mode converges to the ungated intensity products") {
  McConfig cfg;
  cfg.n_events = 1'000'000;
  cfg.mode = McMode::classical_ungated;
  cfg.settings = settings_deg(30, 120, 75, 22.5, 500.0, 500.0);
  cfg.settings.delta = 2.0;
  cfg.source.aom_bandwidth = 2.0;
  cfg.source.seed = 12;
  const CoincidenceTally tally = run_mc(cfg, 8);

  const PhaseDistribution dist = PhaseDistribution::from_detuning(
      cfg.settings.delta, cfg.settings.tau_a, cfg.settings.tau_b);
  std::array<double, 4> expected{};
  for (std::size_t i = 0; i < expected.size(); ++i) {
    expected[i] = classical_intensity_product(kAllPairs[i], cfg.settings, dist);
  }
  const ConsistencyReport report = mc_vs_values_check(tally, expected);
  CHECK(report.consistent);
}

TEST_CASE("invalid configurations are rejected") {
  McConfig cfg = chsh_mc(0.0, 22.5, 0, 1);
  CHECK_THROWS_AS(run_mc(cfg), std::invalid_argument);
  cfg.n_events = 10;
  cfg.settings.delta = -1.0;
  CHECK_THROWS_AS(run_mc(cfg), std::invalid_argument);
}

TEST_CASE("discard reason names are stable") {
  CHECK(std::string(to_string(DiscardReason::bunched_at_bs0)) ==
        "bunched_at_bs0");
  CHECK(std::string(to_string(DiscardReason::same_polarization_filtered)) ==
        "same_polarization_filtered");
  CHECK(std::string(to_string(DiscardReason::absorbed_no_coincidence)) ==
        "absorbed_no_coincidence");
}

}  // TEST_SUITE("montecarlo")
