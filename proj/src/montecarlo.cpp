#include "eraser/montecarlo.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>
#include <vector>

#include "eraser/rng.hpp"

namespace eraser {

const char* to_string(DiscardReason reason) {
  switch (reason) {
    case DiscardReason::bunched_at_bs0: return "bunched_at_bs0";
    case DiscardReason::same_polarization_filtered:
      return "same_polarization_filtered";
    case DiscardReason::absorbed_no_coincidence:
      return "absorbed_no_coincidence";
  }
  return "?";
}

std::uint64_t CoincidenceTally::total_coincidences() const {
  return counts[0] + counts[1] + counts[2] + counts[3];
}

void CoincidenceTally::merge(const CoincidenceTally& other) {
  for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += other.counts[i];
  for (std::size_t i = 0; i < discards.size(); ++i) {
    discards[i] += other.discards[i];
  }
  n_events += other.n_events;
}

namespace {

// Transmitted amplitude components behind one polarizer, kept per frequency
// tag: th rides the up-shifted tag, tv the down-shifted one. The two tags are
// orthogonal final states, so the plain detection mass is |th|^2 + |tv|^2.
struct TaggedAmp {
  ComplexAmp th;
  ComplexAmp tv;

  double mass() const { return std::norm(th) + std::norm(tv); }
};

TaggedAmp transmit(const JonesAmplitude& port, Angle axis) {
  return {std::cos(axis.radians()) * port.h,
          std::sin(axis.radians()) * port.v};
}

// One interferometer: detuning phases accrue over the arm delay, the
// polarizing splitter separates the tagged arms, and the output beam splitter
// recombines them into the two detector ports.
std::pair<JonesAmplitude, JonesAmplitude> nmzi_ports(const JonesAmplitude& in,
                                                     double detuning,
                                                     double arm_delay) {
  const JonesAmplitude delayed =
      apply_detuning_phase(in, detuning, arm_delay, arm_delay);
  const auto [h_arm, v_arm] = pbs_split(delayed);
  return bs_transform(h_arm, v_arm);
}

// Coherent cross-tag coincidence amplitude of two transmitted ports: the
// (up, down) and (down, up) tag products beat at the same difference
// frequency and are therefore summed before squaring.
double gated_pair_prob(const TaggedAmp& x, const TaggedAmp& y) {
  return std::norm(x.th * y.tv + x.tv * y.th);
}

}  // namespace

EventProbs gated_event_probs(const EraserSettings& s, double detuning,
                             double global_phase) {
  // Pure-h input prepared into the equal superposition; the photon headed to
  // the D1/D2 side additionally carries the input-splitter phase.
  const JonesAmplitude prepared = hwp_diag(JonesAmplitude{{1.0, 0.0}, {}});
  const JonesAmplitude in_12 = std::polar(1.0, global_phase) * prepared;

  const auto [port1, port2] = nmzi_ports(in_12, detuning, s.tau_b);
  const auto [port3, port4] = nmzi_ports(prepared, detuning, s.tau_a);

  const TaggedAmp t1 = transmit(port1, s.zeta);
  const TaggedAmp t2 = transmit(port2, s.eta);
  const TaggedAmp t3 = transmit(port3, s.theta);
  const TaggedAmp t4 = transmit(port4, s.xi);

  EventProbs p;
  p.pair[static_cast<std::size_t>(PairId::r14)] = gated_pair_prob(t1, t4);
  p.pair[static_cast<std::size_t>(PairId::r23)] = gated_pair_prob(t2, t3);
  p.pair[static_cast<std::size_t>(PairId::r13)] = gated_pair_prob(t1, t3);
  p.pair[static_cast<std::size_t>(PairId::r24)] = gated_pair_prob(t2, t4);

  // Joint detection mass decomposes incoherently over the four tag products;
  // whatever the gate did not keep within it was filtered out. Per pair the
  // kept probability never exceeds the detection mass (AM-GM on the
  // interference term), so `filtered` is nonnegative up to roundoff.
  double filtered = 0.0;
  filtered += t1.mass() * t4.mass() - p.pair[0];
  filtered += t2.mass() * t3.mass() - p.pair[1];
  filtered += t1.mass() * t3.mass() - p.pair[2];
  filtered += t2.mass() * t4.mass() - p.pair[3];
  p.filtered = std::max(0.0, filtered);

  const double detected_12 = t1.mass() + t2.mass();
  const double detected_34 = t3.mass() + t4.mass();
  p.absorbed = std::max(0.0, 1.0 - detected_12 * detected_34);
  return p;
}

EventProbs classical_event_probs(const EraserSettings& s, double detuning) {
  const double phi = 2.0 * detuning * s.tau_b;
  const double psi = 2.0 * detuning * s.tau_a;
  // Local fringe intensities normalized to per-photon probabilities.
  const double p1 = local_intensity(1, s, phi) / s.i0;
  const double p2 = local_intensity(2, s, phi) / s.i0;
  const double p3 = local_intensity(3, s, psi) / s.i0;
  const double p4 = local_intensity(4, s, psi) / s.i0;

  EventProbs p;
  p.pair[static_cast<std::size_t>(PairId::r14)] = p1 * p4;
  p.pair[static_cast<std::size_t>(PairId::r23)] = p2 * p3;
  p.pair[static_cast<std::size_t>(PairId::r13)] = p1 * p3;
  p.pair[static_cast<std::size_t>(PairId::r24)] = p2 * p4;
  p.filtered = 0.0;
  p.absorbed = std::max(0.0, 1.0 - (p1 + p2) * (p3 + p4));
  return p;
}

namespace {

void validate(const McConfig& cfg) {
  validate(cfg.source);
  validate(cfg.settings);
  if (cfg.n_events == 0) {
    throw std::invalid_argument("mc: n_events must be >= 1");
  }
  if (cfg.n_events > (std::uint64_t{1} << 62)) {
    throw std::invalid_argument("mc: n_events too large for exact counters");
  }
}

void record_event(const McConfig& cfg, std::uint64_t j,
                  CoincidenceTally& tally) {
  const PhotonPairEvent ev = sample_pair_event(cfg.source, j);
  if (ev.routing != Routing::split) {
    ++tally.discards[static_cast<std::size_t>(DiscardReason::bunched_at_bs0)];
    return;
  }

  const EventProbs p =
      cfg.mode == McMode::quantum_gated
          ? gated_event_probs(cfg.settings, ev.detuning, ev.global_phase)
          : classical_event_probs(cfg.settings, ev.detuning);

  EventRng rng(cfg.source.seed, j, streams::outcome);
  double u = rng.next_uniform();
  for (std::size_t i = 0; i < p.pair.size(); ++i) {
    if (u < p.pair[i]) {
      ++tally.counts[i];
      return;
    }
    u -= p.pair[i];
  }
  if (u < p.filtered) {
    ++tally.discards[static_cast<std::size_t>(
        DiscardReason::same_polarization_filtered)];
    return;
  }
  ++tally.discards[static_cast<std::size_t>(
      DiscardReason::absorbed_no_coincidence)];
}

}  // namespace

CoincidenceTally run_mc_range(const McConfig& cfg, std::uint64_t first,
                              std::uint64_t last) {
  CoincidenceTally tally;
  for (std::uint64_t j = first; j < last; ++j) {
    record_event(cfg, j, tally);
  }
  tally.n_events = last - first;
  return tally;
}

CoincidenceTally run_mc(const McConfig& cfg, unsigned workers) {
  validate(cfg);
  if (workers == 0) workers = 1;
  const std::uint64_t n = cfg.n_events;
  if (workers == 1 || n < 2 * workers) {
    return run_mc_range(cfg, 0, n);
  }

  std::vector<CoincidenceTally> partial(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    const std::uint64_t first = n * w / workers;
    const std::uint64_t last = n * (w + 1) / workers;
    pool.emplace_back([&cfg, &partial, w, first, last] {
      partial[w] = run_mc_range(cfg, first, last);
    });
  }
  for (auto& t : pool) t.join();

  CoincidenceTally tally;
  for (const auto& part : partial) tally.merge(part);
  return tally;
}

std::uint64_t events_for_split_target(const SourceConfig& cfg,
                                      std::uint64_t n_split) {
  std::uint64_t seen = 0;
  std::uint64_t j = 0;
  while (seen < n_split) {
    if (sample_pair_event(cfg, j).routing == Routing::split) ++seen;
    ++j;
  }
  return j;
}

std::array<RateEstimate, 4> estimate_rates(const CoincidenceTally& tally) {
  if (tally.total_coincidences() == 0) {
    throw std::invalid_argument("estimate_rates: tally holds no coincidences");
  }
  const double n = static_cast<double>(tally.n_split());
  std::array<RateEstimate, 4> out{};
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double p = static_cast<double>(tally.counts[i]) / n;
    out[i] = {p, std::sqrt(p * (1.0 - p) / n), tally.counts[i]};
  }
  return out;
}

ConsistencyReport mc_vs_values_check(const CoincidenceTally& tally,
                                     const std::array<double, 4>& expected) {
  const auto rates = estimate_rates(tally);
  ConsistencyReport report;
  for (std::size_t i = 0; i < rates.size(); ++i) {
    PairCheck& c = report.pairs[i];
    c.pair = kAllPairs[i];
    c.empirical = rates[i].rate;
    c.se = rates[i].se;
    c.analytic = expected[i];
    if (c.se > 0.0) {
      c.z = (c.empirical - c.analytic) / c.se;
    } else {
      // Degenerate error bar: exact agreement scores 0, anything else is
      // infinitely inconsistent.
      c.z = (c.empirical == c.analytic)
                ? 0.0
                : std::numeric_limits<double>::infinity();
    }
    if (!(std::abs(c.z) <= 4.0)) report.consistent = false;
  }
  return report;
}

ConsistencyReport mc_vs_analytic_check(const CoincidenceTally& tally,
                                       const EraserSettings& s, double tau) {
  std::array<double, 4> expected{};
  for (std::size_t i = 0; i < expected.size(); ++i) {
    expected[i] = coincidence_rate(kAllPairs[i], s, tau) / (s.i0 * s.i0);
  }
  return mc_vs_values_check(tally, expected);
}

}  // namespace eraser
