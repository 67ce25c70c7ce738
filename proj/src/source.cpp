#include "eraser/source.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "eraser/rng.hpp"

namespace eraser {

void validate(const SourceConfig& cfg) {
  if (!(cfg.mean_photon_number >= 0.0)) {
    throw std::invalid_argument("source: mean_photon_number must be >= 0");
  }
  if (!(cfg.aom_bandwidth > 0.0)) {
    throw std::invalid_argument("source: aom_bandwidth must be > 0");
  }
  if (cfg.scan_length == 0) {
    throw std::invalid_argument("source: scan_length must be >= 1");
  }
}

PhotonPairEvent sample_pair_event(const SourceConfig& cfg,
                                  std::uint64_t event_id) {
  validate(cfg);

  PhotonPairEvent ev;
  ev.event_id = event_id;

  if (cfg.detuning_mode == DetuningMode::uniform_random) {
    EventRng rng(cfg.seed, event_id, streams::detuning);
    ev.detuning = (rng.next_uniform() - 0.5) * cfg.aom_bandwidth;
  } else {
    // Sawtooth sweep across the AOM band, period scan_length.
    const std::uint64_t k = event_id % cfg.scan_length;
    ev.detuning = cfg.aom_bandwidth *
                  (static_cast<double>(k) / static_cast<double>(cfg.scan_length) - 0.5);
  }

  EventRng phase_rng(cfg.seed, event_id, streams::global_phase);
  ev.global_phase = 2.0 * std::numbers::pi * phase_rng.next_uniform();

  // Equal-chance routing at the input splitter: split 1/2, each bunched
  // outcome 1/4.
  EventRng routing_rng(cfg.seed, event_id, streams::routing);
  const double u = routing_rng.next_uniform();
  if (u < 0.5) {
    ev.routing = Routing::split;
  } else if (u < 0.75) {
    ev.routing = Routing::bunched_into_a;
  } else {
    ev.routing = Routing::bunched_into_b;
  }
  return ev;
}

BunchingHistogram poisson_bunching_stats(double mu, double n_windows) {
  if (!(mu >= 0.0)) {
    throw std::invalid_argument("poisson_bunching_stats: mu must be >= 0");
  }
  if (!(n_windows >= 0.0)) {
    throw std::invalid_argument("poisson_bunching_stats: n_windows must be >= 0");
  }
  BunchingHistogram h;
  const double p0 = std::exp(-mu);
  const double p1 = mu * p0;
  const double p2 = 0.5 * mu * mu * p0;
  // Complement keeps the four probabilities summing to one exactly; the
  // max() guards the mu -> 0 roundoff edge where the complement can land a
  // few ulp below zero.
  const double p3 = std::max(0.0, 1.0 - (p0 + p1 + p2));
  h.vacuum = p0 * n_windows;
  h.single = p1 * n_windows;
  h.double_bunch = p2 * n_windows;
  h.triple_plus = p3 * n_windows;
  h.n_windows = n_windows;
  return h;
}

}  // namespace eraser
