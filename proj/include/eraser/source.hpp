#pragma once

#include <cstdint>

namespace eraser {

enum class DetuningMode { uniform_random, linear_scan };

/// How the photon pair leaves the input beam splitter: one photon into each
/// interferometer (the only case that can produce a coincidence), or both
/// bunched into the same one.
enum class Routing { split, bunched_into_a, bunched_into_b };

struct SourceConfig {
  double mean_photon_number = 0.02;  // mu, mean photons per coherence window
  double aom_bandwidth = 1.0;        // Delta, rad/s; detunings fill [-D/2, D/2]
  DetuningMode detuning_mode = DetuningMode::uniform_random;
  std::uint64_t scan_length = 1024;  // period M of the linear_scan sawtooth
  std::uint64_t seed = 1;

  bool operator==(const SourceConfig&) const = default;
};

/// One doubly-bunched pair emitted by the source. Both photons share the same
/// detuning (they come from the same laser mode); the global phase multiplies
/// the photon sent to the D1/D2 interferometer and cancels from every
/// measured intensity.
struct PhotonPairEvent {
  std::uint64_t event_id = 0;
  double detuning = 0.0;      // rad/s, in [-Delta/2, Delta/2]
  double global_phase = 0.0;  // radians in [0, 2*pi)
  Routing routing = Routing::split;
};

/// Throws std::invalid_argument on mu < 0, Delta <= 0 or scan_length == 0.
void validate(const SourceConfig& cfg);

/// Deterministically samples event `event_id`. A pure function of
/// (cfg, event_id): regenerating any subset of indices, in any order, yields
/// identical events.
PhotonPairEvent sample_pair_event(const SourceConfig& cfg,
                                  std::uint64_t event_id);

/// Exact Poisson occupation statistics of the attenuated source, scaled to
/// expected counts over n_windows coherence windows.
struct BunchingHistogram {
  double vacuum = 0.0;
  double single = 0.0;
  double double_bunch = 0.0;
  double triple_plus = 0.0;
  double n_windows = 0.0;

  double total() const { return vacuum + single + double_bunch + triple_plus; }
};

/// Throws std::invalid_argument on mu < 0 or n_windows < 0.
BunchingHistogram poisson_bunching_stats(double mu, double n_windows);

}  // namespace eraser
