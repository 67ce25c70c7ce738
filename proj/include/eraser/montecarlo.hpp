#pragma once

#include <array>
#include <cstdint>

#include "eraser/analytic.hpp"
#include "eraser/source.hpp"

// Event-by-event engine. Each pair event is propagated through the optics
// chain (preparation half-wave plate, input splitter routing, per-arm
// detuning phases, recombining beam splitter, polarizers) and one outcome is
// Born-sampled per event. Everything is a pure function of
// (seed, event_id, settings), so tallies are independent of worker count and
// event order.

namespace eraser {

enum class McMode { quantum_gated, classical_ungated };

struct McConfig {
  std::uint64_t n_events = 0;  // pair events generated (split or not)
  McMode mode = McMode::quantum_gated;
  EraserSettings settings;
  SourceConfig source;
};

/// Why an event produced no recorded coincidence. Enumerator order fixes the
/// tally layout.
enum class DiscardReason {
  bunched_at_bs0,              // pair never split between the interferometers
  same_polarization_filtered,  // both detectors fired but the beat-note
                               // filter rejected the same-tag product
  absorbed_no_coincidence      // at least one photon lost at a polarizer
};

inline constexpr std::array<DiscardReason, 3> kAllDiscards{
    DiscardReason::bunched_at_bs0, DiscardReason::same_polarization_filtered,
    DiscardReason::absorbed_no_coincidence};

const char* to_string(DiscardReason reason);

struct CoincidenceTally {
  std::array<std::uint64_t, 4> counts{};    // indexed by PairId order
  std::array<std::uint64_t, 3> discards{};  // indexed by DiscardReason order
  std::uint64_t n_events = 0;

  std::uint64_t count(PairId pair) const {
    return counts[static_cast<std::size_t>(pair)];
  }
  std::uint64_t discard(DiscardReason r) const {
    return discards[static_cast<std::size_t>(r)];
  }
  std::uint64_t n_split() const {
    return n_events - discard(DiscardReason::bunched_at_bs0);
  }
  std::uint64_t total_coincidences() const;

  /// Associative, order-insensitive combination of disjoint event ranges.
  void merge(const CoincidenceTally& other);

  bool operator==(const CoincidenceTally&) const = default;
};

/// Per-event outcome distribution for one split pair: the four coincidence
/// probabilities, the beat-filter rejection mass and the polarizer-absorption
/// mass. Sums to 1 up to roundoff.
struct EventProbs {
  std::array<double, 4> pair{};  // indexed by PairId order
  double filtered = 0.0;
  double absorbed = 0.0;

  double sum() const {
    return pair[0] + pair[1] + pair[2] + pair[3] + filtered + absorbed;
  }
};

/// Gated (beat-note-filtered) outcome distribution. The kept probability of a
/// detector pair is the squared modulus of the coherent sum of the two
/// cross-tag amplitude products; the same-tag mass is routed to `filtered`,
/// polarizer losses to `absorbed`.
EventProbs gated_event_probs(const EraserSettings& s, double detuning,
                             double global_phase);

/// Filter-off reference: each side fires independently according to its local
/// fringe intensity; no beat gating, so `filtered` is always 0.
EventProbs classical_event_probs(const EraserSettings& s, double detuning);

/// Tally of the half-open event index range [first, last). Deterministic.
CoincidenceTally run_mc_range(const McConfig& cfg, std::uint64_t first,
                              std::uint64_t last);

/// Full run, data-parallel over `workers` index ranges. The result is
/// byte-identical for any worker count. Throws on invalid config.
CoincidenceTally run_mc(const McConfig& cfg, unsigned workers = 1);

/// Smallest n_events such that exactly n_split split events occur; lets a run
/// be sized by coincidence-capable events instead of raw emissions.
std::uint64_t events_for_split_target(const SourceConfig& cfg,
                                      std::uint64_t n_split);

struct RateEstimate {
  double rate = 0.0;  // count / n_split
  double se = 0.0;    // binomial standard error sqrt(p(1-p)/n_split)
  std::uint64_t count = 0;
};

/// Normalized per-split-event coincidence rates with binomial errors.
/// Throws std::invalid_argument if the tally holds no coincidences at all.
std::array<RateEstimate, 4> estimate_rates(const CoincidenceTally& tally);

struct PairCheck {
  PairId pair = PairId::r14;
  double empirical = 0.0;
  double se = 0.0;
  double analytic = 0.0;
  double z = 0.0;
};

struct ConsistencyReport {
  std::array<PairCheck, 4> pairs{};
  bool consistent = true;  // all |z| <= 4
};

/// z-scores of the empirical rates against explicit expected per-split-event
/// probabilities. A zero-count pair matching a zero expectation scores z = 0.
ConsistencyReport mc_vs_values_check(const CoincidenceTally& tally,
                                     const std::array<double, 4>& expected);

/// Bridge to the closed-form engine: expected probabilities are
/// coincidence_rate(pair, s, tau) / i0^2.
ConsistencyReport mc_vs_analytic_check(const CoincidenceTally& tally,
                                       const EraserSettings& s, double tau);

}  // namespace eraser
