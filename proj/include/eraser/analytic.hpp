#pragma once

#include <array>

#include "eraser/optics.hpp"

// Closed-form engine for the pair of noninterfering Mach-Zehnder
// interferometers with polarization-frequency-correlated input.
//
// Detectors D1/D2 sit behind polarizers zeta/eta on the interferometer with
// arm delay tau_b (single-detector fringe phase phi = 2*detuning*tau_b);
// detectors D3/D4 sit behind theta/xi on the interferometer with delay tau_a
// (phase psi = 2*detuning*tau_a). Only the delay difference
// tau = tau_a - tau_b enters the gated coincidence rates.

namespace eraser {

struct EraserSettings {
  Angle zeta;   // polarizer axis at D1
  Angle eta;    // polarizer axis at D2
  Angle theta;  // polarizer axis at D3
  Angle xi;     // polarizer axis at D4
  double tau_a = 0.0;  // arm delay of the D3/D4 interferometer, s
  double tau_b = 0.0;  // arm delay of the D1/D2 interferometer, s
  double delta = 1.0;  // AOM detuning bandwidth, rad/s
  double i0 = 1.0;     // per-photon intensity scale

  double tau() const { return tau_a - tau_b; }

  bool operator==(const EraserSettings&) const = default;
};

/// Throws std::invalid_argument on delta <= 0, i0 <= 0 or non-finite delays.
void validate(const EraserSettings& s);

/// Detector pairs that can fire in coincidence (one detector per
/// interferometer). Enumerator order fixes the tally and report layout.
enum class PairId { r14, r23, r13, r24 };

inline constexpr std::array<PairId, 4> kAllPairs{PairId::r14, PairId::r23,
                                                 PairId::r13, PairId::r24};

const char* to_string(PairId pair);

/// Single-detector mean intensity at the given fringe phase:
///   I1 = (i0/4)(1 - sin 2*zeta  * cos phase)
///   I2 = (i0/4)(1 + sin 2*eta   * cos phase)
///   I3 = (i0/4)(1 - sin 2*theta * cos phase)
///   I4 = (i0/4)(1 + sin 2*xi    * cos phase)
/// Throws std::invalid_argument unless port is 1..4.
double local_intensity(int port, const EraserSettings& s, double phase);

/// Decoherence envelope of the gated rates for detunings uniform over
/// [-delta/2, delta/2]: sin(delta*tau)/(delta*tau), continued to 1 at 0.
double envelope(double tau, double delta);

/// Gated coincidence rate at a fixed envelope value v (v = 1 recovers the
/// zero-delay quantum rates, v = 0 the fully dephased classical limit):
///   R14 = (i0^2/16)[sin^2(zeta - xi)  + 1/2 sin 2*zeta sin 2*xi  (1 - v)]
///   R23 = (i0^2/16)[sin^2(eta - theta)+ 1/2 sin 2*eta  sin 2*theta(1 - v)]
///   R13 = (i0^2/16)[sin^2(zeta + theta)-1/2 sin 2*zeta sin 2*theta(1 - v)]
///   R24 = (i0^2/16)[sin^2(eta + xi)   - 1/2 sin 2*eta  sin 2*xi   (1 - v)]
double coincidence_rate_at_visibility(PairId pair, const EraserSettings& s,
                                      double visibility);

/// Gated coincidence rate at delay difference tau (envelope applied).
double coincidence_rate(PairId pair, const EraserSettings& s, double tau);

/// Long-delay limit, visibility 0 exactly.
double coincidence_rate_classical_limit(PairId pair, const EraserSettings& s);

/// Ensemble of the common fringe phase seen by the two interferometers when
/// tau_a = tau_b. Supplies the first and second moments that enter the
/// ungated intensity products.
class PhaseDistribution {
 public:
  /// Both phases pinned to one value.
  static PhaseDistribution fixed(double phase);
  /// Phase equidistributed over a full cycle (the large common-delay limit).
  static PhaseDistribution uniform_cycle();
  /// Phases phi = 2*detuning*tau_b, psi = 2*detuning*tau_a with the detuning
  /// uniform over [-delta/2, delta/2]; moments reduce to envelope() values.
  static PhaseDistribution from_detuning(double delta, double tau_a,
                                         double tau_b);

  double mean_cos_12() const { return mean_cos_12_; }     // <cos phi>
  double mean_cos_34() const { return mean_cos_34_; }     // <cos psi>
  double mean_cos_cross() const { return mean_cos_cross_; }  // <cos phi cos psi>

 private:
  PhaseDistribution(double m12, double m34, double cross)
      : mean_cos_12_(m12), mean_cos_34_(m34), mean_cos_cross_(cross) {}

  double mean_cos_12_;
  double mean_cos_34_;
  double mean_cos_cross_;
};

/// Ungated (filter-off) mean product of the two single-detector intensities
/// for the given pair, averaged over the phase ensemble:
///   <Im In> = (i0^2/16)[1 + gm <cos phi> + gn <cos psi> + gm gn <cos phi cos psi>]
/// with the per-port fringe signs g1 = -sin 2*zeta, g2 = +sin 2*eta,
/// g3 = -sin 2*theta, g4 = +sin 2*xi.
double classical_intensity_product(PairId pair, const EraserSettings& s,
                                   const PhaseDistribution& dist);

/// Polarizer settings realizing the Bell measurement (alpha, beta):
/// zeta = alpha, eta = pi/2 - alpha, theta = pi/2 - beta, xi = beta.
/// Under this mapping R23 = R14 and R24 = R13 identically.
struct ChshAngles {
  Angle zeta, eta, theta, xi;
};

ChshAngles map_chsh_angles(Angle alpha, Angle beta);

/// Convenience: base settings with the four polarizer axes replaced by the
/// mapped (alpha, beta) angles.
EraserSettings chsh_settings(const EraserSettings& base, Angle alpha,
                             Angle beta);

}  // namespace eraser
