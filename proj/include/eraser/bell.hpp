#pragma once

#include <array>
#include <functional>
#include <vector>

#include "eraser/analytic.hpp"

// CHSH analysis on top of either rate engine, plus the two standard sweeps
// (polarizer fringe scan and decoherence scan).

namespace eraser {

/// Measurement schedule (alpha, alpha', beta, beta').
struct AngleSchedule {
  Angle alpha, alpha_prime, beta, beta_prime;
};

/// The maximally violating schedule (0, 45, 22.5, 67.5) degrees.
AngleSchedule canonical_chsh_schedule();

/// Four pair rates (PairId order) with their standard errors; errors are zero
/// for closed-form sources.
struct RateQuad {
  std::array<double, 4> rate{};
  std::array<double, 4> se{};
};

/// Normalized correlation E = (r14 + r23 - r13 - r24) / (r14 + r23 + r13 + r24).
/// Rates must be nonnegative; throws std::invalid_argument when all four
/// vanish. |E| <= 1 for any admissible input.
double compute_E(double r14, double r23, double r13, double r24);

struct EValue {
  double value = 0.0;
  double se = 0.0;
};

/// compute_E with first-order error propagation treating the four rates as
/// independent.
EValue compute_E(const RateQuad& rates);

/// Produces the four pair rates for one (alpha, beta) measurement.
using RateSource = std::function<RateQuad(Angle alpha, Angle beta)>;

struct BellReport {
  AngleSchedule schedule;
  std::array<EValue, 4> e{};  // E(a,b), E(a',b), E(a,b'), E(a',b')
  double s = 0.0;
  double s_se = 0.0;
};

/// S = |E(a,b) + E(a',b) - E(a,b') + E(a',b')| with errors combined in
/// quadrature across the four independently measured correlations.
BellReport compute_S(const AngleSchedule& schedule, const RateSource& source);

/// Closed-form gated rates at delay difference tau.
RateSource analytic_rate_source(const EraserSettings& base, double tau);

/// Closed-form gated rates in the fully dephased (visibility-0) limit.
RateSource analytic_classical_limit_source(const EraserSettings& base);

/// Ungated intensity products under the given phase ensemble.
RateSource intensity_product_source(const EraserSettings& base,
                                    const PhaseDistribution& dist);

/// Fringe scan: zeta varies over the grid with eta slaved to pi/2 - zeta
/// (the Bell mapping), while xi and theta stay at their base values. Gated
/// rates are taken at delay difference tau; ungated products under `dist`.
struct FringeRow {
  double zeta_rad = 0.0;
  double r14 = 0.0;
  double r13 = 0.0;
  double i1i4 = 0.0;
  double i1i3 = 0.0;
};

std::vector<FringeRow> sweep_fringe(const EraserSettings& base,
                                    const std::vector<double>& zeta_grid_rad,
                                    double tau, const PhaseDistribution& dist);

/// Decoherence scan over dimensionless delay-bandwidth products
/// delta_tau = delta * tau. Requires xi == theta so that both rates share one
/// plateau; throws std::invalid_argument otherwise.
struct DecoherenceRow {
  double delta_tau = 0.0;
  double r14 = 0.0;
  double r13 = 0.0;
  double envelope_v = 0.0;
  double plateau = 0.0;
};

std::vector<DecoherenceRow> sweep_decoherence(
    const EraserSettings& s, const std::vector<double>& delta_tau_grid);

}  // namespace eraser
