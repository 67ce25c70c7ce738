#include "eraser/analytic.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace eraser {

void validate(const EraserSettings& s) {
  if (!(s.delta > 0.0)) {
    throw std::invalid_argument("settings: delta must be > 0");
  }
  if (!(s.i0 > 0.0)) {
    throw std::invalid_argument("settings: i0 must be > 0");
  }
  if (!std::isfinite(s.tau_a) || !std::isfinite(s.tau_b)) {
    throw std::invalid_argument("settings: delays must be finite");
  }
}

const char* to_string(PairId pair) {
  switch (pair) {
    case PairId::r14: return "r14";
    case PairId::r23: return "r23";
    case PairId::r13: return "r13";
    case PairId::r24: return "r24";
  }
  return "?";
}

namespace {

// Per-port fringe sign g_p: I_p = (i0/4)(1 + g_p cos(phase)).
double fringe_coeff(int port, const EraserSettings& s) {
  switch (port) {
    case 1: return -std::sin(2.0 * s.zeta.radians());
    case 2: return +std::sin(2.0 * s.eta.radians());
    case 3: return -std::sin(2.0 * s.theta.radians());
    case 4: return +std::sin(2.0 * s.xi.radians());
    default:
      throw std::invalid_argument("local_intensity: port must be 1..4");
  }
}

struct PairAngles {
  double a;        // D1/D2-side polarizer angle (zeta or eta)
  double b;        // D3/D4-side polarizer angle (xi or theta)
  bool diff_type;  // true: sin^2(a-b) + ... ; false: sin^2(a+b) - ...
  int port_12;
  int port_34;
};

PairAngles pair_angles(PairId pair, const EraserSettings& s) {
  switch (pair) {
    case PairId::r14:
      return {s.zeta.radians(), s.xi.radians(), true, 1, 4};
    case PairId::r23:
      return {s.eta.radians(), s.theta.radians(), true, 2, 3};
    case PairId::r13:
      return {s.zeta.radians(), s.theta.radians(), false, 1, 3};
    case PairId::r24:
      return {s.eta.radians(), s.xi.radians(), false, 2, 4};
  }
  throw std::invalid_argument("coincidence_rate: bad pair id");
}

}  // namespace

double local_intensity(int port, const EraserSettings& s, double phase) {
  return 0.25 * s.i0 * (1.0 + fringe_coeff(port, s) * std::cos(phase));
}

double envelope(double tau, double delta) {
  const double x = delta * tau;
  // Series continuation near 0 keeps envelope(0) = 1 exact and smooth.
  if (std::abs(x) < 1e-8) {
    return 1.0 - x * x / 6.0;
  }
  return std::sin(x) / x;
}

double coincidence_rate_at_visibility(PairId pair, const EraserSettings& s,
                                      double visibility) {
  const PairAngles pa = pair_angles(pair, s);
  const double s2a = std::sin(2.0 * pa.a);
  const double s2b = std::sin(2.0 * pa.b);
  const double cross = 0.5 * s2a * s2b * (1.0 - visibility);
  double bracket;
  if (pa.diff_type) {
    const double d = std::sin(pa.a - pa.b);
    bracket = d * d + cross;
  } else {
    const double u = std::sin(pa.a + pa.b);
    bracket = u * u - cross;
  }
  return s.i0 * s.i0 / 16.0 * bracket;
}

double coincidence_rate(PairId pair, const EraserSettings& s, double tau) {
  return coincidence_rate_at_visibility(pair, s, envelope(tau, s.delta));
}

double coincidence_rate_classical_limit(PairId pair, const EraserSettings& s) {
  return coincidence_rate_at_visibility(pair, s, 0.0);
}

PhaseDistribution PhaseDistribution::fixed(double phase) {
  const double c = std::cos(phase);
  return {c, c, c * c};
}

PhaseDistribution PhaseDistribution::uniform_cycle() {
  return {0.0, 0.0, 0.5};
}

PhaseDistribution PhaseDistribution::from_detuning(double delta, double tau_a,
                                                   double tau_b) {
  // <cos(2 detuning t)> over the uniform band [-delta/2, delta/2] is
  // sin(delta t)/(delta t): the 2 in the beat phase cancels against the
  // half-width of the band. The cross moment follows from product-to-sum.
  const double m12 = envelope(tau_b, delta);
  const double m34 = envelope(tau_a, delta);
  const double cross = 0.5 * (envelope(tau_a - tau_b, delta) +
                              envelope(tau_a + tau_b, delta));
  return {m12, m34, cross};
}

double classical_intensity_product(PairId pair, const EraserSettings& s,
                                   const PhaseDistribution& dist) {
  const PairAngles pa = pair_angles(pair, s);
  const double gm = fringe_coeff(pa.port_12, s);
  const double gn = fringe_coeff(pa.port_34, s);
  const double bracket = 1.0 + gm * dist.mean_cos_12() +
                         gn * dist.mean_cos_34() +
                         gm * gn * dist.mean_cos_cross();
  return s.i0 * s.i0 / 16.0 * bracket;
}

ChshAngles map_chsh_angles(Angle alpha, Angle beta) {
  const double half_pi = 0.5 * std::numbers::pi;
  return {alpha, Angle::from_radians(half_pi - alpha.radians()),
          Angle::from_radians(half_pi - beta.radians()), beta};
}

EraserSettings chsh_settings(const EraserSettings& base, Angle alpha,
                             Angle beta) {
  const ChshAngles m = map_chsh_angles(alpha, beta);
  EraserSettings s = base;
  s.zeta = m.zeta;
  s.eta = m.eta;
  s.theta = m.theta;
  s.xi = m.xi;
  return s;
}

}  // namespace eraser
