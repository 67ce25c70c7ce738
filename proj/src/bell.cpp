#include "eraser/bell.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace eraser {

AngleSchedule canonical_chsh_schedule() {
  return {Angle::from_degrees(0.0), Angle::from_degrees(45.0),
          Angle::from_degrees(22.5), Angle::from_degrees(67.5)};
}

double compute_E(double r14, double r23, double r13, double r24) {
  if (r14 < 0.0 || r23 < 0.0 || r13 < 0.0 || r24 < 0.0) {
    throw std::invalid_argument("compute_E: rates must be nonnegative");
  }
  const double total = r14 + r23 + r13 + r24;
  if (!(total > 0.0)) {
    throw std::invalid_argument("compute_E: all four rates are zero");
  }
  return (r14 + r23 - r13 - r24) / total;
}

EValue compute_E(const RateQuad& rates) {
  const double total =
      rates.rate[0] + rates.rate[1] + rates.rate[2] + rates.rate[3];
  const double diff =
      rates.rate[0] + rates.rate[1] - rates.rate[2] - rates.rate[3];
  const double e =
      compute_E(rates.rate[0], rates.rate[1], rates.rate[2], rates.rate[3]);

  // d(diff/total)/dr_i = (total -+ diff) / total^2 with + for the two rates
  // entering diff positively.
  double var = 0.0;
  const double t2 = total * total;
  for (std::size_t i = 0; i < 4; ++i) {
    const double partial =
        (i < 2 ? (total - diff) : (total + diff)) / t2 * (i < 2 ? 1.0 : -1.0);
    var += partial * partial * rates.se[i] * rates.se[i];
  }
  return {e, std::sqrt(var)};
}

BellReport compute_S(const AngleSchedule& schedule, const RateSource& source) {
  BellReport report;
  report.schedule = schedule;
  report.e[0] = compute_E(source(schedule.alpha, schedule.beta));
  report.e[1] = compute_E(source(schedule.alpha_prime, schedule.beta));
  report.e[2] = compute_E(source(schedule.alpha, schedule.beta_prime));
  report.e[3] = compute_E(source(schedule.alpha_prime, schedule.beta_prime));

  const double s_signed = report.e[0].value + report.e[1].value -
                          report.e[2].value + report.e[3].value;
  report.s = std::abs(s_signed);
  double var = 0.0;
  for (const EValue& e : report.e) var += e.se * e.se;
  report.s_se = std::sqrt(var);
  return report;
}

RateSource analytic_rate_source(const EraserSettings& base, double tau) {
  return [base, tau](Angle alpha, Angle beta) {
    const EraserSettings s = chsh_settings(base, alpha, beta);
    RateQuad q;
    for (std::size_t i = 0; i < kAllPairs.size(); ++i) {
      q.rate[i] = coincidence_rate(kAllPairs[i], s, tau);
    }
    return q;
  };
}

RateSource analytic_classical_limit_source(const EraserSettings& base) {
  return [base](Angle alpha, Angle beta) {
    const EraserSettings s = chsh_settings(base, alpha, beta);
    RateQuad q;
    for (std::size_t i = 0; i < kAllPairs.size(); ++i) {
      q.rate[i] = coincidence_rate_classical_limit(kAllPairs[i], s);
    }
    return q;
  };
}

RateSource intensity_product_source(const EraserSettings& base,
                                    const PhaseDistribution& dist) {
  return [base, dist](Angle alpha, Angle beta) {
    const EraserSettings s = chsh_settings(base, alpha, beta);
    RateQuad q;
    for (std::size_t i = 0; i < kAllPairs.size(); ++i) {
      q.rate[i] = classical_intensity_product(kAllPairs[i], s, dist);
    }
    return q;
  };
}

std::vector<FringeRow> sweep_fringe(const EraserSettings& base,
                                    const std::vector<double>& zeta_grid_rad,
                                    double tau,
                                    const PhaseDistribution& dist) {
  std::vector<FringeRow> rows;
  rows.reserve(zeta_grid_rad.size());
  for (double zeta : zeta_grid_rad) {
    EraserSettings s = base;
    s.zeta = Angle::from_radians(zeta);
    s.eta = Angle::from_radians(0.5 * std::numbers::pi - zeta);
    FringeRow row;
    row.zeta_rad = zeta;
    row.r14 = coincidence_rate(PairId::r14, s, tau);
    row.r13 = coincidence_rate(PairId::r13, s, tau);
    row.i1i4 = classical_intensity_product(PairId::r14, s, dist);
    row.i1i3 = classical_intensity_product(PairId::r13, s, dist);
    rows.push_back(row);
  }
  return rows;
}

std::vector<DecoherenceRow> sweep_decoherence(
    const EraserSettings& s, const std::vector<double>& delta_tau_grid) {
  if (!(s.xi == s.theta)) {
    throw std::invalid_argument(
        "sweep_decoherence: xi and theta must coincide");
  }
  // Shared long-delay plateau of both rates when xi == theta.
  const double plateau = coincidence_rate_classical_limit(PairId::r14, s);

  std::vector<DecoherenceRow> rows;
  rows.reserve(delta_tau_grid.size());
  for (double dt : delta_tau_grid) {
    const double tau = dt / s.delta;
    DecoherenceRow row;
    row.delta_tau = dt;
    row.r14 = coincidence_rate(PairId::r14, s, tau);
    row.r13 = coincidence_rate(PairId::r13, s, tau);
    row.envelope_v = envelope(tau, s.delta);
    row.plateau = plateau;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace eraser
