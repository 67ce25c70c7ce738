#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <utility>

// Jones-calculus primitives for the interferometer elements: half-wave plate,
// symmetric 50:50 beam splitter, polarizing beam splitter, AOM detuning
// phases, and polarizer projection.
//
// Conventions fixed across the codebase:
//  * Beam splitter: symmetric 50:50 with the factor i on reflection,
//      out1 = (in1 + i*in2)/sqrt(2),  out2 = (i*in1 + in2)/sqrt(2).
//  * Detunings are angular frequencies (rad/s), so a delay t maps directly to
//    the phase e^{+i*detuning*t} on h and e^{-i*detuning*t} on v, with no 2*pi
//    factor anywhere.
//  * The h component is locked to the up-shifted frequency tag (f0 + detuning)
//    and v to the down-shifted tag (f0 - detuning). Apart from the
//    preparation-only half-wave plate, no element moves amplitude between the
//    two components, so the polarization-frequency correlation survives the
//    whole chain.
//  * A polarizer axis is pi-periodic; Angle stores the canonical value in
//    [0, pi).

namespace eraser {

using ComplexAmp = std::complex<double>;

/// Two-component Jones vector on the (h, v) polarization basis. h rides the
/// up-shifted frequency tag, v the down-shifted one.
struct JonesAmplitude {
  ComplexAmp h{};
  ComplexAmp v{};

  double norm_sq() const { return std::norm(h) + std::norm(v); }
};

inline JonesAmplitude operator*(const ComplexAmp& c, const JonesAmplitude& s) {
  return {c * s.h, c * s.v};
}

inline JonesAmplitude operator+(const JonesAmplitude& a,
                                const JonesAmplitude& b) {
  return {a.h + b.h, a.v + b.v};
}

/// Polarizer/analyzer axis, canonicalized to [0, pi). Measured intensities are
/// pi-periodic in every axis, so the representative in [0, pi) is unique.
class Angle {
 public:
  Angle() = default;

  static Angle from_radians(double r) { return Angle(canonical(r)); }
  static Angle from_degrees(double d) {
    return from_radians(d * std::numbers::pi / 180.0);
  }

  double radians() const { return rad_; }
  double degrees() const { return rad_ * 180.0 / std::numbers::pi; }

  bool operator==(const Angle&) const = default;

 private:
  explicit Angle(double canonical_rad) : rad_(canonical_rad) {}

  static double canonical(double r) {
    double a = std::fmod(r, std::numbers::pi);
    if (a < 0.0) a += std::numbers::pi;
    if (a >= std::numbers::pi) a = 0.0;  // guards the fmod(-tiny) edge
    return a;
  }

  double rad_ = 0.0;
};

/// Half-wave plate at 22.5 degrees: (h, v) -> ((h + v), (h - v))/sqrt(2).
/// Used only to prepare the equal superposition from a pure-h input; it is
/// the one element allowed to mix the two frequency-tagged components.
inline JonesAmplitude hwp_diag(const JonesAmplitude& s) {
  const double inv_sqrt2 = std::numbers::sqrt2 / 2.0;
  return {inv_sqrt2 * (s.h + s.v), inv_sqrt2 * (s.h - s.v)};
}

/// Symmetric lossless 50:50 beam splitter, i on reflection. Acts on the two
/// spatial input ports componentwise; it never mixes h with v.
inline std::pair<JonesAmplitude, JonesAmplitude> bs_transform(
    const JonesAmplitude& in1, const JonesAmplitude& in2) {
  const double inv_sqrt2 = std::numbers::sqrt2 / 2.0;
  const ComplexAmp i{0.0, 1.0};
  JonesAmplitude out1{inv_sqrt2 * (in1.h + i * in2.h),
                      inv_sqrt2 * (in1.v + i * in2.v)};
  JonesAmplitude out2{inv_sqrt2 * (i * in1.h + in2.h),
                      inv_sqrt2 * (i * in1.v + in2.v)};
  return {out1, out2};
}

/// Polarizing beam splitter: routes h to the first output path and v to the
/// second, exactly. Summing the two paths reconstructs the input.
inline std::pair<JonesAmplitude, JonesAmplitude> pbs_split(
    const JonesAmplitude& s) {
  return {JonesAmplitude{s.h, {}}, JonesAmplitude{{}, s.v}};
}

/// AOM detuning phases: h advances by +detuning*t_plus, v by -detuning*t_minus
/// (angular-frequency convention). Moduli are preserved exactly.
inline JonesAmplitude apply_detuning_phase(const JonesAmplitude& s,
                                           double detuning, double t_plus,
                                           double t_minus) {
  return {s.h * std::polar(1.0, detuning * t_plus),
          s.v * std::polar(1.0, -detuning * t_minus)};
}

/// Scalar amplitude transmitted by a polarizer at the given axis:
/// cos(axis)*h + sin(axis)*v. The transmitted intensity is its squared
/// modulus and is invariant under a global phase on the state.
inline ComplexAmp polarizer_project(const JonesAmplitude& s, Angle axis) {
  return std::cos(axis.radians()) * s.h + std::sin(axis.radians()) * s.v;
}

}  // namespace eraser
