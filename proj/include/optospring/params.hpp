#pragma once

#include <cmath>
#include <string>

#include "optospring/constants.hpp"
#include "optospring/errors.hpp"

// Physical parameters of the detuned cavity, the movable mirror, and the
// input light, plus every quantity derived from them. All angular rates use
// the amplitude half-width convention, kappa = (t_in^2 + t_out^2) c / (4 L).

namespace optospring {

struct CavityParams {
  double wavelength = 0.0;         // lambda [m]
  double cavity_length = 0.0;      // L [m]
  double mirror_mass = 0.0;        // m [kg], effective mass of the end mirror
  double total_decay = 0.0;        // kappa [rad/s]
  double input_coupling = 0.0;     // kappa_in [rad/s]
  double detuning = 0.0;           // Delta [rad/s], positive = blue-detuned
  double intracavity_power = 0.0;  // P [W]
  double mode_matching = 1.0;      // eta in [0,1]
  double rin_amplitude = 1.0;      // eps1, relative shot-noise level, 1 = vacuum
  double rin_phase = 1.0;          // eps2, relative shot-noise level, 1 = vacuum
};

struct DerivedQuantities {
  double omega0 = 0.0;             // carrier angular frequency, 2 pi c / lambda
  double k0 = 0.0;                 // carrier wavenumber, omega0 / c
  double cavity_amplitude = 0.0;   // A = sqrt(2 P / (hbar omega0)) [sqrt(1/s)]
  double iota = 0.0;               // iota = 4 P k0 / (m L) [1/s^3]
  double kappa_out = 0.0;          // kappa - kappa_in [rad/s]
  double t_in = 0.0;               // input mirror amplitude transmissivity
  double t_out = 0.0;              // output mirror amplitude transmissivity
  double r_in = 0.0;               // sqrt(1 - t_in^2), near 1 at high finesse
  double r_out = 0.0;              // sqrt(1 - t_out^2)
  double alpha = 0.0;              // intracavity-to-reflected carrier phase [rad]
  double beta = 0.0;               // input-to-intracavity carrier phase [rad]
  double gamma = 0.0;              // input-to-reflected phase; alpha + beta mod 2 pi
};

// Returns params unchanged if every invariant holds, else throws
// ValidationError naming the first violated invariant. detuning = 0 is valid
// for storage; operations that use the optical spring reject it separately.
inline const CavityParams& validate(const CavityParams& p) {
  if (!(p.wavelength > 0.0))
    throw ValidationError("NonPositiveWavelength", "wavelength must be > 0 m");
  if (!(p.cavity_length > 0.0))
    throw ValidationError("NonPositiveLength", "cavity length must be > 0 m");
  if (!(p.mirror_mass > 0.0))
    throw ValidationError("NonPositiveMass", "mirror mass must be > 0 kg");
  if (!(p.total_decay > 0.0))
    throw ValidationError("NonPositiveDecay", "total decay rate must be > 0 rad/s");
  if (!(p.input_coupling > 0.0))
    throw ValidationError("NonPositiveCoupling", "input coupling must be > 0 rad/s");
  if (!(p.input_coupling < p.total_decay))
    throw ValidationError("OvercoupledExceedsTotal",
                          "input coupling must be < total decay (kappa_out > 0)");
  if (!(p.detuning >= 0.0))
    throw ValidationError("NonPositiveDetuning",
                          "negative detuning (red-detuned branch) is outside the "
                          "validated scope; zero is allowed for storage");
  if (!(p.intracavity_power > 0.0))
    throw ValidationError("NonPositivePower", "intracavity power must be > 0 W");
  if (!(p.mode_matching >= 0.0 && p.mode_matching <= 1.0))
    throw ValidationError("ModeMatchingOutOfRange", "mode matching must be in [0,1]");
  if (!(p.rin_amplitude >= 0.0))
    throw ValidationError("NegativeRinAmplitude", "rin_amplitude must be >= 0");
  if (!(p.rin_phase >= 0.0))
    throw ValidationError("NegativeRinPhase", "rin_phase must be >= 0");
  return p;
}

// True when detuning > 0, i.e. the optical-spring formulas (which divide by
// Delta) are usable.
inline bool spring_available(const CavityParams& p) { return p.detuning > 0.0; }

inline void require_spring(const CavityParams& p) {
  if (!spring_available(p))
    throw ValidationError("NonPositiveDetuning",
                          "operation requires detuning > 0 (optical spring)");
}

// Carrier phase angles. alpha and beta come from the reflected and
// intracavity carrier phasors; gamma is computed from its own closed form and
// agrees with alpha + beta modulo 2 pi on the atan2 branch (-pi, pi].
inline double phase_alpha(double kappa, double kappa_in, double delta) {
  const double den = 2.0 * kappa_in - kappa;
  // Doubly degenerate point: impedance matched on resonance. The reflected
  // carrier vanishes and the angle is a pure convention, fixed here to pi/2.
  if (delta == 0.0 && den == 0.0) return 0.5 * pi;
  return std::atan2(-delta, den);
}

inline double phase_beta(double kappa, double delta) {
  return std::atan2(-delta, kappa);
}

inline double phase_gamma(double kappa, double kappa_in, double delta) {
  const double num = -2.0 * kappa_in * delta;
  const double den = 2.0 * kappa * kappa_in - kappa * kappa - delta * delta;
  if (delta == 0.0 && den == 0.0) return 0.5 * pi;
  return std::atan2(num, den);
}

// Populates every derived quantity. Pure; identical inputs give bit-identical
// outputs.
inline DerivedQuantities derive(const CavityParams& p) {
  validate(p);
  DerivedQuantities d;
  d.omega0 = two_pi * speed_of_light / p.wavelength;
  d.k0 = d.omega0 / speed_of_light;
  d.cavity_amplitude = std::sqrt(2.0 * p.intracavity_power / (hbar * d.omega0));
  d.iota = 4.0 * p.intracavity_power * d.k0 / (p.mirror_mass * p.cavity_length);
  d.kappa_out = p.total_decay - p.input_coupling;
  d.t_in = std::sqrt(4.0 * p.cavity_length * p.input_coupling / speed_of_light);
  d.t_out = std::sqrt(4.0 * p.cavity_length * d.kappa_out / speed_of_light);
  d.r_in = std::sqrt(1.0 - d.t_in * d.t_in);
  d.r_out = std::sqrt(1.0 - d.t_out * d.t_out);
  d.alpha = phase_alpha(p.total_decay, p.input_coupling, p.detuning);
  d.beta = phase_beta(p.total_decay, p.detuning);
  d.gamma = phase_gamma(p.total_decay, p.input_coupling, p.detuning);
  return d;
}

// kappa = pi c / (2 L F). The finesse F relates round-trip loss to linewidth;
// with the half-width convention above this is consistent with
// t_in^2 + t_out^2 = 2 pi / F.
inline double finesse_to_kappa(double finesse, double cavity_length) {
  if (!(finesse > 0.0))
    throw ValidationError("NonPositiveFinesse", "finesse must be > 0");
  if (!(cavity_length > 0.0))
    throw ValidationError("NonPositiveLength", "cavity length must be > 0 m");
  return pi * speed_of_light / (2.0 * cavity_length * finesse);
}

inline double kappa_to_finesse(double kappa, double cavity_length) {
  if (!(kappa > 0.0))
    throw ValidationError("NonPositiveDecay", "kappa must be > 0 rad/s");
  if (!(cavity_length > 0.0))
    throw ValidationError("NonPositiveLength", "cavity length must be > 0 m");
  return pi * speed_of_light / (2.0 * cavity_length * kappa);
}

// Intracavity power resonantly enhanced from the input power,
// P = c kappa_in P_in / (L (kappa^2 + Delta^2)).
inline double intracavity_power(double input_power, const CavityParams& p) {
  if (!(input_power > 0.0))
    throw ValidationError("NonPositivePower", "input power must be > 0 W");
  const double lor = p.total_decay * p.total_decay + p.detuning * p.detuning;
  return speed_of_light * p.input_coupling * input_power / (p.cavity_length * lor);
}

// Inverse of intracavity_power: the input power that sustains P.
inline double input_power_for(double intracavity, const CavityParams& p) {
  if (!(intracavity > 0.0))
    throw ValidationError("NonPositivePower", "intracavity power must be > 0 W");
  const double lor = p.total_decay * p.total_decay + p.detuning * p.detuning;
  return intracavity * p.cavity_length * lor / (speed_of_light * p.input_coupling);
}

}  // namespace optospring
