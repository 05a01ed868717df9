#pragma once

#include <cmath>

#include "optospring/constants.hpp"
#include "optospring/errors.hpp"
#include "optospring/params.hpp"
#include "optospring/port.hpp"

// Closed-form results for the amplitude readout of the detuned cavity:
// SQL-normalized per-port force-noise spectra, optical-spring and dip
// frequencies, the mode-mismatch-shifted dip, and the frequency-noise
// conversion. All formulas drop terms of order (omega/kappa)^2 relative to
// the exact engine; approximation_domain_ok reports when that is safe.

namespace optospring::analytic {

// Closed forms assume kappa much larger than both omega and omega_opt.
// True when omega <= kappa/10 and omega_opt <= kappa/10.
inline bool approximation_domain_ok(const CavityParams& p, double omega);

// Optical-spring resonance, omega_opt = sqrt(Delta iota / (kappa^2 + Delta^2)).
inline double omega_opt(const CavityParams& p) {
  validate(p);
  require_spring(p);
  const double iota = derive(p).iota;
  const double k2d2 = p.total_decay * p.total_decay + p.detuning * p.detuning;
  return std::sqrt(p.detuning * iota / k2d2);
}

// Back-action cancellation dip (perfect mode matching),
// omega_dip = sqrt(Delta iota / ((kappa - 2 kappa_in)^2 + Delta^2)).
inline double omega_dip(const CavityParams& p) {
  validate(p);
  require_spring(p);
  const double iota = derive(p).iota;
  const double km2in = p.total_decay - 2.0 * p.input_coupling;
  return std::sqrt(p.detuning * iota / (km2in * km2in + p.detuning * p.detuning));
}

// Mode-mismatch-shifted dip as it appears in the measured reflected power,
// omega_dip_m = sqrt(Delta iota / (kappa^2 + Delta^2 - 4 kappa_in kappa_out eta)).
// Reduces to omega_dip at eta = 1 (via kappa^2 + Delta^2 - 4 kappa_in kappa_out
// = (kappa - 2 kappa_in)^2 + Delta^2) and to omega_opt at eta = 0.
inline double omega_dip_measured(const CavityParams& p) {
  validate(p);
  require_spring(p);
  const double iota = derive(p).iota;
  const double kappa_out = p.total_decay - p.input_coupling;
  const double den = p.total_decay * p.total_decay + p.detuning * p.detuning -
                     4.0 * p.input_coupling * kappa_out * p.mode_matching;
  return std::sqrt(p.detuning * iota / den);
}

struct CharacteristicFrequencies {
  double omega_opt = 0.0;                  // [rad/s]
  double omega_dip = 0.0;                  // [rad/s]
  double omega_dip_measured = 0.0;         // [rad/s]
  double ratio_opt_over_dip_measured = 0.0;
};

inline CharacteristicFrequencies characteristic_frequencies(const CavityParams& p) {
  CharacteristicFrequencies f;
  f.omega_opt = omega_opt(p);
  f.omega_dip = omega_dip(p);
  f.omega_dip_measured = omega_dip_measured(p);
  f.ratio_opt_over_dip_measured = f.omega_opt / f.omega_dip_measured;
  return f;
}

namespace detail {
inline void require_spectrum_domain(const CavityParams& p, double omega) {
  validate(p);
  require_spring(p);
  if (omega == 0.0) throw ZeroFrequency("spectrum undefined at omega = 0");
}
}  // namespace detail

// Input amplitude noise at reflection, SQL-normalized:
// S_ref_b1 = (kappa^2 + Delta^2)
//            {Delta iota - [(kappa - 2 kappa_in)^2 + Delta^2] omega^2}^2
//            / (16 iota kappa_in (kappa - kappa_in)^2 Delta^2 omega^2).
// Vanishes exactly at omega_dip.
inline double spectrum_ref_b1(const CavityParams& p, double omega) {
  detail::require_spectrum_domain(p, omega);
  const double iota = derive(p).iota;
  const double w2 = omega * omega;
  const double k2d2 = p.total_decay * p.total_decay + p.detuning * p.detuning;
  const double km2in = p.total_decay - 2.0 * p.input_coupling;
  const double kappa_out = p.total_decay - p.input_coupling;
  const double num = p.detuning * iota -
                     (km2in * km2in + p.detuning * p.detuning) * w2;
  return k2d2 * num * num /
         (16.0 * iota * p.input_coupling * kappa_out * kappa_out *
          p.detuning * p.detuning * w2);
}

// Input amplitude noise at transmission, SQL-normalized:
// S_tra_b1 = kappa_in (kappa^2 + Delta^2) omega^2 / (iota Delta^2).
inline double spectrum_tra_b1(const CavityParams& p, double omega) {
  detail::require_spectrum_domain(p, omega);
  const double iota = derive(p).iota;
  const double k2d2 = p.total_decay * p.total_decay + p.detuning * p.detuning;
  return p.input_coupling * k2d2 * omega * omega /
         (iota * p.detuning * p.detuning);
}

// Input phase noise, the same at both ports, SQL-normalized:
// S_b2 = kappa_in omega^4 / (iota (kappa^2 + Delta^2)).
inline double spectrum_b2(const CavityParams& p, double omega) {
  detail::require_spectrum_domain(p, omega);
  const double iota = derive(p).iota;
  const double k2d2 = p.total_decay * p.total_decay + p.detuning * p.detuning;
  return p.input_coupling * omega * omega * omega * omega / (iota * k2d2);
}

// Vacuum entering at the back mirror (both quadratures), the same at both
// ports, SQL-normalized:
// S_d = [Delta iota - (kappa^2 + Delta^2 - 2 kappa kappa_out) omega^2]^2
//       / (4 iota kappa_out Delta^2 omega^2) + kappa_out omega^2 / iota.
inline double spectrum_d(const CavityParams& p, double omega) {
  detail::require_spectrum_domain(p, omega);
  const double iota = derive(p).iota;
  const double w2 = omega * omega;
  const double k2d2 = p.total_decay * p.total_decay + p.detuning * p.detuning;
  const double kappa_out = p.total_decay - p.input_coupling;
  const double num = p.detuning * iota -
                     (k2d2 - 2.0 * p.total_decay * kappa_out) * w2;
  return num * num /
             (4.0 * iota * kappa_out * p.detuning * p.detuning * w2) +
         kappa_out * w2 / iota;
}

// Weighted total, eps1 S_b1 + eps2 S_b2 + S_d, for the chosen port.
inline double total_spectrum(const CavityParams& p, double omega, Port port) {
  const double b1 = (port == Port::Reflection) ? spectrum_ref_b1(p, omega)
                                               : spectrum_tra_b1(p, omega);
  return p.rin_amplitude * b1 + p.rin_phase * spectrum_b2(p, omega) +
         spectrum_d(p, omega);
}

inline bool approximation_domain_ok(const CavityParams& p, double omega) {
  validate(p);
  const double limit = p.total_decay / 10.0;
  if (omega > limit) return false;
  if (spring_available(p) && omega_opt(p) > limit) return false;
  return true;
}

// Relative shot-noise level of the input phase quadrature produced by laser
// frequency noise, eps2 = 2 P_in S_freq / (hbar omega0 omega^2). S_freq is the
// single-sided angular frequency noise power spectrum [rad^2/s^2/Hz].
inline double epsilon2_from_frequency_noise(double input_power, double omega0,
                                            double s_freq, double omega) {
  if (!(input_power > 0.0))
    throw ValidationError("NonPositivePower", "input power must be > 0 W");
  if (!(omega0 > 0.0))
    throw ValidationError("NonPositiveCarrier", "carrier frequency must be > 0");
  if (!(s_freq >= 0.0))
    throw ValidationError("NegativeNoise", "S_freq must be >= 0");
  if (omega == 0.0) throw ZeroFrequency("epsilon2 undefined at omega = 0");
  return 2.0 * input_power * s_freq / (hbar * omega0 * omega * omega);
}

// Normalized reflected-power fluctuation transfer with imperfect mode
// matching,
//   eta (Delta iota - [(kappa - 2 kappa_in)^2 + Delta^2] omega^2)
//       / (Delta iota - (kappa^2 + Delta^2) omega^2)  +  (1 - eta),
// whose zero in magnitude defines omega_dip_measured. Only the zero location
// carries physical meaning; the overall scale is arbitrary. The cavity term
// has a real pole at omega_opt, flagged like the engine's spring pole.
inline double mode_mismatch_transfer(const CavityParams& p, double omega,
                                     double pole_floor = 1e-12) {
  detail::require_spectrum_domain(p, omega);
  double value = 1.0 - p.mode_matching;
  if (p.mode_matching > 0.0) {
    const double iota = derive(p).iota;
    const double w2 = omega * omega;
    const double k2d2 = p.total_decay * p.total_decay + p.detuning * p.detuning;
    const double km2in = p.total_decay - 2.0 * p.input_coupling;
    const double num = p.detuning * iota -
                       (km2in * km2in + p.detuning * p.detuning) * w2;
    const double den = p.detuning * iota - k2d2 * w2;
    const double scale = std::max(p.detuning * iota, k2d2 * w2);
    if (std::abs(den) < pole_floor * scale)
      throw PoleAtOpticalSpring(
          "mode-mismatch transfer pole at the optical spring resonance");
    value += p.mode_matching * num / den;
  }
  return value;
}

}  // namespace optospring::analytic
