#pragma once

#include <cmath>
#include <complex>

#include "optospring/constants.hpp"
#include "optospring/errors.hpp"
#include "optospring/params.hpp"
#include "optospring/port.hpp"

// Exact frequency-domain engine for the two-photon (quadrature) description
// of the detuned cavity: cavity gain matrix G, radiation-pressure closed loop
// H, quadrature rotations, and the full signal/noise transfer coefficients
// for amplitude readout at reflection or transmission. No small omega/kappa
// expansion is made; the only modeling limit taken is the consistent
// first-order input-output convention r_in = r_out = 1 in the fluctuation
// relations (mirror transmissivities stay exact as t^2 = 4 L kappa / c).
//
// Quadrature ordering is (amplitude, phase). Spectra are single-sided with
// unit vacuum quadrature density.

namespace optospring::twophoton {

using complexd = std::complex<double>;

struct TwoPhotonMatrix {
  complexd m11, m12, m21, m22;

  friend TwoPhotonMatrix operator*(const TwoPhotonMatrix& a, const TwoPhotonMatrix& b) {
    return {a.m11 * b.m11 + a.m12 * b.m21, a.m11 * b.m12 + a.m12 * b.m22,
            a.m21 * b.m11 + a.m22 * b.m21, a.m21 * b.m12 + a.m22 * b.m22};
  }
  friend TwoPhotonMatrix operator*(const complexd& s, const TwoPhotonMatrix& a) {
    return {s * a.m11, s * a.m12, s * a.m21, s * a.m22};
  }
  friend TwoPhotonMatrix operator-(const TwoPhotonMatrix& a, const TwoPhotonMatrix& b) {
    return {a.m11 - b.m11, a.m12 - b.m12, a.m21 - b.m21, a.m22 - b.m22};
  }
  complexd det() const { return m11 * m22 - m12 * m21; }
  TwoPhotonMatrix inverse() const {
    const complexd d = det();
    return {m22 / d, -m12 / d, -m21 / d, m11 / d};
  }
  static TwoPhotonMatrix identity() { return {1.0, 0.0, 0.0, 1.0}; }
};

using optospring::Port;

// Rotation of the quadrature pair by theta.
inline TwoPhotonMatrix rotation(double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  return {c, -s, s, c};
}

// Cavity amplification matrix,
// G(omega) = [c/(2L)] [(kappa - i omega)^2 + Delta^2]^-1
//            [[kappa - i omega, -Delta], [Delta, kappa - i omega]].
inline TwoPhotonMatrix cavity_gain_raw(double kappa, double delta, double length,
                                       double omega) {
  const complexd K{kappa, -omega};
  const complexd pre = speed_of_light / (2.0 * length) / (K * K + delta * delta);
  return {pre * K, -pre * delta, pre * delta, pre * K};
}

inline TwoPhotonMatrix cavity_gain(const CavityParams& p, double omega) {
  validate(p);
  return cavity_gain_raw(p.total_decay, p.detuning, p.cavity_length, omega);
}

// Loop denominator M(omega) = omega^2 [(omega + i kappa)^2 - Delta^2] + Delta iota.
// Its real zero near omega_opt is the undamped optical-spring resonance.
inline complexd loop_denominator_raw(double kappa, double delta, double iota,
                                     double omega) {
  const complexd wik{omega, kappa};
  return omega * omega * (wik * wik - delta * delta) + delta * iota;
}

inline complexd loop_denominator(const CavityParams& p, double omega) {
  validate(p);
  return loop_denominator_raw(p.total_decay, p.detuning, derive(p).iota, omega);
}

inline constexpr double default_pole_floor = 1e-12;

namespace detail {
// Raises when |M| falls below floor * |omega^2 (kappa^2 + Delta^2)|, the
// magnitude M takes when the optomechanical coupling is switched off at low
// omega; the undamped model must not silently emit Inf at the spring pole.
inline void check_pole(const complexd& M, double kappa, double delta, double omega,
                       double floor) {
  const double scale = omega * omega * (kappa * kappa + delta * delta);
  if (std::abs(M) < floor * scale)
    throw PoleAtOpticalSpring("loop denominator below pole floor at omega = " +
                              std::to_string(omega) + " rad/s");
}
}  // namespace detail

// Closed-loop response of the cavity field to its inputs with the radiation
// pressure feedback resolved,
// H(omega) = -(c omega^2)/(2 L M) [[kappa - i omega, -Delta],
//                                  [Delta - iota/omega^2, kappa - i omega]].
inline TwoPhotonMatrix closed_loop_raw(double kappa, double delta, double iota,
                                       double length, double omega,
                                       double pole_floor = default_pole_floor) {
  if (omega == 0.0) throw ZeroFrequency("closed loop undefined at omega = 0");
  const complexd M = loop_denominator_raw(kappa, delta, iota, omega);
  detail::check_pole(M, kappa, delta, omega, pole_floor);
  const complexd K{kappa, -omega};
  const complexd pre = -(speed_of_light * omega * omega) / (2.0 * length * M);
  return {pre * K, -pre * delta, pre * (delta - iota / (omega * omega)), pre * K};
}

inline TwoPhotonMatrix closed_loop(const CavityParams& p, double omega,
                                   double pole_floor = default_pole_floor) {
  validate(p);
  return closed_loop_raw(p.total_decay, p.detuning, derive(p).iota, p.cavity_length,
                         omega, pole_floor);
}

// Same response built literally from first principles as H = G (I - A)^-1
// with loop gain A = [[0,0],[-kappa0,0]] G, kappa0 = -8 chi_m P k0 / c and
// mechanical susceptibility chi_m = -1/(m omega^2). Kept as an independent
// code path so the closed form above can be cross-checked.
inline TwoPhotonMatrix closed_loop_first_principles(
    const CavityParams& p, double omega, double pole_floor = default_pole_floor) {
  validate(p);
  if (omega == 0.0) throw ZeroFrequency("closed loop undefined at omega = 0");
  const DerivedQuantities d = derive(p);
  detail::check_pole(loop_denominator_raw(p.total_decay, p.detuning, d.iota, omega),
                     p.total_decay, p.detuning, omega, pole_floor);
  const TwoPhotonMatrix G = cavity_gain_raw(p.total_decay, p.detuning,
                                            p.cavity_length, omega);
  const double chi_m = -1.0 / (p.mirror_mass * omega * omega);
  const double kappa0 =
      -8.0 * chi_m * p.intracavity_power * d.k0 / speed_of_light;
  const TwoPhotonMatrix loop{0.0, 0.0, -kappa0 * G.m11, -kappa0 * G.m12};
  return G * (TwoPhotonMatrix::identity() - loop).inverse();
}

// Output coupling matrices for one readout port, at the raw cavity-optics
// level (no mechanical susceptibility or carrier amplitude applied).
//
// Reflection:   c = R_alpha (t_in^2 H - I) R_beta b + t_in t_out R_alpha H d
// Transmission: e = t_in t_out H R_beta b + (t_out^2 H - I) d
//
// The input b carries the carrier rotation R_beta and the reflection output
// the rotation R_alpha; the vacuum d and the transmitted output carry none.
// signal_factor is the H element the force signal reaches the amplitude
// quadrature through; the full force transfer is
// chi = 2 chi_m A k0 t_port signal_factor.
struct RawOutputCouplings {
  TwoPhotonMatrix from_b;
  TwoPhotonMatrix from_d;
  complexd signal_factor;
};

inline RawOutputCouplings raw_output_couplings(
    double kappa, double kappa_in, double delta, double iota, double length,
    double omega, Port port, double pole_floor = default_pole_floor) {
  const double kappa_out = kappa - kappa_in;
  const double tin2 = 4.0 * length * kappa_in / speed_of_light;
  const double tout2 = 4.0 * length * kappa_out / speed_of_light;
  const double tin_tout = std::sqrt(tin2 * tout2);
  const TwoPhotonMatrix H = closed_loop_raw(kappa, delta, iota, length, omega,
                                            pole_floor);
  const TwoPhotonMatrix I = TwoPhotonMatrix::identity();
  RawOutputCouplings oc;
  if (port == Port::Reflection) {
    const TwoPhotonMatrix Ra = rotation(phase_alpha(kappa, kappa_in, delta));
    const TwoPhotonMatrix Rb = rotation(phase_beta(kappa, delta));
    const TwoPhotonMatrix RaH = Ra * H;
    oc.from_b = Ra * (complexd(tin2) * H - I) * Rb;
    oc.from_d = complexd(tin_tout) * RaH;
    oc.signal_factor = RaH.m12;
  } else {
    const TwoPhotonMatrix Rb = rotation(phase_beta(kappa, delta));
    oc.from_b = complexd(tin_tout) * (H * Rb);
    oc.from_d = complexd(tout2) * H - I;
    oc.signal_factor = H.m12;
  }
  return oc;
}

// Force-referred transfer coefficients: the output amplitude quadrature is
// chi_signal (dF + xi_b1 b1 + xi_b2 b2 + xi_d1 d1 + xi_d2 d2).
struct TransferCoefficients {
  complexd chi_signal;  // force to output quadrature [quadrature/N]
  complexd xi_b1, xi_b2, xi_d1, xi_d2;  // input-referred noise coefficients [N]
  Port port = Port::Reflection;
  double omega = 0.0;  // [rad/s]
};

inline TransferCoefficients transfer_coefficients(
    const CavityParams& p, double omega, Port port,
    double pole_floor = default_pole_floor) {
  validate(p);
  require_spring(p);
  if (omega == 0.0) throw ZeroFrequency("transfer undefined at omega = 0");
  const DerivedQuantities d = derive(p);
  const RawOutputCouplings oc =
      raw_output_couplings(p.total_decay, p.input_coupling, p.detuning, d.iota,
                           p.cavity_length, omega, port, pole_floor);
  const double chi_m = -1.0 / (p.mirror_mass * omega * omega);
  const double t_port = (port == Port::Reflection) ? d.t_in : d.t_out;
  TransferCoefficients tc;
  tc.chi_signal = 2.0 * chi_m * d.cavity_amplitude * d.k0 * t_port *
                  oc.signal_factor;
  tc.xi_b1 = oc.from_b.m11 / tc.chi_signal;
  tc.xi_b2 = oc.from_b.m12 / tc.chi_signal;
  tc.xi_d1 = oc.from_d.m11 / tc.chi_signal;
  tc.xi_d2 = oc.from_d.m12 / tc.chi_signal;
  tc.port = port;
  tc.omega = omega;
  return tc;
}

// Standard quantum limit force density for a free mass, 2 hbar m omega^2.
inline double sql_force(double mass, double omega) {
  return 2.0 * hbar * mass * omega * omega;
}

// Force noise spectrum at one frequency: per-input contributions in N^2/Hz
// and normalized by the SQL. total = eps1 b1 + eps2 b2 + d1 + d2.
struct ForceNoisePoint {
  double b1 = 0, b2 = 0, d1 = 0, d2 = 0, total = 0;  // [N^2/Hz]
  double b1_norm = 0, b2_norm = 0, d1_norm = 0, d2_norm = 0, total_norm = 0;
  double sql = 0;  // [N^2/Hz]
};

inline ForceNoisePoint force_noise_spectrum_exact(
    const CavityParams& p, double omega, Port port,
    double pole_floor = default_pole_floor) {
  const TransferCoefficients tc = transfer_coefficients(p, omega, port, pole_floor);
  ForceNoisePoint s;
  s.b1 = std::norm(tc.xi_b1);
  s.b2 = std::norm(tc.xi_b2);
  s.d1 = std::norm(tc.xi_d1);
  s.d2 = std::norm(tc.xi_d2);
  s.total = p.rin_amplitude * s.b1 + p.rin_phase * s.b2 + s.d1 + s.d2;
  s.sql = sql_force(p.mirror_mass, omega);
  s.b1_norm = s.b1 / s.sql;
  s.b2_norm = s.b2 / s.sql;
  s.d1_norm = s.d1 / s.sql;
  s.d2_norm = s.d2 / s.sql;
  s.total_norm = s.total / s.sql;
  return s;
}

}  // namespace optospring::twophoton
