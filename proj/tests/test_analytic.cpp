#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <vector>

#include "optospring/analytic.hpp"
#include "optospring/twophoton.hpp"

#include "support.hpp"

using namespace optospring;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using testsupport::fig2_params;
using testsupport::random_params;

namespace {

// Zero of the signed mode-mismatch transfer, bracketed above the optical
// spring pole.
double transfer_zero(const CavityParams& p) {
  double lo = analytic::omega_opt(p) * (1.0 + 1e-7);
  double hi = analytic::omega_dip(p) * 1.5;
  double flo = analytic::mode_mismatch_transfer(p, lo);
  REQUIRE(flo < 0.0);
  REQUIRE(analytic::mode_mismatch_transfer(p, hi) > 0.0);
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = analytic::mode_mismatch_transfer(p, mid);
    if ((flo < 0.0) == (fm < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("characteristic frequencies of the demonstration cavity") {
  const CavityParams p = fig2_params();
  CHECK_THAT(analytic::omega_opt(p) / two_pi,
             WithinRel(406.12490896740559, 1e-12));
  CHECK_THAT(analytic::omega_opt(p) / two_pi, WithinRel(406.1, 1e-3));
  CHECK_THAT(analytic::omega_dip(p) / two_pi,
             WithinRel(563.19391674043311, 1e-12));
  CHECK_THAT(analytic::omega_dip(p) / two_pi, WithinRel(563.2, 1e-4));
  CHECK_THAT(analytic::omega_dip(p) / analytic::omega_opt(p),
             WithinRel(1.3867504905630728, 1e-12));
  CHECK_THAT(analytic::omega_dip(p) / analytic::omega_opt(p),
             WithinRel(1.3868, 1e-4));

  CavityParams q = p;
  q.mode_matching = 0.92;
  CHECK_THAT(analytic::omega_dip_measured(q) / two_pi,
             WithinRel(543.48419907906191, 1e-12));

  const auto f = analytic::characteristic_frequencies(q);
  CHECK(f.omega_opt == analytic::omega_opt(q));
  CHECK(f.omega_dip == analytic::omega_dip(q));
  CHECK(f.omega_dip_measured == analytic::omega_dip_measured(q));
  CHECK_THAT(f.ratio_opt_over_dip_measured,
             WithinRel(0.74726166769077618, 1e-12));
}

TEST_CASE("frequency scalings and limits") {
  const CavityParams p = fig2_params();

  SECTION("quadrupling the power doubles the spring frequency") {
    CavityParams q = p;
    q.intracavity_power *= 4.0;
    CHECK_THAT(analytic::omega_opt(q), WithinRel(2.0 * analytic::omega_opt(p), 1e-12));
  }

  SECTION("zero detuning refuses the spring frequencies") {
    CavityParams q = p;
    q.detuning = 0.0;
    REQUIRE_THROWS_AS(analytic::omega_opt(q), ValidationError);
    REQUIRE_THROWS_AS(analytic::omega_dip(q), ValidationError);
    REQUIRE_THROWS_AS(analytic::omega_dip_measured(q), ValidationError);
  }

  SECTION("critical coupling puts the dip at sqrt(iota/Delta)") {
    CavityParams q = p;
    q.input_coupling = 0.5 * q.total_decay;
    const double iota = derive(q).iota;
    CHECK_THAT(analytic::omega_dip(q),
               WithinRel(std::sqrt(iota / q.detuning), 1e-12));
  }

  SECTION("mode matching endpoints reduce to the named frequencies") {
    CavityParams q = p;
    q.mode_matching = 1.0;
    CHECK_THAT(analytic::omega_dip_measured(q),
               WithinRel(analytic::omega_dip(q), 1e-13));
    q.mode_matching = 0.0;
    CHECK_THAT(analytic::omega_dip_measured(q),
               WithinRel(analytic::omega_opt(q), 1e-13));
  }

  SECTION("ordering and monotonicity in the mode matching") {
    std::mt19937_64 rng(424242);
    for (int i = 0; i < 20; ++i) {
      CavityParams q = random_params(rng);
      const double opt = analytic::omega_opt(q);
      const double dip = analytic::omega_dip(q);
      CHECK(dip >= opt);
      double prev = 0.0;
      for (int k = 0; k <= 10; ++k) {
        q.mode_matching = k / 10.0;
        const double dm = analytic::omega_dip_measured(q);
        CHECK(dm >= opt * (1.0 - 1e-12));
        CHECK(dm <= dip * (1.0 + 1e-12));
        CHECK(dm >= prev);
        prev = dm;
      }
    }
  }
}

TEST_CASE("closed-form spectra against the exact engine") {
  const CavityParams p = fig2_params();
  const double omega_dip = analytic::omega_dip(p);

  SECTION("reflection b1 away from the dip, inside the slow-frequency domain") {
    double worst = 0.0;
    for (int i = 0; i < 300; ++i) {
      const double f = 10.0 * std::pow(250.0, i / 299.0);  // 10 Hz - 2.5 kHz
      const double omega = two_pi * f;
      if (std::abs(omega - omega_dip) < 0.02 * omega_dip) continue;
      const auto exact =
          twophoton::force_noise_spectrum_exact(p, omega, Port::Reflection);
      const double closed = analytic::spectrum_ref_b1(p, omega);
      worst = std::max(worst,
                       std::abs(closed - exact.b1_norm) / exact.b1_norm);
    }
    CHECK(worst < 1e-3);
  }

  SECTION("reflection b1 near the dip, absolute agreement") {
    for (double rel : {-0.01, -0.004, 0.004, 0.01}) {
      const double omega = omega_dip * (1.0 + rel);
      const auto exact =
          twophoton::force_noise_spectrum_exact(p, omega, Port::Reflection);
      CHECK_THAT(analytic::spectrum_ref_b1(p, omega),
                 WithinAbs(exact.b1_norm, 1e-2));
    }
  }

  SECTION("the reflection b1 discrepancy shrinks quadratically in omega/kappa") {
    auto gap = [&](double f) {
      const double omega = two_pi * f;
      const auto exact =
          twophoton::force_noise_spectrum_exact(p, omega, Port::Reflection);
      return std::abs(analytic::spectrum_ref_b1(p, omega) - exact.b1_norm) /
             exact.b1_norm;
    };
    const double ratio = gap(2000.0) / gap(1000.0);
    CHECK(ratio > 3.0);
    CHECK(ratio < 5.5);
  }

  SECTION("transmission b1 across the full band") {
    double worst = 0.0;
    for (int i = 0; i < 300; ++i) {
      const double f = 10.0 * std::pow(500.0, i / 299.0);  // 10 Hz - 5 kHz
      const double omega = two_pi * f;
      const auto exact =
          twophoton::force_noise_spectrum_exact(p, omega, Port::Transmission);
      worst = std::max(worst, std::abs(analytic::spectrum_tra_b1(p, omega) -
                                       exact.b1_norm) /
                                  exact.b1_norm);
    }
    CHECK(worst < 1e-3);
  }

  SECTION("b2 matches both ports") {
    for (double f : {20.0, 200.0, 2000.0}) {
      const double omega = two_pi * f;
      const auto ref =
          twophoton::force_noise_spectrum_exact(p, omega, Port::Reflection);
      const auto tra =
          twophoton::force_noise_spectrum_exact(p, omega, Port::Transmission);
      const double closed = analytic::spectrum_b2(p, omega);
      CHECK_THAT(closed, WithinRel(ref.b2_norm, 1e-3));
      CHECK_THAT(closed, WithinRel(tra.b2_norm, 1e-3));
    }
  }

  SECTION("d matches the summed exact d-port spectra") {
    double worst = 0.0;
    for (int i = 0; i < 300; ++i) {
      const double f = 10.0 * std::pow(250.0, i / 299.0);
      const double omega = two_pi * f;
      const auto exact =
          twophoton::force_noise_spectrum_exact(p, omega, Port::Reflection);
      worst = std::max(worst,
                       std::abs(analytic::spectrum_d(p, omega) -
                                (exact.d1_norm + exact.d2_norm)) /
                           (exact.d1_norm + exact.d2_norm));
    }
    CHECK(worst < 1e-3);
  }
}

TEST_CASE("closed-form spectrum structure") {
  const CavityParams p = fig2_params();

  SECTION("reflection b1 vanishes at the dip frequency") {
    CHECK(analytic::spectrum_ref_b1(p, analytic::omega_dip(p)) < 1e-20);
  }

  SECTION("reflection b1 grows quadratically far above the dip") {
    const double f0 = 4000.0;
    const double s1 = analytic::spectrum_ref_b1(p, two_pi * f0);
    const double s2 = analytic::spectrum_ref_b1(p, two_pi * 2.0 * f0);
    CHECK_THAT(s2 / s1, WithinRel(4.0, 0.1));
  }

  SECTION("transmission b1 is exactly quadratic, with no dip") {
    const double s1 = analytic::spectrum_tra_b1(p, two_pi * 100.0);
    const double s2 = analytic::spectrum_tra_b1(p, two_pi * 200.0);
    CHECK_THAT(s2 / s1, WithinRel(4.0, 1e-12));
    double prev = 0.0;
    for (double f = 50.0; f < 5000.0; f *= 1.3) {
      const double s = analytic::spectrum_tra_b1(p, two_pi * f);
      CHECK(s > prev);
      prev = s;
    }
  }

  SECTION("transmission b1 sits below reflection b1 at low frequency") {
    for (double f : {20.0, 50.0, 100.0}) {
      CHECK(analytic::spectrum_tra_b1(p, two_pi * f) <
            analytic::spectrum_ref_b1(p, two_pi * f));
    }
  }

  SECTION("b2 is exactly quartic and negligible on the band") {
    const double s1 = analytic::spectrum_b2(p, two_pi * 100.0);
    const double s2 = analytic::spectrum_b2(p, two_pi * 200.0);
    CHECK_THAT(s2 / s1, WithinRel(16.0, 1e-12));
    for (double f = 10.0; f <= 5000.0; f *= 1.5) {
      const double omega = two_pi * f;
      const double others = analytic::spectrum_ref_b1(p, omega) +
                            analytic::spectrum_d(p, omega);
      CHECK(analytic::spectrum_b2(p, omega) < 1e-3 * others);
    }
  }

  SECTION("the first d term vanishes at its numerator root") {
    const double kappa_out = p.total_decay - p.input_coupling;
    const double iota = derive(p).iota;
    const double k2d2 = p.total_decay * p.total_decay + p.detuning * p.detuning;
    const double omega_star = std::sqrt(
        p.detuning * iota /
        (k2d2 - 2.0 * p.total_decay * kappa_out));
    CHECK_THAT(analytic::spectrum_d(p, omega_star),
               WithinRel(kappa_out * omega_star * omega_star / iota, 1e-9));
  }

  SECTION("zero frequency and zero detuning are rejected") {
    REQUIRE_THROWS_AS(analytic::spectrum_ref_b1(p, 0.0), ZeroFrequency);
    CavityParams q = p;
    q.detuning = 0.0;
    REQUIRE_THROWS_AS(analytic::spectrum_ref_b1(q, two_pi * 100.0),
                      ValidationError);
  }
}

TEST_CASE("total spectrum") {
  const CavityParams p = fig2_params();

  SECTION("reflection dips below the quantum limit in a contiguous band") {
    bool started = false, ended = false;
    bool contains_dip = false;
    const double omega_dip = analytic::omega_dip(p);
    double min_total = 1e300;
    for (int i = 0; i < 2000; ++i) {
      const double omega = two_pi * (300.0 + (900.0 - 300.0) * i / 1999.0);
      const double total =
          analytic::total_spectrum(p, omega, Port::Reflection);
      min_total = std::min(min_total, total);
      const bool below = total < 1.0;
      if (below) {
        CHECK_FALSE(ended);  // a second sub-SQL band would have to restart
        started = true;
        if (std::abs(omega - omega_dip) < 0.005 * omega_dip)
          contains_dip = true;
      } else if (started) {
        ended = true;
      }
    }
    CHECK(started);
    CHECK(contains_dip);
    CHECK(min_total < 1.0);
  }

  SECTION("transmission wins at low frequency, reflection at the dip") {
    const double low = two_pi * 50.0;
    CHECK(analytic::total_spectrum(p, low, Port::Transmission) <
          analytic::total_spectrum(p, low, Port::Reflection));

    double best_omega = 0.0, best = 1e300;
    for (int i = 0; i < 2000; ++i) {
      const double omega = two_pi * (300.0 + (900.0 - 300.0) * i / 1999.0);
      const double total =
          analytic::total_spectrum(p, omega, Port::Reflection);
      if (total < best) {
        best = total;
        best_omega = omega;
      }
    }
    CHECK(best < analytic::total_spectrum(p, best_omega, Port::Transmission));
  }

  SECTION("rin weights scale the b-port contributions") {
    CavityParams q = p;
    q.rin_amplitude = 2.0;
    q.rin_phase = 3.0;
    const double omega = two_pi * 640.0;
    const double expect = 2.0 * analytic::spectrum_ref_b1(p, omega) +
                          3.0 * analytic::spectrum_b2(p, omega) +
                          analytic::spectrum_d(p, omega);
    CHECK_THAT(analytic::total_spectrum(q, omega, Port::Reflection),
               WithinRel(expect, 1e-14));
  }
}

TEST_CASE("frequency-noise conversion") {
  const CavityParams p = fig2_params();

  SECTION("zero spectral density and inverse-square scaling") {
    const double omega0 = derive(p).omega0;
    CHECK(analytic::epsilon2_from_frequency_noise(1e-3, omega0, 0.0,
                                                  two_pi * 100.0) == 0.0);
    const double e1 = analytic::epsilon2_from_frequency_noise(
        1e-3, omega0, 1e-6, two_pi * 100.0);
    const double e2 = analytic::epsilon2_from_frequency_noise(
        1e-3, omega0, 1e-6, two_pi * 200.0);
    CHECK_THAT(e1 / e2, WithinRel(4.0, 1e-12));
  }

  SECTION("the converted b2 noise is the usual frequency-noise expression") {
    const double s_freq = 2.5e-5;
    const double input_power = input_power_for(p.intracavity_power, p);
    const DerivedQuantities d = derive(p);
    for (double f : {30.0, 300.0, 3000.0}) {
      const double omega = two_pi * f;
      const double chi_m = -1.0 / (p.mirror_mass * omega * omega);
      const double eps2 = analytic::epsilon2_from_frequency_noise(
          input_power, d.omega0, s_freq, omega);
      const double sql = twophoton::sql_force(p.mirror_mass, omega);
      const double closed = chi_m * chi_m * eps2 *
                            analytic::spectrum_b2(p, omega) * sql;
      const double expect = p.cavity_length * p.cavity_length * s_freq /
                            (d.omega0 * d.omega0);
      CHECK_THAT(closed, WithinRel(expect, 1e-12));

      const auto exact =
          twophoton::force_noise_spectrum_exact(p, omega, Port::Reflection);
      const double via_engine = chi_m * chi_m * eps2 * exact.b2_norm * sql;
      CHECK_THAT(via_engine, WithinRel(expect, 1e-3));
    }
  }
}

TEST_CASE("mode-mismatch transfer") {
  CavityParams p = fig2_params();
  p.mode_matching = 0.92;

  SECTION("its zero is the measured dip frequency") {
    CHECK_THAT(transfer_zero(p), WithinRel(analytic::omega_dip_measured(p), 1e-9));
  }

  SECTION("perfect matching moves the zero to the bare dip") {
    CavityParams q = p;
    q.mode_matching = 1.0;
    CHECK_THAT(transfer_zero(q), WithinRel(analytic::omega_dip(q), 1e-9));
  }

  SECTION("no matching leaves a frequency-independent transfer") {
    CavityParams q = p;
    q.mode_matching = 0.0;
    for (double f : {50.0, 500.0, 5000.0})
      CHECK(analytic::mode_mismatch_transfer(q, two_pi * f) == 1.0);
  }

  SECTION("the optical spring pole is flagged") {
    REQUIRE_THROWS_AS(
        analytic::mode_mismatch_transfer(p, analytic::omega_opt(p)),
        PoleAtOpticalSpring);
  }

  SECTION("random parameter sets keep the zero at the closed formula") {
    std::mt19937_64 rng(1701);
    std::uniform_real_distribution<double> eta(0.3, 0.99);
    for (int i = 0; i < 20; ++i) {
      CavityParams q = random_params(rng);
      q.mode_matching = eta(rng);
      CHECK_THAT(transfer_zero(q),
                 WithinRel(analytic::omega_dip_measured(q), 1e-9));

      CavityParams r = q;
      r.mode_matching = 1.0;
      CHECK_THAT(analytic::omega_dip_measured(r),
                 WithinRel(analytic::omega_dip(r), 1e-12));
      r.mode_matching = 0.0;
      CHECK_THAT(analytic::omega_dip_measured(r),
                 WithinRel(analytic::omega_opt(r), 1e-12));
    }
  }
}

TEST_CASE("approximation domain predicate") {
  const CavityParams p = fig2_params();
  CHECK(analytic::approximation_domain_ok(p, two_pi * 1000.0));
  CHECK_FALSE(analytic::approximation_domain_ok(p, 0.2 * p.total_decay));

  CavityParams q = p;
  q.intracavity_power = 5000.0;
  CHECK_FALSE(analytic::approximation_domain_ok(q, two_pi * 1000.0));
}
