#pragma once

#include <random>

#include "optospring/params.hpp"

// Shared helpers for the test suites.

namespace testsupport {

inline optospring::CavityParams fig2_params() {
  optospring::CavityParams p;
  p.wavelength = 1.064e-6;
  p.cavity_length = 0.1;
  p.mirror_mass = 1.0e-5;
  p.total_decay = optospring::two_pi * 0.25e6;
  p.input_coupling = 0.8 * p.total_decay;
  p.detuning = p.total_decay / std::sqrt(3.0);
  p.intracavity_power = 1.0;
  return p;
}

// Random valid parameter set spanning wide but physical ranges; the detuning
// stays positive so the optical spring exists.
inline optospring::CavityParams random_params(std::mt19937_64& rng) {
  auto log_uniform = [&rng](double lo, double hi) {
    std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
    return std::exp(u(rng));
  };
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  optospring::CavityParams p;
  p.wavelength = log_uniform(5.0e-7, 2.0e-6);
  p.cavity_length = log_uniform(0.01, 1.0);
  p.mirror_mass = log_uniform(1.0e-7, 1.0e-3);
  p.total_decay = optospring::two_pi * log_uniform(1.0e4, 1.0e7);
  p.input_coupling = (0.05 + 0.9 * unit(rng)) * p.total_decay;
  p.detuning = (0.1 + 2.9 * unit(rng)) * p.total_decay;
  p.intracavity_power = log_uniform(1.0e-3, 10.0);
  p.mode_matching = unit(rng);
  return p;
}

}  // namespace testsupport
