#pragma once

#include <cmath>
#include <fstream>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"

#include "optospring/constants.hpp"
#include "optospring/errors.hpp"
#include "optospring/params.hpp"

// Flat JSON configuration ingestion for CavityParams, plus the two built-in
// parameter presets. The document is a single object; unknown keys are
// rejected so typos cannot silently fall back to defaults.

namespace optospring::config {

inline const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys{
      "wavelength_m",      "length_m",       "mass_kg",
      "kappa_hz",          "finesse",        "kappa_in_over_kappa",
      "detuning_over_kappa", "intracavity_power_w", "input_power_w",
      "mode_matching",     "rin_amplitude",  "rin_phase"};
  return keys;
}

namespace detail {
inline double number_at(const nlohmann::json& j, const std::string& key) {
  const auto& v = j.at(key);
  if (!v.is_number())
    throw ConfigError("key '" + key + "' must be a number");
  return v.get<double>();
}
}  // namespace detail

// Builds validated CavityParams from a flat JSON object. kappa comes from
// exactly one of kappa_hz (kappa / 2 pi) or finesse; the circulating power
// from exactly one of intracavity_power_w or input_power_w. mode_matching,
// rin_amplitude, and rin_phase are optional with defaults 1.
inline CavityParams from_json(const nlohmann::json& j) {
  if (!j.is_object())
    throw ConfigError("configuration must be a JSON object");
  for (const auto& item : j.items())
    if (known_keys().count(item.key()) == 0)
      throw ConfigError("unknown key '" + item.key() + "'");
  for (const char* key : {"wavelength_m", "length_m", "mass_kg",
                          "kappa_in_over_kappa", "detuning_over_kappa"})
    if (!j.contains(key))
      throw ConfigError(std::string("missing key '") + key + "'");

  const bool has_kappa = j.contains("kappa_hz");
  const bool has_finesse = j.contains("finesse");
  if (has_kappa == has_finesse)
    throw ConfigError("provide exactly one of 'kappa_hz' or 'finesse'");
  const bool has_circ = j.contains("intracavity_power_w");
  const bool has_input = j.contains("input_power_w");
  if (has_circ == has_input)
    throw ConfigError(
        "provide exactly one of 'intracavity_power_w' or 'input_power_w'");

  CavityParams p;
  p.wavelength = detail::number_at(j, "wavelength_m");
  p.cavity_length = detail::number_at(j, "length_m");
  p.mirror_mass = detail::number_at(j, "mass_kg");
  if (has_kappa) {
    p.total_decay = two_pi * detail::number_at(j, "kappa_hz");
  } else {
    const double finesse = detail::number_at(j, "finesse");
    if (!(finesse > 0.0)) throw ConfigError("'finesse' must be > 0");
    if (!(p.cavity_length > 0.0))
      throw ConfigError("'length_m' must be > 0 to convert finesse");
    p.total_decay = finesse_to_kappa(finesse, p.cavity_length);
  }
  p.input_coupling = detail::number_at(j, "kappa_in_over_kappa") * p.total_decay;
  p.detuning = detail::number_at(j, "detuning_over_kappa") * p.total_decay;
  if (j.contains("mode_matching"))
    p.mode_matching = detail::number_at(j, "mode_matching");
  if (j.contains("rin_amplitude"))
    p.rin_amplitude = detail::number_at(j, "rin_amplitude");
  if (j.contains("rin_phase"))
    p.rin_phase = detail::number_at(j, "rin_phase");

  if (has_circ) {
    p.intracavity_power = detail::number_at(j, "intracavity_power_w");
  } else {
    const double input = detail::number_at(j, "input_power_w");
    if (!(input > 0.0)) throw ConfigError("'input_power_w' must be > 0");
    p.intracavity_power = 1.0;  // placeholder until the conversion below
    validate(p);
    p.intracavity_power = intracavity_power(input, p);
  }
  validate(p);
  return p;
}

inline CavityParams from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config file '" + path + "' is not valid JSON: " +
                      e.what());
  }
  return from_json(j);
}

// Canonical serialization; always writes kappa_hz and intracavity_power_w.
inline nlohmann::json to_json(const CavityParams& p) {
  return nlohmann::json{
      {"wavelength_m", p.wavelength},
      {"length_m", p.cavity_length},
      {"mass_kg", p.mirror_mass},
      {"kappa_hz", p.total_decay / two_pi},
      {"kappa_in_over_kappa", p.input_coupling / p.total_decay},
      {"detuning_over_kappa", p.detuning / p.total_decay},
      {"intracavity_power_w", p.intracavity_power},
      {"mode_matching", p.mode_matching},
      {"rin_amplitude", p.rin_amplitude},
      {"rin_phase", p.rin_phase}};
}

inline std::vector<std::string> preset_names() { return {"fig2", "experiment"}; }

// Built-in parameter sets.
//   fig2: the canonical demonstration cavity (1064 nm, L = 0.1 m, m = 10 mg,
//         kappa/2pi = 0.25 MHz, kappa_in = 0.8 kappa, Delta = kappa/sqrt(3),
//         P = 1 W, perfect mode matching).
//   experiment: the tabletop milligram-mirror setup (1064 nm, L = 0.11 m,
//         m = 8 mg, finesse 3.0e3, kappa_in = 0.81 kappa, P_in = 4.7 mW,
//         eta = 0.92), detuned to Delta = kappa/sqrt(3).
inline CavityParams preset(const std::string& name) {
  if (name == "fig2") {
    CavityParams p;
    p.wavelength = 1.064e-6;
    p.cavity_length = 0.1;
    p.mirror_mass = 1.0e-5;
    p.total_decay = two_pi * 0.25e6;
    p.input_coupling = 0.8 * p.total_decay;
    p.detuning = p.total_decay / std::sqrt(3.0);
    p.intracavity_power = 1.0;
    return validate(p);
  }
  if (name == "experiment") {
    CavityParams p;
    p.wavelength = 1.064e-6;
    p.cavity_length = 0.11;
    p.mirror_mass = 8.0e-6;
    p.total_decay = finesse_to_kappa(3.0e3, p.cavity_length);
    p.input_coupling = 0.81 * p.total_decay;
    p.detuning = p.total_decay / std::sqrt(3.0);
    p.mode_matching = 0.92;
    p.intracavity_power = 1.0;
    validate(p);
    p.intracavity_power = intracavity_power(4.7e-3, p);
    return validate(p);
  }
  throw ConfigError("unknown preset '" + name + "' (available: fig2, experiment)");
}

}  // namespace optospring::config
