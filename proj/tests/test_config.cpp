#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "optospring/config.hpp"

#include "support.hpp"

using namespace optospring;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinRel;
using nlohmann::json;

namespace {
json base_config() {
  return json{{"wavelength_m", 1.064e-6},
              {"length_m", 0.1},
              {"mass_kg", 1.0e-5},
              {"kappa_hz", 0.25e6},
              {"kappa_in_over_kappa", 0.8},
              {"detuning_over_kappa", 1.0 / std::sqrt(3.0)},
              {"intracavity_power_w", 1.0}};
}
}  // namespace

TEST_CASE("config ingestion builds the expected parameters") {
  const CavityParams p = config::from_json(base_config());
  CHECK(p.wavelength == 1.064e-6);
  CHECK(p.cavity_length == 0.1);
  CHECK(p.mirror_mass == 1.0e-5);
  CHECK_THAT(p.total_decay, WithinRel(two_pi * 0.25e6, 1e-15));
  CHECK_THAT(p.input_coupling / p.total_decay, WithinRel(0.8, 1e-15));
  CHECK_THAT(p.detuning / p.total_decay, WithinRel(1.0 / std::sqrt(3.0), 1e-15));
  CHECK(p.intracavity_power == 1.0);
  CHECK(p.mode_matching == 1.0);
  CHECK(p.rin_amplitude == 1.0);
  CHECK(p.rin_phase == 1.0);
}

TEST_CASE("optional keys override the defaults") {
  json j = base_config();
  j["mode_matching"] = 0.92;
  j["rin_amplitude"] = 2.5;
  j["rin_phase"] = 0.0;
  const CavityParams p = config::from_json(j);
  CHECK(p.mode_matching == 0.92);
  CHECK(p.rin_amplitude == 2.5);
  CHECK(p.rin_phase == 0.0);
}

TEST_CASE("unknown keys are rejected") {
  json j = base_config();
  j["kappa_in_ovr_kappa"] = 0.8;
  REQUIRE_THROWS_MATCHES(config::from_json(j), ConfigError,
                         Catch::Matchers::MessageMatches(
                             ContainsSubstring("kappa_in_ovr_kappa")));
}

TEST_CASE("missing required keys are rejected") {
  json j = base_config();
  j.erase("mass_kg");
  REQUIRE_THROWS_MATCHES(
      config::from_json(j), ConfigError,
      Catch::Matchers::MessageMatches(ContainsSubstring("mass_kg")));
}

TEST_CASE("kappa_hz and finesse are mutually exclusive alternatives") {
  json j = base_config();
  j["finesse"] = 3000.0;
  REQUIRE_THROWS_AS(config::from_json(j), ConfigError);

  j = base_config();
  j.erase("kappa_hz");
  REQUIRE_THROWS_AS(config::from_json(j), ConfigError);

  j["finesse"] = 2997.9245800000003;
  const CavityParams p = config::from_json(j);
  CHECK_THAT(p.total_decay, WithinRel(two_pi * 0.25e6, 1e-12));
}

TEST_CASE("power keys are mutually exclusive alternatives") {
  json j = base_config();
  j["input_power_w"] = 1.0e-3;
  REQUIRE_THROWS_AS(config::from_json(j), ConfigError);

  j = base_config();
  j.erase("intracavity_power_w");
  REQUIRE_THROWS_AS(config::from_json(j), ConfigError);

  j["input_power_w"] = 0.00087326875914653412;
  const CavityParams p = config::from_json(j);
  CHECK_THAT(p.intracavity_power, WithinRel(1.0, 1e-12));
}

TEST_CASE("non-numeric values are rejected") {
  json j = base_config();
  j["mass_kg"] = "heavy";
  REQUIRE_THROWS_AS(config::from_json(j), ConfigError);
}

TEST_CASE("invalid parameter values surface as validation errors") {
  json j = base_config();
  j["mass_kg"] = -1.0;
  REQUIRE_THROWS_AS(config::from_json(j), ValidationError);
}

TEST_CASE("serialization round-trips") {
  CavityParams p = testsupport::fig2_params();
  p.mode_matching = 0.92;
  p.rin_phase = 0.25;
  const CavityParams q = config::from_json(config::to_json(p));
  CHECK_THAT(q.total_decay, WithinRel(p.total_decay, 1e-14));
  CHECK_THAT(q.input_coupling, WithinRel(p.input_coupling, 1e-14));
  CHECK_THAT(q.detuning, WithinRel(p.detuning, 1e-14));
  CHECK(q.intracavity_power == p.intracavity_power);
  CHECK(q.mode_matching == p.mode_matching);
  CHECK(q.rin_phase == p.rin_phase);
}

TEST_CASE("presets") {
  SECTION("fig2 is the demonstration cavity") {
    const CavityParams p = config::preset("fig2");
    const CavityParams e = testsupport::fig2_params();
    CHECK(p.wavelength == e.wavelength);
    CHECK(p.cavity_length == e.cavity_length);
    CHECK(p.mirror_mass == e.mirror_mass);
    CHECK(p.total_decay == e.total_decay);
    CHECK(p.input_coupling == e.input_coupling);
    CHECK(p.detuning == e.detuning);
    CHECK(p.intracavity_power == e.intracavity_power);
    CHECK(p.mode_matching == 1.0);
  }

  SECTION("experiment matches the tabletop setup") {
    const CavityParams p = config::preset("experiment");
    CHECK(p.cavity_length == 0.11);
    CHECK(p.mirror_mass == 8.0e-6);
    CHECK_THAT(kappa_to_finesse(p.total_decay, p.cavity_length),
               WithinRel(3000.0, 1e-12));
    CHECK_THAT(p.input_coupling / p.total_decay, WithinRel(0.81, 1e-12));
    CHECK(p.mode_matching == 0.92);
    CHECK_THAT(input_power_for(p.intracavity_power, p), WithinRel(4.7e-3, 1e-12));
  }

  SECTION("unknown names are rejected") {
    REQUIRE_THROWS_AS(config::preset("fig3"), ConfigError);
  }

  SECTION("the listing names both presets") {
    const auto names = config::preset_names();
    REQUIRE(names.size() == 2);
    CHECK(names[0] == "fig2");
    CHECK(names[1] == "experiment");
  }
}
