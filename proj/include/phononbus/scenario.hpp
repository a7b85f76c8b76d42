#pragma once

#include <string>

#include "phononbus/material.hpp"
#include "phononbus/support.hpp"

namespace phononbus {

enum class WaveConfig { StandingWave, TravellingWave };

// One fully-specified operating point: material + support + run parameters.
// Immutable after load; shared freely across scan workers.
struct Scenario {
    Material material;
    SupportSpec support;
    std::size_t n_dots = 1;
    double epsilon = 0.1;        // error budget per sideband operation, (0,1)
    WaveConfig wave_config = WaveConfig::StandingWave;
    double cos_theta = 1.0;      // laser / modal-displacement alignment, [0,1]
    double k2_magnitude = 0.0;   // sideband-arm wavenumber, 1/m
};

// JSON schema (all numbers accept {"value": x, "unit": "..."} wrappers):
//   material: preset name or inline record (missing fields filled from CdTe)
//   support:  {kind, L_m | derive_from_N, lambda_kg_per_m,
//              tension_N | stiffness_m4_per_s2, l_m}
//   scenario: {N, epsilon, wave_config, cos_theta, k2_per_m}
Scenario load_scenario(const std::string& path);
Scenario scenario_from_json_text(const std::string& text);
std::string scenario_to_json_text(const Scenario& s);
void save_scenario(const Scenario& s, const std::string& path);

// Dotted-path override, e.g. "scenario.N=100" or "material.gamma_rec=1e3".
// Only documented keys are accepted; throws ConfigError otherwise.
void apply_override(Scenario& s, const std::string& key_eq_value);

void validate_scenario(const Scenario& s);

}  // namespace phononbus
