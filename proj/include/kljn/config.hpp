#pragma once

// Experiment configuration file (JSON):
//
//   {
//     "case_id": "B",                                  // optional, default "custom"
//     "resistors_ohms": {"r_ha": 1000, "r_la": 200, "r_hb": 220, "r_lb": 160},
//     "u_la_volts": 1.0,                               // optional
//     "bandwidth_hz": 1000,                            // optional
//     "attack": "current_injection",                   // | "voltage_insertion" | "none"
//     "injection_factors": [0.01, 0.1, 0.2],           // optional
//     "gammas": [100, 200, 500],                       // optional
//     "n_beps": 2000,                                  // optional
//     "repetitions": 10,                               // optional
//     "master_seed": 1,                                // optional
//     "defense": {"enabled": false, "epsilon_rel": 1e-6}  // optional
//   }

#include "kljn/experiment.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace kljn {

struct ExperimentConfig {
    std::string case_id = "custom";
    ResistorQuad quad;
    double u_la_rms = kDefaultULaRms;
    double bandwidth = kDefaultBandwidth;
    AttackKind attack = AttackKind::None;
    SweepSpec sweep;

    [[nodiscard]] CaseSpec case_spec() const;
};

/// Throws ConfigurationError on malformed JSON, missing resistors, wrong
/// types or unknown keys. Quad ordering (H > L) is not checked here; callers
/// validate the quad so that they can report it distinctly.
[[nodiscard]] ExperimentConfig parse_config(std::string_view json_text);

/// Throws IoError when the file cannot be read.
[[nodiscard]] ExperimentConfig load_config(const std::filesystem::path& path);

}  // namespace kljn
