#pragma once

// Amplitude-comparison defense: Alice and Bob exchange their instantaneous end
// current and voltage over an authenticated channel and flag the BEP when the
// two ends disagree.

#include "kljn/wire_sim.hpp"

namespace kljn {

inline constexpr double kDefaultEpsilonRel = 1e-6;

struct MonitorVerdict {
    bool attack_detected = false;
    double max_current_residual = 0.0;  // A, max |i_alice_end - i_bob_end|
    double max_voltage_residual = 0.0;  // V, max |u_alice_end - u_bob_end|
    double rms_current_residual = 0.0;
    double rms_voltage_residual = 0.0;
};

/// Detected iff either max-abs residual strictly exceeds its epsilon.
/// Throws DomainError for a negative epsilon.
[[nodiscard]] MonitorVerdict monitor_bep(const BepTrace& trace, double epsilon_current,
                                         double epsilon_voltage);

struct MonitorThresholds {
    double epsilon_current = 0.0;
    double epsilon_voltage = 0.0;
};

/// Thresholds as `epsilon_rel` times the nominal secure-state wire RMS
/// current and voltage.
[[nodiscard]] MonitorThresholds relative_thresholds(const NominalWireStats& nominal,
                                                    double epsilon_rel = kDefaultEpsilonRel);

}  // namespace kljn
