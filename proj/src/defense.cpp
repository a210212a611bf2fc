#include "kljn/defense.hpp"

#include "kljn/errors.hpp"

#include <algorithm>
#include <cmath>

namespace kljn {

MonitorVerdict monitor_bep(const BepTrace& trace, double epsilon_current,
                           double epsilon_voltage) {
    if (!(epsilon_current >= 0.0) || !(epsilon_voltage >= 0.0)) {
        throw DomainError("monitor thresholds must be non-negative");
    }
    MonitorVerdict v;
    double ss_i = 0.0, ss_u = 0.0;
    const std::size_t n = trace.size();
    for (std::size_t k = 0; k < n; ++k) {
        const double ri = trace.i_alice_end[k] - trace.i_bob_end[k];
        const double ru = trace.u_alice_end[k] - trace.u_bob_end[k];
        v.max_current_residual = std::max(v.max_current_residual, std::abs(ri));
        v.max_voltage_residual = std::max(v.max_voltage_residual, std::abs(ru));
        ss_i += ri * ri;
        ss_u += ru * ru;
    }
    if (n > 0) {
        v.rms_current_residual = std::sqrt(ss_i / static_cast<double>(n));
        v.rms_voltage_residual = std::sqrt(ss_u / static_cast<double>(n));
    }
    v.attack_detected = v.max_current_residual > epsilon_current ||
                        v.max_voltage_residual > epsilon_voltage;
    return v;
}

MonitorThresholds relative_thresholds(const NominalWireStats& nominal, double epsilon_rel) {
    if (!(epsilon_rel >= 0.0)) throw DomainError("relative threshold must be non-negative");
    return {epsilon_rel * std::sqrt(std::max(nominal.i2_wire_hl, nominal.i2_wire_lh)),
            epsilon_rel * std::sqrt(std::max(nominal.u2_wire_hl, nominal.u2_wire_lh))};
}

}  // namespace kljn
