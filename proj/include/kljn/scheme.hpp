#pragma once

// =============================================================================
// Scheme configuration: resistor quads, the VMG noise-level solve and the
// fourth-resistor constructions that equalise one pair of resultants.
// =============================================================================

#include <array>
#include <string_view>

namespace kljn {

inline constexpr double kDefaultULaRms = 1.0;        // V
inline constexpr double kDefaultBandwidth = 1000.0;  // Hz

/// Relative tolerance below which two resultants count as equal.
inline constexpr double kResultantEqualityTol = 1e-9;

/// Resistances of the four switchable resistors, in ohms.
/// H: high, L: low; A: Alice, B: Bob.
struct ResistorQuad {
    double r_ha = 0.0;
    double r_la = 0.0;
    double r_hb = 0.0;
    double r_lb = 0.0;

    /// Throws InvalidQuadError unless all four are positive and finite and
    /// r_ha > r_la, r_hb > r_lb.
    void validate() const;

    [[nodiscard]] double r_p_hl() const;  // r_ha || r_lb
    [[nodiscard]] double r_p_lh() const;  // r_la || r_hb
    [[nodiscard]] double r_s_hl() const;  // r_ha + r_lb
    [[nodiscard]] double r_s_lh() const;  // r_la + r_hb

    friend bool operator==(const ResistorQuad&, const ResistorQuad&) = default;
};

/// Mean-square source voltages (V^2) and the matching noise temperatures (K).
struct NoiseLevels {
    double u2_ha = 0.0;
    double u2_la = 0.0;
    double u2_hb = 0.0;
    double u2_lb = 0.0;
    double t_ha = 0.0;
    double t_la = 0.0;
    double t_hb = 0.0;
    double t_lb = 0.0;
    double bandwidth = kDefaultBandwidth;
    double u_la_rms = kDefaultULaRms;
};

/// Analytic wire statistics of the two secure states.
struct NominalWireStats {
    double u2_wire_hl = 0.0, u2_wire_lh = 0.0;  // V^2
    double i2_wire_hl = 0.0, i2_wire_lh = 0.0;  // A^2
    double p_hl = 0.0, p_lh = 0.0;              // W, positive = Alice -> Bob
    double r_p_hl = 0.0, r_p_lh = 0.0;
    double r_s_hl = 0.0, r_s_lh = 0.0;

    /// True when voltage, current and power agree between HL and LH to
    /// relative `tol`.
    [[nodiscard]] bool secure_states_match(double tol = 1e-9) const;
};

/// Relative residuals of the three equalities a VMG-consistent level set
/// satisfies: wire voltage, wire current, power flow.
struct ConstraintResiduals {
    double voltage = 0.0;
    double current = 0.0;
    double power = 0.0;

    [[nodiscard]] double max() const;
};

enum class SchemeKind { IdealKLJN, GenericVMG, FCK2, FCK3 };

[[nodiscard]] std::string_view to_string(SchemeKind kind);

/// Solves the mean-square levels of HA, HB and LB given u2_la = u_la_rms^2,
/// such that HL and LH are indistinguishable to a passive observer (equal
/// wire msv, current msv and power flow). Temperatures follow via
/// temp_from_msv.
///
/// Throws InvalidQuadError for an invalid quad, DomainError for a
/// non-positive anchor or bandwidth, ConfigurationError if the linear system
/// is singular and UnphysicalSolutionError if any solved level is <= 0.
[[nodiscard]] NoiseLevels solve_vmg_levels(const ResistorQuad& quad,
                                           double u_la_rms = kDefaultULaRms,
                                           double bandwidth = kDefaultBandwidth);

/// Levels for an arbitrary set of mean-square voltages (temperatures are
/// derived). Used for hand-built or deliberately inconsistent scenarios.
[[nodiscard]] NoiseLevels levels_from_msv(const ResistorQuad& quad,
                                          std::array<double, 4> u2_ha_la_hb_lb,
                                          double bandwidth = kDefaultBandwidth);

/// R_HB making r_ha || r_lb == r_la || r_hb.
[[nodiscard]] double fck2_fourth_resistor(double r_ha, double r_la, double r_lb);

/// R_LB making r_ha + r_lb == r_la + r_hb.
[[nodiscard]] double fck3_fourth_resistor(double r_ha, double r_la, double r_hb);

[[nodiscard]] SchemeKind classify_scheme(const ResistorQuad& quad);

[[nodiscard]] NominalWireStats nominal_wire_stats(const ResistorQuad& quad,
                                                  const NoiseLevels& levels);

[[nodiscard]] ConstraintResiduals constraint_residuals(const ResistorQuad& quad,
                                                       const NoiseLevels& levels);

/// Relative difference |a-b| / max(|a|,|b|), 0 when both are 0.
[[nodiscard]] double relative_gap(double a, double b);

}  // namespace kljn
