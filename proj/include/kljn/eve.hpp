#pragma once

// =============================================================================
// Eve's active-attack estimators.
//
// Eve knows her own source series exactly and the public resultants of both
// secure states. She cross-correlates her source with the wire response and
// picks the hypothesis whose predicted correlation lies nearest:
//
//   current injection:  rho = <u_wire i_inj>,  predicted <i_inj^2> * R_p
//   voltage insertion:  rho = <i_wire u_ins>,  predicted <u_ins^2> / R_s
//
// For two hypotheses the nearest-value rule is the sign rule on the difference
// of predictions with a midpoint threshold.
// =============================================================================

#include "kljn/noise.hpp"
#include "kljn/scheme.hpp"
#include "kljn/wire_sim.hpp"

namespace kljn {

/// Public protocol parameters only; nothing says which party holds which
/// resistor.
struct EveKnowledge {
    double r_p_hl = 0.0;
    double r_p_lh = 0.0;
    double r_s_hl = 0.0;
    double r_s_lh = 0.0;

    [[nodiscard]] static EveKnowledge from_quad(const ResistorQuad& quad);
};

struct EveGuess {
    BitState guess = BitState::HL;
    double rho_measured = 0.0;
    double rho_hl = 0.0;  // predicted under HL
    double rho_lh = 0.0;  // predicted under LH
    bool tie = false;     // decided by a fair coin
};

/// Decision shared by both attacks. Exact ties (equal distances, e.g. equal
/// resultants or a silent attacker) are broken by one bit of `tie_seed`.
[[nodiscard]] EveGuess nearest_hypothesis(double rho_measured, double rho_hl, double rho_lh,
                                          const SeedSpec& tie_seed);

/// Throws UsageError unless the trace carries a current injection.
[[nodiscard]] EveGuess current_injection_guess(const BepTrace& trace,
                                               const EveKnowledge& knowledge,
                                               const SeedSpec& tie_seed);

/// Throws UsageError unless the trace carries a voltage insertion.
[[nodiscard]] EveGuess voltage_insertion_guess(const BepTrace& trace,
                                               const EveKnowledge& knowledge,
                                               const SeedSpec& tie_seed);

/// Dispatches on trace.attack.
[[nodiscard]] EveGuess eve_guess(const BepTrace& trace, const EveKnowledge& knowledge,
                                 const SeedSpec& tie_seed);

}  // namespace kljn
