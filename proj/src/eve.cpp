#include "kljn/eve.hpp"

#include "kljn/errors.hpp"

#include <cmath>

namespace kljn {

EveKnowledge EveKnowledge::from_quad(const ResistorQuad& quad) {
    quad.validate();
    return {quad.r_p_hl(), quad.r_p_lh(), quad.r_s_hl(), quad.r_s_lh()};
}

EveGuess nearest_hypothesis(double rho_measured, double rho_hl, double rho_lh,
                            const SeedSpec& tie_seed) {
    EveGuess g;
    g.rho_measured = rho_measured;
    g.rho_hl = rho_hl;
    g.rho_lh = rho_lh;
    const double d_hl = std::abs(rho_measured - rho_hl);
    const double d_lh = std::abs(rho_measured - rho_lh);
    if (d_hl < d_lh) {
        g.guess = BitState::HL;
    } else if (d_lh < d_hl) {
        g.guess = BitState::LH;
    } else {
        g.tie = true;
        g.guess = GaussianStream(tie_seed).next_bit() ? BitState::HL : BitState::LH;
    }
    return g;
}

namespace {

struct Correlations {
    double cross = 0.0;      // <response * attacker>
    double attacker2 = 0.0;  // <attacker^2>
};

Correlations correlate(const std::vector<double>& response, const std::vector<double>& attacker) {
    if (attacker.empty() || attacker.size() != response.size()) {
        throw UsageError("trace has no attacker series of matching length");
    }
    Correlations c;
    for (std::size_t k = 0; k < attacker.size(); ++k) {
        c.cross += response[k] * attacker[k];
        c.attacker2 += attacker[k] * attacker[k];
    }
    const auto n = static_cast<double>(attacker.size());
    c.cross /= n;
    c.attacker2 /= n;
    return c;
}

}  // namespace

EveGuess current_injection_guess(const BepTrace& trace, const EveKnowledge& knowledge,
                                 const SeedSpec& tie_seed) {
    if (trace.attack != AttackKind::CurrentInjection) {
        throw UsageError("current-injection estimator needs a current-injection trace");
    }
    const Correlations c = correlate(trace.u_wire, trace.attacker_series);
    return nearest_hypothesis(c.cross, c.attacker2 * knowledge.r_p_hl,
                              c.attacker2 * knowledge.r_p_lh, tie_seed);
}

EveGuess voltage_insertion_guess(const BepTrace& trace, const EveKnowledge& knowledge,
                                 const SeedSpec& tie_seed) {
    if (trace.attack != AttackKind::VoltageInsertion) {
        throw UsageError("voltage-insertion estimator needs a voltage-insertion trace");
    }
    const Correlations c = correlate(trace.i_wire, trace.attacker_series);
    return nearest_hypothesis(c.cross, c.attacker2 / knowledge.r_s_hl,
                              c.attacker2 / knowledge.r_s_lh, tie_seed);
}

EveGuess eve_guess(const BepTrace& trace, const EveKnowledge& knowledge,
                   const SeedSpec& tie_seed) {
    switch (trace.attack) {
        case AttackKind::CurrentInjection:
            return current_injection_guess(trace, knowledge, tie_seed);
        case AttackKind::VoltageInsertion:
            return voltage_insertion_guess(trace, knowledge, tie_seed);
        case AttackKind::None: break;
    }
    throw UsageError("no attack in trace; Eve has nothing to correlate");
}

}  // namespace kljn
