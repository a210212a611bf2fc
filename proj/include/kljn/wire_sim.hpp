#pragma once

// =============================================================================
// Wire simulation of one bit exchange period (BEP).
// =============================================================================

#include "kljn/noise.hpp"
#include "kljn/scheme.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace kljn {

/// Connection state; first letter is Alice's resistor, second Bob's.
enum class BitState { HL, LH, HH, LL };

enum class AttackKind { None, CurrentInjection, VoltageInsertion };

[[nodiscard]] std::string_view to_string(BitState state);
[[nodiscard]] std::string_view to_string(AttackKind kind);

/// Parses "current_injection" | "voltage_insertion" | "none".
[[nodiscard]] AttackKind parse_attack_kind(std::string_view text);

/// The attacker's source RMS is `injection_factor` times the nominal
/// secure-state wire RMS (current for injection, voltage for insertion).
/// The attacker's noise stream is SeedFamily::stream("EVE").
struct AttackSpec {
    AttackKind kind = AttackKind::None;
    double injection_factor = 0.0;
};

/// Seeds of every stream drawn within one BEP. Party sources use the label of
/// the connected resistor ("HA", "LA", "HB", "LB").
struct SeedFamily {
    std::uint64_t master_seed = 0;
    std::uint64_t bep_index = 0;
    std::uint64_t repetition_index = 0;

    [[nodiscard]] SeedSpec stream(std::string_view label) const {
        return {master_seed, std::string(label), bep_index, repetition_index};
    }
};

struct BepTrace {
    BitState state = BitState::HL;
    AttackKind attack = AttackKind::None;
    std::vector<double> u_wire;
    std::vector<double> i_wire;
    std::vector<double> i_alice_end;
    std::vector<double> i_bob_end;
    std::vector<double> u_alice_end;
    std::vector<double> u_bob_end;
    std::vector<double> attacker_series;  // A (injection), V (insertion), empty (none)
    double dt = 0.0;

    [[nodiscard]] std::size_t size() const { return u_wire.size(); }
};

/// Resistances each party connects in `state`: {r_alice, r_bob}.
[[nodiscard]] std::pair<double, double> connected_resistors(const ResistorQuad& quad,
                                                            BitState state);

/// Mean-square source levels each party drives in `state`: {alice, bob}.
[[nodiscard]] std::pair<double, double> connected_levels(const NoiseLevels& levels,
                                                         BitState state);

/// Resistor labels connected in `state`: {alice, bob}.
[[nodiscard]] std::pair<std::string_view, std::string_view> connected_labels(BitState state);

/// Attacker source RMS for `attack` on this scheme. Throws ConfigurationError
/// when the secure states' nominal wire statistics differ, since "the original
/// value in the wire" is then ambiguous.
[[nodiscard]] double attacker_rms(const ResistorQuad& quad, const NoiseLevels& levels,
                                  const AttackSpec& attack);

/// Solves the loop sample by sample for given source series. `attacker` must
/// be empty when kind == None and otherwise match the party series length.
[[nodiscard]] BepTrace assemble_trace(const ResistorQuad& quad, BitState state,
                                      std::span<const double> alice_src,
                                      std::span<const double> bob_src, AttackKind kind,
                                      std::span<const double> attacker, double dt);

/// Draws the party and attacker series for one BEP and solves the loop.
/// Sample spacing is the Nyquist interval 1/(2B) of the levels' bandwidth.
[[nodiscard]] BepTrace simulate_bep(const ResistorQuad& quad, const NoiseLevels& levels,
                                    BitState state, std::size_t gamma,
                                    const AttackSpec& attack, const SeedFamily& seeds);

struct TraceStats {
    double msv_u = 0.0;     // <u_wire^2>
    double msv_i = 0.0;     // <i_wire^2>
    double power = 0.0;     // <u_wire i_wire>, positive = Alice -> Bob
    double msv_u_stderr = 0.0;
    double msv_i_stderr = 0.0;
    double power_stderr = 0.0;
    std::optional<double> xcorr_u_attacker;  // <u_wire i_inj>, injection only
    std::optional<double> xcorr_i_attacker;  // <i_wire u_ins>, insertion only
};

/// Sample means over the trace; standard errors are the sample standard
/// deviation of the per-sample products over sqrt(n).
[[nodiscard]] TraceStats trace_stats(const BepTrace& trace);

}  // namespace kljn
