#pragma once

// =============================================================================
// Circuit core: resultant resistances, Johnson-Nyquist conversions and the
// instantaneous solution of the single wire loop between Alice and Bob.
// =============================================================================
//
// Topology (ideal wire, zero impedance):
//
//     Alice                      wire node                      Bob
//   u_alice_src --[r_alice]--o-- (+u_ins-) --o--[r_bob]-- u_bob_src
//                            |   i_inj in    |
//                          ground          ground
//
// Sign conventions shared by every module:
//   * i_alice_end flows from Alice into the wire, i_bob_end from the wire into
//     Bob; i_wire is the loop current (Alice -> Bob).
//   * i_inj is pushed INTO the wire node, so by KCL
//     i_bob_end - i_alice_end = i_inj, and u_wire rises by i_inj * (r_A||r_B).
//   * u_ins raises the potential along the Alice -> Bob direction, so
//     u_bob_end - u_alice_end = u_ins and the loop current grows by
//     u_ins / (r_A + r_B).
//   In both cases the end-to-end mismatch seen by Alice and Bob is the
//   attacker series with a negative sign.

namespace kljn {

struct PhysicalConstants {
    static constexpr double boltzmann_k = 1.380649e-23;  // J/K
};

/// r_a*r_b/(r_a+r_b). Throws DomainError on non-positive or non-finite input.
[[nodiscard]] double parallel_resultant(double r_a, double r_b);

/// r_a + r_b. Same domain as parallel_resultant.
[[nodiscard]] double serial_resultant(double r_a, double r_b);

/// Mean-square open-circuit noise voltage 4kTRB of a resistor at noise
/// temperature `temp`.
[[nodiscard]] double johnson_msv(double temp, double r, double bandwidth);

/// Inverse of johnson_msv: the noise temperature yielding `msv`.
[[nodiscard]] double temp_from_msv(double msv, double r, double bandwidth);

/// One instant of the loop. At most one of i_inj / u_ins is nonzero.
struct LoopSnapshot {
    double u_alice_src = 0.0;  // V
    double u_bob_src = 0.0;    // V
    double r_alice = 0.0;      // ohm
    double r_bob = 0.0;        // ohm
    double i_inj = 0.0;        // A
    double u_ins = 0.0;        // V
};

struct LoopSolution {
    double u_wire = 0.0;       // wire voltage; Alice side of the source under insertion
    double i_wire = 0.0;       // loop current Alice->Bob (injection excluded)
    double i_alice_end = 0.0;  // current leaving Alice into the wire
    double i_bob_end = 0.0;    // current arriving at Bob from the wire
    double u_alice_end = 0.0;
    double u_bob_end = 0.0;
};

/// Kirchhoff solution of the loop for one snapshot.
///
/// With current injection the wire node voltage is
///   (u_A r_B + u_B r_A + i_inj r_A r_B) / (r_A + r_B)
/// i.e. the no-attack divider plus i_inj times the parallel resultant. With
/// series insertion the loop current is (u_A - u_B + u_ins)/(r_A + r_B), the
/// no-attack current plus u_ins over the serial resultant.
///
/// Throws DomainError for invalid resistances or if both attacker sources
/// are nonzero.
[[nodiscard]] LoopSolution solve_loop(const LoopSnapshot& snapshot);

}  // namespace kljn
