#include "kljn/circuit.hpp"

#include "kljn/errors.hpp"

#include <cmath>
#include <string>

namespace kljn {

namespace {

void require_resistance(double r, const char* what) {
    if (!std::isfinite(r) || r <= 0.0) {
        throw DomainError(std::string(what) + " must be positive and finite, got " +
                          std::to_string(r));
    }
}

void require_bandwidth(double bandwidth) {
    if (!std::isfinite(bandwidth) || bandwidth <= 0.0) {
        throw DomainError("bandwidth must be positive and finite");
    }
}

}  // namespace

double parallel_resultant(double r_a, double r_b) {
    require_resistance(r_a, "r_a");
    require_resistance(r_b, "r_b");
    return r_a * r_b / (r_a + r_b);
}

double serial_resultant(double r_a, double r_b) {
    require_resistance(r_a, "r_a");
    require_resistance(r_b, "r_b");
    return r_a + r_b;
}

double johnson_msv(double temp, double r, double bandwidth) {
    if (!std::isfinite(temp) || temp < 0.0) {
        throw DomainError("noise temperature must be non-negative");
    }
    require_resistance(r, "resistance");
    require_bandwidth(bandwidth);
    return 4.0 * PhysicalConstants::boltzmann_k * temp * r * bandwidth;
}

double temp_from_msv(double msv, double r, double bandwidth) {
    if (!std::isfinite(msv) || msv < 0.0) {
        throw DomainError("mean-square voltage must be non-negative");
    }
    require_resistance(r, "resistance");
    require_bandwidth(bandwidth);
    return msv / (4.0 * PhysicalConstants::boltzmann_k * r * bandwidth);
}

LoopSolution solve_loop(const LoopSnapshot& s) {
    require_resistance(s.r_alice, "r_alice");
    require_resistance(s.r_bob, "r_bob");
    if (s.i_inj != 0.0 && s.u_ins != 0.0) {
        throw DomainError("current injection and voltage insertion are mutually exclusive");
    }

    const double r_sum = s.r_alice + s.r_bob;
    LoopSolution out;
    if (s.u_ins == 0.0) {
        // Single node; KCL with the injected current entering it. The end
        // currents are the common loop current plus the injected share that
        // flows into each party.
        out.u_wire = (s.u_alice_src * s.r_bob + s.u_bob_src * s.r_alice +
                      s.i_inj * s.r_alice * s.r_bob) /
                     r_sum;
        out.i_wire = (s.u_alice_src - s.u_bob_src) / r_sum;
        out.i_alice_end = out.i_wire;
        out.i_bob_end = out.i_wire;
        if (s.i_inj != 0.0) {
            out.i_alice_end -= s.i_inj * s.r_bob / r_sum;
            out.i_bob_end += s.i_inj * s.r_alice / r_sum;
        }
        out.u_alice_end = out.u_wire;
        out.u_bob_end = out.u_wire;
    } else {
        out.i_wire = (s.u_alice_src - s.u_bob_src + s.u_ins) / r_sum;
        out.i_alice_end = out.i_wire;
        out.i_bob_end = out.i_wire;
        out.u_alice_end = s.u_alice_src - out.i_wire * s.r_alice;
        out.u_bob_end = s.u_bob_src + out.i_wire * s.r_bob;
        out.u_wire = out.u_alice_end;
    }
    return out;
}

}  // namespace kljn
