#include "kljn/wire_sim.hpp"

#include "kljn/circuit.hpp"
#include "kljn/errors.hpp"

#include <cmath>
#include <string>

namespace kljn {

std::string_view to_string(BitState state) {
    switch (state) {
        case BitState::HL: return "HL";
        case BitState::LH: return "LH";
        case BitState::HH: return "HH";
        case BitState::LL: return "LL";
    }
    return "?";
}

std::string_view to_string(AttackKind kind) {
    switch (kind) {
        case AttackKind::None: return "none";
        case AttackKind::CurrentInjection: return "current_injection";
        case AttackKind::VoltageInsertion: return "voltage_insertion";
    }
    return "?";
}

AttackKind parse_attack_kind(std::string_view text) {
    if (text == "none") return AttackKind::None;
    if (text == "current_injection") return AttackKind::CurrentInjection;
    if (text == "voltage_insertion") return AttackKind::VoltageInsertion;
    throw ConfigurationError("unknown attack kind '" + std::string(text) +
                             "' (expected current_injection, voltage_insertion or none)");
}

std::pair<double, double> connected_resistors(const ResistorQuad& q, BitState state) {
    switch (state) {
        case BitState::HL: return {q.r_ha, q.r_lb};
        case BitState::LH: return {q.r_la, q.r_hb};
        case BitState::HH: return {q.r_ha, q.r_hb};
        case BitState::LL: return {q.r_la, q.r_lb};
    }
    return {q.r_ha, q.r_lb};
}

std::pair<double, double> connected_levels(const NoiseLevels& lv, BitState state) {
    switch (state) {
        case BitState::HL: return {lv.u2_ha, lv.u2_lb};
        case BitState::LH: return {lv.u2_la, lv.u2_hb};
        case BitState::HH: return {lv.u2_ha, lv.u2_hb};
        case BitState::LL: return {lv.u2_la, lv.u2_lb};
    }
    return {lv.u2_ha, lv.u2_lb};
}

std::pair<std::string_view, std::string_view> connected_labels(BitState state) {
    switch (state) {
        case BitState::HL: return {"HA", "LB"};
        case BitState::LH: return {"LA", "HB"};
        case BitState::HH: return {"HA", "HB"};
        case BitState::LL: return {"LA", "LB"};
    }
    return {"HA", "LB"};
}

double attacker_rms(const ResistorQuad& quad, const NoiseLevels& levels,
                    const AttackSpec& attack) {
    if (!std::isfinite(attack.injection_factor) || attack.injection_factor < 0.0) {
        throw DomainError("injection factor must be non-negative");
    }
    if (attack.kind == AttackKind::None) return 0.0;
    const NominalWireStats nominal = nominal_wire_stats(quad, levels);
    if (!nominal.secure_states_match()) {
        throw ConfigurationError(
            "HL and LH wire statistics differ; the nominal wire amplitude is undefined");
    }
    const double wire_rms = attack.kind == AttackKind::CurrentInjection
                                ? std::sqrt(nominal.i2_wire_hl)
                                : std::sqrt(nominal.u2_wire_hl);
    return attack.injection_factor * wire_rms;
}

BepTrace assemble_trace(const ResistorQuad& quad, BitState state,
                        std::span<const double> alice_src, std::span<const double> bob_src,
                        AttackKind kind, std::span<const double> attacker, double dt) {
    const std::size_t n = alice_src.size();
    if (bob_src.size() != n) throw UsageError("party source series differ in length");
    if (kind == AttackKind::None ? !attacker.empty() : attacker.size() != n) {
        throw UsageError("attacker series does not match the attack kind / trace length");
    }
    const auto [r_alice, r_bob] = connected_resistors(quad, state);

    BepTrace tr;
    tr.state = state;
    tr.attack = kind;
    tr.dt = dt;
    tr.attacker_series.assign(attacker.begin(), attacker.end());
    for (auto* v : {&tr.u_wire, &tr.i_wire, &tr.i_alice_end, &tr.i_bob_end, &tr.u_alice_end,
                    &tr.u_bob_end}) {
        v->resize(n);
    }

    LoopSnapshot snap;
    snap.r_alice = r_alice;
    snap.r_bob = r_bob;
    for (std::size_t k = 0; k < n; ++k) {
        snap.u_alice_src = alice_src[k];
        snap.u_bob_src = bob_src[k];
        if (kind == AttackKind::CurrentInjection) snap.i_inj = attacker[k];
        if (kind == AttackKind::VoltageInsertion) snap.u_ins = attacker[k];
        const LoopSolution s = solve_loop(snap);
        tr.u_wire[k] = s.u_wire;
        tr.i_wire[k] = s.i_wire;
        tr.i_alice_end[k] = s.i_alice_end;
        tr.i_bob_end[k] = s.i_bob_end;
        tr.u_alice_end[k] = s.u_alice_end;
        tr.u_bob_end[k] = s.u_bob_end;
    }
    return tr;
}

BepTrace simulate_bep(const ResistorQuad& quad, const NoiseLevels& levels, BitState state,
                      std::size_t gamma, const AttackSpec& attack, const SeedFamily& seeds) {
    if (gamma == 0) throw DomainError("gamma must be a positive sample count");
    quad.validate();
    const double dt = nyquist_dt(levels.bandwidth);
    const double eve_rms = attacker_rms(quad, levels, attack);

    const auto [label_a, label_b] = connected_labels(state);
    const auto [u2_a, u2_b] = connected_levels(levels, state);
    std::vector<double> alice(gamma), bob(gamma), eve;
    fill_gaussian(seeds.stream(label_a), u2_a, alice);
    fill_gaussian(seeds.stream(label_b), u2_b, bob);
    if (attack.kind != AttackKind::None) {
        eve.resize(gamma);
        fill_gaussian(seeds.stream("EVE"), eve_rms * eve_rms, eve);
    }
    return assemble_trace(quad, state, alice, bob, attack.kind, eve, dt);
}

namespace {

struct MeanAndError {
    double mean = 0.0;
    double stderr_ = 0.0;
};

template <class F>
MeanAndError mean_of(std::size_t n, F&& term) {
    // Two-pass for a stable variance.
    double sum = 0.0;
    for (std::size_t k = 0; k < n; ++k) sum += term(k);
    const double mean = sum / static_cast<double>(n);
    if (n < 2) return {mean, 0.0};
    double ss = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double d = term(k) - mean;
        ss += d * d;
    }
    const double sd = std::sqrt(ss / static_cast<double>(n - 1));
    return {mean, sd / std::sqrt(static_cast<double>(n))};
}

}  // namespace

TraceStats trace_stats(const BepTrace& tr) {
    const std::size_t n = tr.size();
    if (n == 0) throw UsageError("empty trace");
    TraceStats st;
    const auto u2 = mean_of(n, [&](std::size_t k) { return tr.u_wire[k] * tr.u_wire[k]; });
    const auto i2 = mean_of(n, [&](std::size_t k) { return tr.i_wire[k] * tr.i_wire[k]; });
    const auto p = mean_of(n, [&](std::size_t k) { return tr.u_wire[k] * tr.i_wire[k]; });
    st.msv_u = u2.mean;
    st.msv_u_stderr = u2.stderr_;
    st.msv_i = i2.mean;
    st.msv_i_stderr = i2.stderr_;
    st.power = p.mean;
    st.power_stderr = p.stderr_;
    if (tr.attack == AttackKind::CurrentInjection) {
        st.xcorr_u_attacker =
            mean_of(n, [&](std::size_t k) { return tr.u_wire[k] * tr.attacker_series[k]; }).mean;
    } else if (tr.attack == AttackKind::VoltageInsertion) {
        st.xcorr_i_attacker =
            mean_of(n, [&](std::size_t k) { return tr.i_wire[k] * tr.attacker_series[k]; }).mean;
    }
    return st;
}

}  // namespace kljn
