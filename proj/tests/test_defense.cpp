#include <catch_amalgamated.hpp>

#include "kljn/defense.hpp"
#include "kljn/errors.hpp"
#include "kljn/experiment.hpp"

#include <cmath>

using namespace kljn;
using Catch::Approx;

namespace {
const ResistorQuad kCaseB{1000.0, 200.0, 220.0, 160.0};
const ResistorQuad kCaseE{2000.0, 500.0, 2500.0, 2200.0};
}  // namespace

TEST_CASE("clean traces have exactly zero residual", "[defense]") {
    const auto lv = solve_vmg_levels(kCaseB);
    for (BitState s : {BitState::HL, BitState::LH, BitState::HH, BitState::LL}) {
        const auto tr = simulate_bep(kCaseB, lv, s, 500, {}, {5, 1, 0});
        const auto v = monitor_bep(tr, 0.0, 0.0);
        CHECK_FALSE(v.attack_detected);
        CHECK(v.max_current_residual == 0.0);
        CHECK(v.max_voltage_residual == 0.0);
        CHECK(v.rms_current_residual == 0.0);
    }
}

TEST_CASE("residuals equal the attacker source", "[defense]") {
    const auto lv = solve_vmg_levels(kCaseE);
    const auto tr = simulate_bep(kCaseE, lv, BitState::HL, 500, {AttackKind::VoltageInsertion, 0.1}, {5, 2, 0});
    double mx = 0;
    for (double u : tr.attacker_series) mx = std::max(mx, std::abs(u));
    const auto v = monitor_bep(tr, 0.0, 0.0);
    CHECK(v.attack_detected);
    CHECK(v.max_voltage_residual == Approx(mx).epsilon(1e-10));
    CHECK(v.max_current_residual == 0.0);
}

TEST_CASE("threshold is strict", "[defense]") {
    const auto lv = solve_vmg_levels(kCaseB);
    const auto tr = simulate_bep(kCaseB, lv, BitState::LH, 200, {AttackKind::CurrentInjection, 0.05}, {6, 0, 0});
    const auto v = monitor_bep(tr, 0.0, 0.0);
    CHECK_FALSE(monitor_bep(tr, v.max_current_residual, 0.0).attack_detected);
    CHECK(monitor_bep(tr, 0.999 * v.max_current_residual, 0.0).attack_detected);
    CHECK_THROWS_AS(monitor_bep(tr, -1.0, 0.0), DomainError);
    CHECK_THROWS_AS(monitor_bep(tr, 0.0, -1e-9), DomainError);
}

TEST_CASE("relative thresholds scale the nominal RMS", "[defense]") {
    const auto lv = solve_vmg_levels(kCaseB);
    const auto nominal = nominal_wire_stats(kCaseB, lv);
    const auto eps = relative_thresholds(nominal, 1e-3);
    CHECK(eps.epsilon_current == Approx(1e-3 * std::sqrt(nominal.i2_wire_hl)));
    CHECK(eps.epsilon_voltage == Approx(1e-3 * std::sqrt(nominal.u2_wire_hl)));
    CHECK_THROWS_AS(relative_thresholds(nominal, -1.0), DomainError);
}

TEST_CASE("every attacked bit is flagged at realistic amplitudes", "[defense][statistics]") {
    for (const char* id : {"B", "E"}) {
        const CaseSpec c = builtin_case(id);
        SweepSpec s;
        s.n_beps = 500;
        s.repetitions = 2;
        s.defense.enabled = true;
        for (double f : {0.01, 0.1, 0.2}) {
            const auto cell = run_cell(c, f, 100, s);
            REQUIRE(cell.defense.has_value());
            CHECK(cell.defense->detected_fraction == 1.0);
            CHECK(cell.defense->undetected_bits == 0);
            CHECK_FALSE(cell.defense->p_e_undetected.has_value());
        }
    }
}

TEST_CASE("a loose threshold misses a weak attacker", "[defense]") {
    // Epsilon at half the attacker RMS still catches most bits; at 100x it
    // catches none.
    const CaseSpec c = builtin_case("B");
    const auto lv = solve_vmg_levels(c.quad);
    const double a_rms = attacker_rms(c.quad, lv, {AttackKind::CurrentInjection, 0.01});
    int half = 0, wide = 0;
    for (std::uint64_t b = 0; b < 200; ++b) {
        const auto tr = simulate_bep(c.quad, lv, BitState::HL, 100, {AttackKind::CurrentInjection, 0.01}, {9, b, 0});
        half += monitor_bep(tr, 0.5 * a_rms, 1e9).attack_detected ? 1 : 0;
        wide += monitor_bep(tr, 100.0 * a_rms, 1e9).attack_detected ? 1 : 0;
    }
    CHECK(half == 200);
    CHECK(wide == 0);
}
