#include "kljn/experiment.hpp"

#include "kljn/defense.hpp"
#include "kljn/errors.hpp"
#include "kljn/eve.hpp"
#include "kljn/parallel.hpp"

#include <bit>
#include <cmath>
#include <numeric>

namespace kljn {

void SweepSpec::validate() const {
    if (injection_factors.empty()) throw ConfigurationError("injection_factors is empty");
    if (gammas.empty()) throw ConfigurationError("gammas is empty");
    if (n_beps < 1) throw ConfigurationError("n_beps must be at least 1");
    if (repetitions < 1) throw ConfigurationError("repetitions must be at least 1");
    for (double f : injection_factors) {
        if (!std::isfinite(f) || f < 0.0) {
            throw ConfigurationError("injection factors must be non-negative");
        }
    }
    for (std::size_t g : gammas) {
        if (g == 0) throw ConfigurationError("gamma must be positive");
    }
    if (defense.enabled && !(defense.epsilon_rel >= 0.0)) {
        throw ConfigurationError("defense epsilon_rel must be non-negative");
    }
}

std::uint64_t cell_seed(std::uint64_t master_seed, const std::string& case_id, double factor,
                        std::size_t gamma) {
    std::uint64_t k = mix64(master_seed ^ 0x6b6c6a6e63656c6cULL);
    k = mix64(k ^ fnv1a64(case_id));
    k = mix64((k + kGoldenGamma) ^ std::bit_cast<std::uint64_t>(factor));
    k = mix64((k + 2 * kGoldenGamma) ^ static_cast<std::uint64_t>(gamma));
    return k;
}

RepetitionResult run_repetition(const CaseSpec& c, const NoiseLevels& levels, double factor,
                                std::size_t gamma, const SweepSpec& sweep, std::uint64_t seed,
                                std::size_t repetition) {
    if (c.attack_kind == AttackKind::None) {
        throw ConfigurationError("case " + c.case_id + " has no attack to evaluate");
    }
    const EveKnowledge knowledge = EveKnowledge::from_quad(c.quad);
    const AttackSpec attack{c.attack_kind, factor};
    MonitorThresholds eps;
    if (sweep.defense.enabled) {
        eps = relative_thresholds(nominal_wire_stats(c.quad, levels), sweep.defense.epsilon_rel);
    }

    RepetitionResult out;
    for (std::size_t b = 0; b < sweep.n_beps; ++b) {
        const SeedFamily fam{seed, b, repetition};
        const BitState state =
            GaussianStream(fam.stream("STATE")).next_bit() ? BitState::HL : BitState::LH;
        const BepTrace trace = simulate_bep(c.quad, levels, state, gamma, attack, fam);
        const bool correct = eve_guess(trace, knowledge, fam.stream("TIE")).guess == state;
        out.correct += correct ? 1 : 0;
        if (sweep.defense.enabled) {
            if (monitor_bep(trace, eps.epsilon_current, eps.epsilon_voltage).attack_detected) {
                ++out.detected;
            } else {
                out.undetected_correct += correct ? 1 : 0;
            }
        }
    }
    return out;
}

namespace {

CellResult aggregate(const std::vector<RepetitionResult>& reps, const SweepSpec& sweep) {
    CellResult cell;
    const auto n = static_cast<double>(sweep.n_beps);
    for (const auto& r : reps) cell.p_e_per_repetition.push_back(static_cast<double>(r.correct) / n);
    const auto& p = cell.p_e_per_repetition;
    cell.p_e_mean = std::accumulate(p.begin(), p.end(), 0.0) / static_cast<double>(p.size());
    if (p.size() > 1) {
        double ss = 0.0;
        for (double v : p) ss += (v - cell.p_e_mean) * (v - cell.p_e_mean);
        cell.p_e_std = std::sqrt(ss / static_cast<double>(p.size() - 1));
    }
    if (sweep.defense.enabled) {
        std::size_t detected = 0, undetected_correct = 0;
        for (const auto& r : reps) {
            detected += r.detected;
            undetected_correct += r.undetected_correct;
        }
        const std::size_t total = sweep.n_beps * reps.size();
        DefenseOutcome d;
        d.detected_fraction = static_cast<double>(detected) / static_cast<double>(total);
        d.undetected_bits = total - detected;
        if (d.undetected_bits > 0) {
            d.p_e_undetected =
                static_cast<double>(undetected_correct) / static_cast<double>(d.undetected_bits);
        }
        cell.defense = d;
    }
    return cell;
}

}  // namespace

CellResult run_cell(const CaseSpec& c, double factor, std::size_t gamma, const SweepSpec& sweep,
                    const RunOptions& options) {
    sweep.validate();
    const NoiseLevels levels = solve_vmg_levels(c.quad, c.u_la_rms, c.bandwidth);
    const std::uint64_t seed = cell_seed(sweep.master_seed, c.case_id, factor, gamma);
    std::vector<RepetitionResult> reps(sweep.repetitions);
    parallel_for(reps.size(), options.threads, [&](std::size_t r) {
        reps[r] = run_repetition(c, levels, factor, gamma, sweep, seed, r);
    });
    return aggregate(reps, sweep);
}

ExperimentReport run_sweep(const std::vector<CaseSpec>& cases, const SweepSpec& sweep,
                           const RunOptions& options) {
    sweep.validate();
    ExperimentReport report;
    report.cases = cases;

    std::vector<NoiseLevels> levels;
    for (const auto& c : cases) {
        // Infeasible cases fail here, once per case, before any cell runs.
        report.temperatures.push_back(temperature_row(c));
        levels.push_back(report.temperatures.back().levels);
    }

    struct Cell {
        std::size_t case_idx;
        double factor;
        std::size_t gamma;
        std::uint64_t seed;
    };
    std::vector<Cell> cells;
    for (std::size_t ci = 0; ci < cases.size(); ++ci) {
        for (double f : sweep.injection_factors) {
            for (std::size_t g : sweep.gammas) {
                cells.push_back({ci, f, g, cell_seed(sweep.master_seed, cases[ci].case_id, f, g)});
            }
        }
    }

    const std::size_t n_reps = sweep.repetitions;
    std::vector<RepetitionResult> results(cells.size() * n_reps);
    parallel_for(results.size(), options.threads, [&](std::size_t unit) {
        const Cell& cell = cells[unit / n_reps];
        results[unit] = run_repetition(cases[cell.case_idx], levels[cell.case_idx], cell.factor,
                                       cell.gamma, sweep, cell.seed, unit % n_reps);
    });

    for (std::size_t i = 0; i < cells.size(); ++i) {
        const std::vector<RepetitionResult> reps(results.begin() + static_cast<long>(i * n_reps),
                                                 results.begin() +
                                                     static_cast<long>((i + 1) * n_reps));
        const CellResult r = aggregate(reps, sweep);
        const CaseSpec& c = cases[cells[i].case_idx];
        report.rows.push_back({c.case_id, c.attack_kind, cells[i].factor, cells[i].gamma,
                               r.p_e_mean, r.p_e_std, sweep.n_beps, sweep.repetitions,
                               r.defense});
    }
    return report;
}

std::vector<CaseSpec> builtin_cases() {
    const ResistorQuad ideal{9000.0, 1000.0, 9000.0, 1000.0};
    const ResistorQuad fck2_quad{1000.0, 200.0, fck2_fourth_resistor(1000.0, 200.0, 160.0),
                                 160.0};
    const ResistorQuad fck3_quad{2000.0, 500.0, 2500.0,
                                 fck3_fourth_resistor(2000.0, 500.0, 2500.0)};
    const auto ci = AttackKind::CurrentInjection;
    const auto vi = AttackKind::VoltageInsertion;
    return {
        {"A", ideal, kDefaultULaRms, kDefaultBandwidth, ci},
        {"B", {1000.0, 200.0, 220.0, 160.0}, kDefaultULaRms, kDefaultBandwidth, ci},
        {"C", fck2_quad, kDefaultULaRms, kDefaultBandwidth, ci},
        {"D", ideal, kDefaultULaRms, kDefaultBandwidth, vi},
        {"E", {2000.0, 500.0, 2500.0, 2200.0}, kDefaultULaRms, kDefaultBandwidth, vi},
        {"F", fck3_quad, kDefaultULaRms, kDefaultBandwidth, vi},
        {"G", fck3_quad, kDefaultULaRms, kDefaultBandwidth, ci},
        {"H", fck2_quad, kDefaultULaRms, kDefaultBandwidth, vi},
    };
}

CaseSpec builtin_case(const std::string& case_id) {
    for (auto& c : builtin_cases()) {
        if (c.case_id == case_id) return c;
    }
    throw UsageError("no built-in case '" + case_id + "'");
}

std::vector<CaseSpec> table_cases(int table_id) {
    switch (table_id) {
        case 1:
        case 2: return {builtin_case("A"), builtin_case("B"), builtin_case("C")};
        case 3:
        case 4: return {builtin_case("D"), builtin_case("E"), builtin_case("F")};
        case 5:
        case 6: return {builtin_case("G"), builtin_case("H")};
        default: break;
    }
    throw UsageError("table id must be 1..6, got " + std::to_string(table_id));
}

TemperatureRow temperature_row(const CaseSpec& c) {
    TemperatureRow row;
    row.case_id = c.case_id;
    row.quad = c.quad;
    row.levels = solve_vmg_levels(c.quad, c.u_la_rms, c.bandwidth);
    row.kind = classify_scheme(c.quad);
    return row;
}

ExperimentReport reproduce_table(int table_id, const SweepSpec& sweep,
                                 const RunOptions& options) {
    const std::vector<CaseSpec> cases = table_cases(table_id);
    ExperimentReport report;
    if (table_id % 2 == 1) {
        report = run_sweep(cases, sweep, options);
    } else {
        report.cases = cases;
        for (const auto& c : cases) report.temperatures.push_back(temperature_row(c));
    }
    report.table_id = table_id;
    return report;
}

}  // namespace kljn
