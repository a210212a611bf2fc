#pragma once

// =============================================================================
// Monte Carlo campaigns estimating Eve's per-bit success probability p_E.
// =============================================================================
//
// A cell is (case, injection factor, gamma). For each repetition r the cell
// simulates n_beps secure bits (state drawn uniformly from {HL, LH}), lets Eve
// guess every bit and records the fraction she got right. p_E_mean and
// p_E_std are the mean and sample standard deviation over repetitions.
//
// Seeding: every stream is addressed by (cell seed, label, BEP, repetition)
// where the cell seed hashes the master seed with the case id, the factor bits
// and gamma (see cell_seed). Nothing depends on execution order, so results
// are identical for every thread count.

#include "kljn/scheme.hpp"
#include "kljn/wire_sim.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace kljn {

struct CaseSpec {
    std::string case_id;
    ResistorQuad quad;
    double u_la_rms = kDefaultULaRms;
    double bandwidth = kDefaultBandwidth;
    AttackKind attack_kind = AttackKind::CurrentInjection;
};

struct DefenseSpec {
    bool enabled = false;
    double epsilon_rel = 1e-6;
};

struct SweepSpec {
    std::vector<double> injection_factors{0.01, 0.10, 0.20};
    std::vector<std::size_t> gammas{100, 200, 500};
    std::size_t n_beps = 2000;
    std::size_t repetitions = 10;
    std::uint64_t master_seed = 1;
    DefenseSpec defense;

    /// Throws ConfigurationError for empty lists, zero counts, zero gamma or
    /// negative factors.
    void validate() const;
};

/// Execution knobs that never influence results.
struct RunOptions {
    unsigned threads = 0;  // 0 = hardware concurrency
};

struct DefenseOutcome {
    double detected_fraction = 0.0;        // attacked BEPs flagged by the monitor
    std::size_t undetected_bits = 0;
    std::optional<double> p_e_undetected;  // empty when every bit was discarded
};

struct CellResult {
    double p_e_mean = 0.0;
    double p_e_std = 0.0;
    std::vector<double> p_e_per_repetition;
    std::optional<DefenseOutcome> defense;
};

struct ReportRow {
    std::string case_id;
    AttackKind attack = AttackKind::CurrentInjection;
    double injection_factor = 0.0;
    std::size_t gamma = 0;
    double p_e_mean = 0.0;
    double p_e_std = 0.0;
    std::size_t n_beps = 0;
    std::size_t repetitions = 0;
    std::optional<DefenseOutcome> defense;
};

struct TemperatureRow {
    std::string case_id;
    ResistorQuad quad;
    NoiseLevels levels;
    SchemeKind kind = SchemeKind::GenericVMG;
};

struct ExperimentReport {
    int table_id = 0;  // 0 when not a built-in table
    std::vector<ReportRow> rows;
    std::vector<TemperatureRow> temperatures;
    std::vector<CaseSpec> cases;  // case definitions behind rows/temperatures
};

/// Seed shared by all streams of one cell.
[[nodiscard]] std::uint64_t cell_seed(std::uint64_t master_seed, const std::string& case_id,
                                      double factor, std::size_t gamma);

/// Fraction of correct guesses over one repetition. Exposed for tests and for
/// callers that schedule repetitions themselves.
struct RepetitionResult {
    std::size_t correct = 0;
    std::size_t detected = 0;
    std::size_t undetected_correct = 0;
};

[[nodiscard]] RepetitionResult run_repetition(const CaseSpec& c, const NoiseLevels& levels,
                                              double factor, std::size_t gamma,
                                              const SweepSpec& sweep, std::uint64_t seed,
                                              std::size_t repetition);

/// One cell. Throws ConfigurationError (or UnphysicalSolutionError) for an
/// infeasible case.
[[nodiscard]] CellResult run_cell(const CaseSpec& c, double factor, std::size_t gamma,
                                  const SweepSpec& sweep, const RunOptions& options = {});

/// Full sweep over cases x factors x gammas; rows in that nesting order.
[[nodiscard]] ExperimentReport run_sweep(const std::vector<CaseSpec>& cases,
                                         const SweepSpec& sweep,
                                         const RunOptions& options = {});

/// The eight built-in cases A..H.
[[nodiscard]] std::vector<CaseSpec> builtin_cases();
[[nodiscard]] CaseSpec builtin_case(const std::string& case_id);

/// Cases listed in a built-in table (1..6). Throws UsageError otherwise.
[[nodiscard]] std::vector<CaseSpec> table_cases(int table_id);

/// Tables 1, 3, 5 run the sweep; 2, 4, 6 only solve the temperatures.
[[nodiscard]] ExperimentReport reproduce_table(int table_id, const SweepSpec& sweep,
                                               const RunOptions& options = {});

[[nodiscard]] TemperatureRow temperature_row(const CaseSpec& c);

}  // namespace kljn
