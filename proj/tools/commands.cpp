#include "commands.hpp"

#include "kljn/circuit.hpp"
#include "kljn/config.hpp"
#include "kljn/errors.hpp"
#include "kljn/experiment.hpp"
#include "kljn/report.hpp"
#include "kljn/scheme.hpp"
#include "kljn/wire_sim.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

namespace kljn::cli {

namespace {

constexpr double kResidualTol = 1e-9;
constexpr std::size_t kValidateGamma = 100000;
constexpr double kValidateSigmas = 5.0;

struct Flags {
    std::string config;
    std::string out;
    int table = 0;
    bool defense = false;
    std::optional<std::uint64_t> seed;
    unsigned threads = 0;
    double r_ha = 0.0, r_la = 0.0, r_hb = 0.0, r_lb = 0.0;
};

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open " + path + " for writing");
    f << content;
    f.flush();
    if (!f) throw IoError("failed writing " + path);
}

ExperimentConfig load_checked(const Flags& flags) {
    ExperimentConfig cfg = load_config(flags.config);
    cfg.quad.validate();
    if (flags.seed) cfg.sweep.master_seed = *flags.seed;
    return cfg;
}

void print_quad(const ResistorQuad& q, std::ostream& out) {
    out << fmt::format("resistors (ohm): R_HA={} R_LA={} R_HB={} R_LB={}\n",
                       format_double(q.r_ha), format_double(q.r_la), format_double(q.r_hb),
                       format_double(q.r_lb));
}

int cmd_solve(const Flags& flags, std::ostream& out) {
    const ExperimentConfig cfg = load_checked(flags);
    const ResistorQuad& q = cfg.quad;
    print_quad(q, out);
    out << fmt::format("anchor: U_LA = {} V rms, bandwidth B = {} Hz\n",
                       format_double(cfg.u_la_rms), format_double(cfg.bandwidth));
    const NoiseLevels lv = solve_vmg_levels(q, cfg.u_la_rms, cfg.bandwidth);
    out << fmt::format("mean-square levels (V^2): U_HA^2={:.6g} U_LA^2={:.6g} U_HB^2={:.6g} U_LB^2={:.6g}\n",
                       lv.u2_ha, lv.u2_la, lv.u2_hb, lv.u2_lb);
    out << fmt::format("noise temperatures (K): T_HA={} T_LB={} T_LA={} T_HB={}\n",
                       format_sci3(lv.t_ha), format_sci3(lv.t_lb), format_sci3(lv.t_la),
                       format_sci3(lv.t_hb));
    out << "scheme: " << to_string(classify_scheme(q)) << '\n';
    out << fmt::format("resultants (ohm): R_pHL={:.6g} R_pLH={:.6g} R_sHL={:.6g} R_sLH={:.6g}\n",
                       q.r_p_hl(), q.r_p_lh(), q.r_s_hl(), q.r_s_lh());
    const NominalWireStats st = nominal_wire_stats(q, lv);
    out << fmt::format("wire (HL/LH): U^2={:.6g}/{:.6g} V^2  I^2={:.6g}/{:.6g} A^2  P={:.6g}/{:.6g} W\n",
                       st.u2_wire_hl, st.u2_wire_lh, st.i2_wire_hl, st.i2_wire_lh, st.p_hl,
                       st.p_lh);
    const ConstraintResiduals res = constraint_residuals(q, lv);
    out << fmt::format("residuals (relative): voltage={:.3e} current={:.3e} power={:.3e}\n",
                       res.voltage, res.current, res.power);
    return kExitOk;
}

int cmd_fck(int variant, const Flags& flags, std::ostream& out, std::ostream& err) {
    try {
        if (variant == 2) {
            const double r_hb = fck2_fourth_resistor(flags.r_ha, flags.r_la, flags.r_lb);
            out << fmt::format("R_HB = {:.2f} ohm\n", r_hb);
            out << fmt::format("R_pHL = R_pLH = {:.2f} ohm\n",
                               parallel_resultant(flags.r_ha, flags.r_lb));
        } else {
            const double r_lb = fck3_fourth_resistor(flags.r_ha, flags.r_la, flags.r_hb);
            out << fmt::format("R_LB = {:.2f} ohm\n", r_lb);
            out << fmt::format("R_sHL = R_sLH = {:.2f} ohm\n", serial_resultant(flags.r_la, flags.r_hb));
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitOk;
}

int cmd_attack(const Flags& flags, std::ostream& out) {
    ExperimentConfig cfg = load_checked(flags);
    if (cfg.attack == AttackKind::None) {
        throw ConfigurationError("config attack is 'none'; nothing to simulate");
    }
    if (flags.defense) cfg.sweep.defense.enabled = true;
    const ExperimentReport report = run_sweep({cfg.case_spec()}, cfg.sweep, {flags.threads});
    emit_temperatures(report, ReportFormat::ConsoleTable, out);
    out << '\n';
    emit_report(report, ReportFormat::ConsoleTable, out);
    if (!flags.out.empty()) write_file(flags.out, emit_report(report, ReportFormat::Csv));
    return kExitOk;
}

int cmd_reproduce(const Flags& flags, std::ostream& out) {
    SweepSpec sweep;
    if (flags.seed) sweep.master_seed = *flags.seed;
    const ExperimentReport report = reproduce_table(flags.table, sweep, {flags.threads});
    out << "Table " << flags.table << '\n';
    emit_temperatures(report, ReportFormat::ConsoleTable, out);
    if (!report.rows.empty()) {
        out << '\n';
        emit_report(report, ReportFormat::ConsoleTable, out);
    }
    if (!flags.out.empty()) {
        std::ostringstream csv;
        if (report.rows.empty()) {
            emit_temperatures(report, ReportFormat::Csv, csv);
        } else {
            emit_report(report, ReportFormat::Csv, csv);
        }
        write_file(flags.out, csv.str());
    }
    return kExitOk;
}

int cmd_validate(const Flags& flags, std::ostream& out) {
    const ExperimentConfig cfg = load_checked(flags);
    const ResistorQuad& q = cfg.quad;
    print_quad(q, out);
    const NoiseLevels lv = solve_vmg_levels(q, cfg.u_la_rms, cfg.bandwidth);
    int failures = 0;
    const auto check = [&](const std::string& name, double value, double limit, const char* unit) {
        const bool ok = value <= limit;
        failures += ok ? 0 : 1;
        out << fmt::format("[{}] {}: {:.3e} (limit {:.1e}{})\n", ok ? "PASS" : "FAIL", name, value,
                           limit, unit);
    };

    const ConstraintResiduals res = constraint_residuals(q, lv);
    check("wire voltage equality residual", res.voltage, kResidualTol, " relative");
    check("wire current equality residual", res.current, kResidualTol, " relative");
    check("power flow equality residual", res.power, kResidualTol, " relative");
    for (auto [name, temp, r, msv] :
         {std::tuple{"T_HA", lv.t_ha, q.r_ha, lv.u2_ha}, std::tuple{"T_LA", lv.t_la, q.r_la, lv.u2_la},
          std::tuple{"T_HB", lv.t_hb, q.r_hb, lv.u2_hb}, std::tuple{"T_LB", lv.t_lb, q.r_lb, lv.u2_lb}}) {
        check(fmt::format("{} round trip", name),
              relative_gap(johnson_msv(temp, r, cfg.bandwidth), msv), 1e-12, " relative");
    }

    // Monte Carlo: simulated secure-state wire statistics against the
    // analytic values, in standard errors.
    const NominalWireStats nominal = nominal_wire_stats(q, lv);
    for (BitState s : {BitState::HL, BitState::LH}) {
        const SeedFamily fam{cfg.sweep.master_seed, s == BitState::HL ? 0u : 1u, 0};
        const BepTrace tr = simulate_bep(q, lv, s, kValidateGamma, {}, fam);
        const TraceStats ts = trace_stats(tr);
        const double u2 = s == BitState::HL ? nominal.u2_wire_hl : nominal.u2_wire_lh;
        const double i2 = s == BitState::HL ? nominal.i2_wire_hl : nominal.i2_wire_lh;
        const double p = s == BitState::HL ? nominal.p_hl : nominal.p_lh;
        check(fmt::format("{} simulated <U^2> deviation", to_string(s)),
              std::abs(ts.msv_u - u2) / ts.msv_u_stderr, kValidateSigmas, " std errors");
        check(fmt::format("{} simulated <I^2> deviation", to_string(s)),
              std::abs(ts.msv_i - i2) / ts.msv_i_stderr, kValidateSigmas, " std errors");
        check(fmt::format("{} simulated <U I> deviation", to_string(s)),
              std::abs(ts.power - p) / ts.power_stderr, kValidateSigmas, " std errors");
    }

    if (failures > 0) {
        out << failures << " check(s) failed\n";
        return kExitFailure;
    }
    out << "all checks passed\n";
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Active-attack laboratory for the KLJN / VMG-KLJN key exchanger", "kljn"};
    app.require_subcommand(1);
    Flags flags;

    auto* solve = app.add_subcommand("solve", "Solve noise levels and temperatures of a resistor quad");
    solve->add_option("--config", flags.config, "Experiment config (JSON)")->required()->check(CLI::ExistingFile);

    auto* fck2 = app.add_subcommand("fck2", "R_HB equalising the HL/LH parallel resultants");
    fck2->add_option("--r-ha", flags.r_ha, "R_HA in ohms")->required();
    fck2->add_option("--r-la", flags.r_la, "R_LA in ohms")->required();
    fck2->add_option("--r-lb", flags.r_lb, "R_LB in ohms")->required();

    auto* fck3 = app.add_subcommand("fck3", "R_LB equalising the HL/LH serial resultants");
    fck3->add_option("--r-ha", flags.r_ha, "R_HA in ohms")->required();
    fck3->add_option("--r-la", flags.r_la, "R_LA in ohms")->required();
    fck3->add_option("--r-hb", flags.r_hb, "R_HB in ohms")->required();

    auto* attack = app.add_subcommand("attack", "Run the attack sweep described by a config");
    attack->add_option("--config", flags.config, "Experiment config (JSON)")->required()->check(CLI::ExistingFile);
    attack->add_option("--out", flags.out, "CSV output path");
    attack->add_flag("--defense", flags.defense, "Enable amplitude-comparison monitoring");
    attack->add_option("--seed", flags.seed, "Master seed (overrides config)");
    attack->add_option("--threads", flags.threads, "Worker threads (0 = all cores)");

    auto* reproduce = app.add_subcommand("reproduce", "Reproduce a built-in table (1-6)");
    reproduce->add_option("--table", flags.table, "Table number")->required()->check(CLI::Range(1, 6));
    reproduce->add_option("--out", flags.out, "CSV output path");
    reproduce->add_option("--seed", flags.seed, "Master seed (default 1)");
    reproduce->add_option("--threads", flags.threads, "Worker threads (0 = all cores)");

    auto* validate = app.add_subcommand("validate", "Check constraint residuals and simulated wire statistics");
    validate->add_option("--config", flags.config, "Experiment config (JSON)")->required()->check(CLI::ExistingFile);
    validate->add_option("--seed", flags.seed, "Master seed (overrides config)");

    std::vector<std::string> storage{"kljn"};
    storage.insert(storage.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : storage) argv.push_back(s.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitUsage;
    }

    try {
        if (*solve) return cmd_solve(flags, out);
        if (*fck2) return cmd_fck(2, flags, out, err);
        if (*fck3) return cmd_fck(3, flags, out, err);
        if (*attack) return cmd_attack(flags, out);
        if (*reproduce) return cmd_reproduce(flags, out);
        if (*validate) return cmd_validate(flags, out);
    } catch (const InvalidQuadError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitUsage;
}

}  // namespace kljn::cli
