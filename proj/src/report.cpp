#include "kljn/report.hpp"

#include "kljn/errors.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <charconv>
#include <map>
#include <sstream>

namespace kljn {

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string format_sci3(double v) { return fmt::format("{:.2e}", v); }

namespace {

const CaseSpec* find_case(const ExperimentReport& report, const std::string& id) {
    for (const auto& c : report.cases) {
        if (c.case_id == id) return &c;
    }
    return nullptr;
}

std::string kohm(double r) { return fmt::format("{:.4g}", r / 1000.0); }

void emit_csv(const ExperimentReport& report, std::ostream& out) {
    const bool with_defense = std::any_of(report.rows.begin(), report.rows.end(),
                                          [](const ReportRow& r) { return r.defense.has_value(); });
    out << "case_id,attack,injection_factor,gamma,p_e_mean,p_e_std,n_beps,repetitions";
    if (with_defense) out << ",detected_fraction,discard_rate,p_e_undetected";
    out << '\n';
    for (const auto& r : report.rows) {
        out << r.case_id << ',' << to_string(r.attack) << ',' << format_double(r.injection_factor)
            << ',' << r.gamma << ',' << format_double(r.p_e_mean) << ','
            << format_double(r.p_e_std) << ',' << r.n_beps << ',' << r.repetitions;
        if (with_defense) {
            if (r.defense) {
                out << ',' << format_double(r.defense->detected_fraction) << ','
                    << format_double(r.defense->detected_fraction) << ',';
                if (r.defense->p_e_undetected) out << format_double(*r.defense->p_e_undetected);
            } else {
                out << ",,,";
            }
        }
        out << '\n';
    }
}

void emit_console(const ExperimentReport& report, std::ostream& out) {
    // Rows grouped by case then factor; one column per gamma, as in the
    // published layout.
    std::vector<std::size_t> gammas;
    for (const auto& r : report.rows) {
        if (std::find(gammas.begin(), gammas.end(), r.gamma) == gammas.end()) {
            gammas.push_back(r.gamma);
        }
    }
    const bool with_defense = std::any_of(report.rows.begin(), report.rows.end(),
                                          [](const ReportRow& r) { return r.defense.has_value(); });

    std::string header = fmt::format("{:<5} {:>8} {:>8} {:>8} {:>8} {:>9} {:>9} {:>7}", "Case",
                                     "R_HA", "R_LB", "R_LA", "R_HB", "R_xHL", "R_xLH", "Factor");
    for (auto g : gammas) header += fmt::format("  {:>15}", fmt::format("p_E g={}", g));
    out << header << '\n';
    out << fmt::format("{:<5} {:>8} {:>8} {:>8} {:>8} {:>9} {:>9}", "", "kOhm", "kOhm", "kOhm",
                       "kOhm", "kOhm", "kOhm")
        << "   (R_x: parallel for current injection, serial for voltage insertion)\n";

    std::string last_case;
    for (std::size_t i = 0; i < report.rows.size();) {
        const ReportRow& first = report.rows[i];
        std::map<std::size_t, const ReportRow*> by_gamma;
        std::size_t j = i;
        while (j < report.rows.size() && report.rows[j].case_id == first.case_id &&
               report.rows[j].injection_factor == first.injection_factor) {
            by_gamma[report.rows[j].gamma] = &report.rows[j];
            ++j;
        }

        std::string prefix;
        if (first.case_id != last_case) {
            const CaseSpec* c = find_case(report, first.case_id);
            if (c) {
                const bool parallel = c->attack_kind == AttackKind::CurrentInjection;
                prefix = fmt::format(
                    "{:<5} {:>8} {:>8} {:>8} {:>8} {:>9} {:>9}", c->case_id, kohm(c->quad.r_ha),
                    kohm(c->quad.r_lb), kohm(c->quad.r_la), kohm(c->quad.r_hb),
                    kohm(parallel ? c->quad.r_p_hl() : c->quad.r_s_hl()),
                    kohm(parallel ? c->quad.r_p_lh() : c->quad.r_s_lh()));
            } else {
                prefix = fmt::format("{:<5} {:>53}", first.case_id, "");
            }
            last_case = first.case_id;
        } else {
            prefix = fmt::format("{:<59}", "");
        }
        std::string line =
            prefix + fmt::format(" {:>7}", fmt::format("{:g}%", first.injection_factor * 100.0));
        for (auto g : gammas) {
            const auto it = by_gamma.find(g);
            line += it == by_gamma.end()
                        ? fmt::format("  {:>15}", "-")
                        : fmt::format("  {:>15}", fmt::format("{:.3f} ± {:.3f}", it->second->p_e_mean,
                                                              it->second->p_e_std));
        }
        out << line << '\n';
        i = j;
    }

    if (with_defense) {
        out << "\nAmplitude-comparison defense (discarded bits = detected BEPs):\n";
        for (const auto& r : report.rows) {
            if (!r.defense) continue;
            out << fmt::format("  {} factor={:g} gamma={}: detected {:.4f}, discarded {:.4f}, ",
                               r.case_id, r.injection_factor, r.gamma, r.defense->detected_fraction,
                               r.defense->detected_fraction);
            if (r.defense->p_e_undetected) {
                out << fmt::format("p_E on undetected bits {:.3f} ({} bits)\n",
                                   *r.defense->p_e_undetected, r.defense->undetected_bits);
            } else {
                out << "p_E on undetected bits undefined (all bits discarded)\n";
            }
        }
    }
}

}  // namespace

void emit_report(const ExperimentReport& report, ReportFormat format, std::ostream& out) {
    if (format == ReportFormat::Csv) {
        emit_csv(report, out);
    } else {
        emit_console(report, out);
    }
    out.flush();
    if (!out) throw IoError("failed to write report");
}

std::string emit_report(const ExperimentReport& report, ReportFormat format) {
    std::ostringstream os;
    emit_report(report, format, os);
    return os.str();
}

void emit_temperatures(const ExperimentReport& report, ReportFormat format, std::ostream& out) {
    if (format == ReportFormat::Csv) {
        out << "case_id,r_ha,r_lb,r_la,r_hb,t_ha,t_lb,t_la,t_hb,scheme\n";
        for (const auto& t : report.temperatures) {
            out << t.case_id << ',' << format_double(t.quad.r_ha) << ','
                << format_double(t.quad.r_lb) << ',' << format_double(t.quad.r_la) << ','
                << format_double(t.quad.r_hb) << ',' << format_double(t.levels.t_ha) << ','
                << format_double(t.levels.t_lb) << ',' << format_double(t.levels.t_la) << ','
                << format_double(t.levels.t_hb) << ',' << to_string(t.kind) << '\n';
        }
    } else {
        out << fmt::format("{:<5} {:>8} {:>8} {:>8} {:>8} {:>10} {:>10} {:>10} {:>10}  {}\n",
                           "Case", "R_HA", "R_LB", "R_LA", "R_HB", "T_HA (K)", "T_LB (K)",
                           "T_LA (K)", "T_HB (K)", "scheme");
        out << fmt::format("{:<5} {:>8} {:>8} {:>8} {:>8}\n", "", "kOhm", "kOhm", "kOhm", "kOhm");
        for (const auto& t : report.temperatures) {
            out << fmt::format("{:<5} {:>8} {:>8} {:>8} {:>8} {:>10} {:>10} {:>10} {:>10}  {}\n",
                               t.case_id, kohm(t.quad.r_ha), kohm(t.quad.r_lb), kohm(t.quad.r_la),
                               kohm(t.quad.r_hb), format_sci3(t.levels.t_ha),
                               format_sci3(t.levels.t_lb), format_sci3(t.levels.t_la),
                               format_sci3(t.levels.t_hb), to_string(t.kind));
        }
    }
    out.flush();
    if (!out) throw IoError("failed to write temperature table");
}

}  // namespace kljn
