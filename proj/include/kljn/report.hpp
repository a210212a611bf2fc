#pragma once

#include "kljn/experiment.hpp"

#include <ostream>
#include <string>

namespace kljn {

enum class ReportFormat { Csv, ConsoleTable };

/// Writes the sweep rows of `report`.
///
/// CSV: UTF-8, LF endings, columns
///   case_id,attack,injection_factor,gamma,p_e_mean,p_e_std,n_beps,repetitions
/// followed by detected_fraction,discard_rate,p_e_undetected when any row
/// carries a defense outcome (p_e_undetected is empty when every bit was
/// discarded). Floats use the shortest representation that round-trips.
///
/// Throws IoError if the stream fails.
void emit_report(const ExperimentReport& report, ReportFormat format, std::ostream& out);

[[nodiscard]] std::string emit_report(const ExperimentReport& report, ReportFormat format);

/// Noise temperature table (case, four resistances, four temperatures, kind).
void emit_temperatures(const ExperimentReport& report, ReportFormat format, std::ostream& out);

/// Shortest round-trip decimal representation.
[[nodiscard]] std::string format_double(double v);

/// Scientific notation with three significant figures, e.g. "1.81e+16".
[[nodiscard]] std::string format_sci3(double v);

}  // namespace kljn
