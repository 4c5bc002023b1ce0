#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "halcece/metrics.hpp"

namespace halcece {

enum class ReportFormat { Csv, JsonLines };

std::optional<ReportFormat> parse_format(std::string_view name);
const char* to_string(ReportFormat format);

/// Shortest decimal representation that parses back to the same double
/// (std::to_chars); parse_double inverts it exactly. All report files go
/// through this pair so a re-read report is bit-identical to the written
/// one.
std::string format_double(double value);
double parse_double(std::string_view text);

/// Per-instance report table. CSV emits the role and linguistic column
/// groups only when at least one report carries them; absent values are
/// empty cells. JSON-lines omits absent keys instead.
std::string render_instance_reports(const std::vector<InstanceReport>& reports,
                                    ReportFormat format);
std::vector<InstanceReport> parse_instance_reports(const std::string& content,
                                                   ReportFormat format);

/// The aggregate as a single CSV row (with header) or a single JSON line.
std::string render_aggregate_row(const AggregateReport& aggregate,
                                 ReportFormat format);

/// Human-readable aggregate summary with drop and exclusion accounting.
std::string render_aggregate_text(const AggregateReport& aggregate);

/// Writes via a temp file in the same directory plus rename, so readers
/// never observe a partially written report.
void write_file_atomic(const std::filesystem::path& path,
                       const std::string& content);

}  // namespace halcece
