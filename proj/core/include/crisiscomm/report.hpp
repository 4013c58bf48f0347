#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "crisiscomm/chronology.hpp"

namespace crisiscomm {

struct ReportFormats {
  bool table = true;    // aligned.csv
  bool summary = true;  // summary.json
  bool charts = false;  // charts/<series>.svg
};

// Header: date,period,topic_0..topic_{K-1},sentiment_raw,sentiment_rolling,new_cases,new_deaths
void write_aligned_table(const AlignedReport& report, std::ostream& sink);

// Per-period top words (per agency), mean daily sentiment, case and death
// totals, topic totals; pretty-printed JSON with a trailing newline.
std::string summary_document(const AlignedReport& report);

// Minimal standalone SVG polyline chart. Missing values break the line.
std::string render_line_chart(const std::string& title, std::span<const std::optional<double>> values,
                              const std::string& first_label, const std::string& last_label);

// Writes the requested outputs into `directory` (created if needed) and
// returns their paths in write order. Throws std::runtime_error when a file
// cannot be written. Output bytes depend only on the report.
std::vector<std::filesystem::path> emit_report(const AlignedReport& report, const std::filesystem::path& directory,
                                               const ReportFormats& formats = {});

}  // namespace crisiscomm
