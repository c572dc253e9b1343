#pragma once

#include "tomo/config.hpp"
#include "tomo/report.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace tomo {

struct ReportRow {
  InequalityReport report;
  double seconds = 0.0;
  std::uint64_t seed = 0;
  /// Index of the suite entry that produced this row.
  std::size_t entry = 0;
};

struct CheckerInfo {
  std::string id;
  std::string params;  // parameter summary for list-checkers
  std::string summary;
};

const std::vector<CheckerInfo>& checker_catalog();

/// Parses and validates every entry before running anything; throws
/// ConfigError naming the offending line and field.
void validate(const RunConfig& config);

/// Runs the suite. Rows come back in config order. `progress` is called
/// after each entry finishes (from the worker that ran it).
std::vector<ReportRow> run_suite(const RunConfig& config,
                                 const std::function<void(std::size_t done, std::size_t total)>& progress = {});

bool any_violated(const std::vector<ReportRow>& rows);

// Report encodings ----------------------------------------------------------

/// Header plus one line per row, numbers at 17 significant digits.
void write_csv(std::ostream& os, const std::vector<ReportRow>& rows, bool timing);
void write_json(std::ostream& os, const std::vector<ReportRow>& rows, bool timing);
/// Writes to `path` ("-" for stdout); throws std::runtime_error when the
/// file cannot be written.
void write_report(const std::string& path, ReportFormat format, const std::vector<ReportRow>& rows, bool timing);

extern const std::vector<std::string> kCsvColumns;

}  // namespace tomo
