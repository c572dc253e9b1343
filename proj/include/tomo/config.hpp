#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace tomo {

/// Invalid run configuration. `line` is 1-based, 0 when unknown.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(int line, std::string field, const std::string& message);

  int line() const { return line_; }
  const std::string& field() const { return field_; }

 private:
  int line_;
  std::string field_;
};

struct CheckSpec {
  std::string id;
  /// Scalar parameters as written in the config; lists are kept in their
  /// flow form, e.g. "[1, 1, 1]".
  std::map<std::string, std::string> params;
  std::map<std::string, int> param_lines;
  int line = 0;

  /// "id k1=v1 k2=v2 ..." with keys sorted; seeds the per-check stream.
  std::string canonical() const;
};

enum class ReportFormat { csv, json };

struct RunConfig {
  std::uint64_t seed = 1;
  std::size_t samples = 100'000;
  int workers = 1;
  ReportFormat format = ReportFormat::csv;
  std::string out;
  /// Write wall-clock seconds; off by default so reruns are byte-identical.
  bool timing = false;
  /// Checks run at once; rows keep config order either way.
  int jobs = 1;
  /// Suite-wide defaults, overridable per check.
  std::map<std::string, std::string> defaults;
  std::map<std::string, int> default_lines;
  std::vector<CheckSpec> suite;
};

/// Parses YAML text. Accepted suite entries are maps
///   - check: quotient_holder
///     K: ball(3)
///     k: 1
/// or one-line strings "quotient_holder: K=ball(3), L=ball(3), k=1".
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

/// Built-in suite covering every checker on the canonical catalog.
std::string default_suite_yaml();

std::string to_string(ReportFormat f);
ReportFormat parse_format(const std::string& s);

}  // namespace tomo
