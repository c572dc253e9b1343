#include "tomo/config.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace tomo {

ConfigError::ConfigError(int line, std::string field, const std::string& message)
    : std::runtime_error((line > 0 ? "line " + std::to_string(line) + ": " : std::string()) +
                         (field.empty() ? std::string() : "field '" + field + "': ") + message),
      line_(line),
      field_(std::move(field)) {}

std::string CheckSpec::canonical() const {
  std::string s = id;
  for (const auto& [key, value] : params) s += " " + key + "=" + value;  // std::map is sorted
  return s;
}

std::string to_string(ReportFormat f) { return f == ReportFormat::csv ? "csv" : "json"; }

ReportFormat parse_format(const std::string& s) {
  if (s == "csv") return ReportFormat::csv;
  if (s == "json") return ReportFormat::json;
  throw std::invalid_argument("format must be csv or json, got '" + s + "'");
}

namespace {

int line_of(const YAML::Node& node) { return node.Mark().line >= 0 ? node.Mark().line + 1 : 0; }

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

// Scalars verbatim, sequences in flow form.
std::string flatten(const YAML::Node& node, const std::string& field) {
  if (node.IsScalar()) return trim(node.Scalar());
  if (node.IsSequence()) {
    std::string s = "[";
    for (std::size_t i = 0; i < node.size(); ++i) {
      if (i) s += ", ";
      s += flatten(node[i], field);
    }
    return s + "]";
  }
  if (node.IsNull()) throw ConfigError(line_of(node), field, "missing value");
  throw ConfigError(line_of(node), field, "expected a scalar or a list");
}

std::uint64_t parse_u64(const YAML::Node& node, const std::string& field) {
  const std::string s = flatten(node, field);
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size())
    throw ConfigError(line_of(node), field, "expected a non-negative integer, got '" + s + "'");
  return v;
}

bool parse_bool(const YAML::Node& node, const std::string& field) {
  const std::string s = flatten(node, field);
  if (s == "true" || s == "yes" || s == "on") return true;
  if (s == "false" || s == "no" || s == "off") return false;
  throw ConfigError(line_of(node), field, "expected true or false, got '" + s + "'");
}

// Split on commas outside brackets and parentheses.
std::vector<std::string> split_top(std::string_view s) {
  std::vector<std::string> parts;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    if (c == '(' || c == '[') ++depth;
    if (c == ')' || c == ']') --depth;
    if (c == ',' && depth == 0) {
      parts.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  parts.push_back(trim(s.substr(start)));
  return parts;
}

CheckSpec parse_inline(const std::string& text, int line) {
  CheckSpec spec;
  spec.line = line;
  const auto colon = text.find(':');
  spec.id = trim(std::string_view(text).substr(0, colon));
  if (spec.id.empty()) throw ConfigError(line, "check", "missing checker id");
  if (colon == std::string::npos) return spec;
  const std::string rest = trim(std::string_view(text).substr(colon + 1));
  if (rest.empty()) return spec;
  for (const auto& part : split_top(rest)) {
    const auto eq = part.find('=');
    if (eq == std::string::npos)
      throw ConfigError(line, part, "expected key=value in '" + spec.id + "' entry");
    const std::string key = trim(std::string_view(part).substr(0, eq));
    const std::string value = trim(std::string_view(part).substr(eq + 1));
    if (key.empty() || value.empty()) throw ConfigError(line, part, "empty key or value");
    if (!spec.params.emplace(key, value).second) throw ConfigError(line, key, "given twice");
    spec.param_lines[key] = line;
  }
  return spec;
}

CheckSpec parse_entry(const YAML::Node& node) {
  const int line = line_of(node);
  if (node.IsScalar()) return parse_inline(node.Scalar(), line);
  if (!node.IsMap()) throw ConfigError(line, "suite", "each entry must be a map or a one-line string");
  CheckSpec spec;
  spec.line = line;
  for (const auto& kv : node) {
    const std::string key = kv.first.as<std::string>();
    if (key == "check") {
      spec.id = flatten(kv.second, key);
      continue;
    }
    if (!spec.params.emplace(key, flatten(kv.second, key)).second)
      throw ConfigError(line_of(kv.first), key, "given twice");
    spec.param_lines[key] = line_of(kv.second);
  }
  if (spec.id.empty()) throw ConfigError(line, "check", "missing checker id");
  return spec;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw ConfigError(e.mark.line >= 0 ? e.mark.line + 1 : 0, "", e.msg);
  }
  if (!root.IsMap()) throw ConfigError(1, "", "top level must be a map");

  RunConfig cfg;
  bool have_suite = false;
  for (const auto& kv : root) {
    const std::string key = kv.first.as<std::string>();
    const YAML::Node& v = kv.second;
    if (key == "seed") {
      cfg.seed = parse_u64(v, key);
    } else if (key == "samples") {
      cfg.samples = parse_u64(v, key);
      if (cfg.samples < 2) throw ConfigError(line_of(v), key, "must be at least 2");
    } else if (key == "workers" || key == "jobs") {
      const auto w = parse_u64(v, key);
      if (w < 1 || w > 1024) throw ConfigError(line_of(v), key, "must be in [1, 1024]");
      (key == "workers" ? cfg.workers : cfg.jobs) = static_cast<int>(w);
    } else if (key == "format") {
      try {
        cfg.format = parse_format(flatten(v, key));
      } catch (const std::invalid_argument& e) {
        throw ConfigError(line_of(v), key, e.what());
      }
    } else if (key == "out") {
      cfg.out = flatten(v, key);
    } else if (key == "timing") {
      cfg.timing = parse_bool(v, key);
    } else if (key == "defaults") {
      if (!v.IsMap()) throw ConfigError(line_of(v), key, "expected a map");
      for (const auto& d : v) {
        const std::string dk = d.first.as<std::string>();
        cfg.defaults[dk] = flatten(d.second, dk);
        cfg.default_lines[dk] = line_of(d.second);
      }
    } else if (key == "suite") {
      if (!v.IsSequence()) throw ConfigError(line_of(v), key, "expected a list of checks");
      for (const auto& entry : v) cfg.suite.push_back(parse_entry(entry));
      have_suite = true;
    } else {
      throw ConfigError(line_of(kv.first), key, "unknown top-level field");
    }
  }
  if (!have_suite) throw ConfigError(0, "suite", "missing");
  return cfg;
}

RunConfig load_config(const std::string& path) {
  if (path == "default-suite") return parse_config(default_suite_yaml());
  std::ifstream in(path);
  if (!in) throw ConfigError(0, "", "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace tomo
