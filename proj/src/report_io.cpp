#include "tomo/runner.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>

namespace tomo {

const std::vector<std::string> kCsvColumns = {"check_id", "body_k", "body_l",          "n",         "k",
                                              "p",        "lhs",    "lhs_se",          "rhs",       "rhs_se",
                                              "margin_se_units",    "constants",       "verdict",   "seconds",
                                              "seed"};

namespace {

std::string num(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string constants_text(const std::vector<ConstantUsed>& cs) {
  std::string s;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    if (i) s += "; ";
    s += cs[i].symbol + "=" + num(cs[i].value) + " [" + cs[i].provenance + "]";
  }
  return s;
}

// Non-finite values go out as strings; JSON has no literal for them.
nlohmann::json jnum(double x) {
  if (std::isfinite(x)) return x;
  return num(x);
}

}  // namespace

void write_csv(std::ostream& os, const std::vector<ReportRow>& rows, bool timing) {
  for (std::size_t i = 0; i < kCsvColumns.size(); ++i) os << (i ? "," : "") << kCsvColumns[i];
  os << "\n";
  for (const auto& row : rows) {
    const auto& r = row.report;
    os << csv_field(r.check_id) << ',' << csv_field(r.body_k) << ',' << csv_field(r.body_l) << ',' << r.n << ','
       << r.k << ',' << (r.p ? num(*r.p) : "") << ',' << num(r.lhs.value) << ',' << num(r.lhs.std_error) << ','
       << num(r.rhs.value) << ',' << num(r.rhs.std_error) << ',' << num(r.margin_se) << ','
       << csv_field(constants_text(r.constants)) << ',' << to_string(r.verdict) << ','
       << num(timing ? row.seconds : 0.0) << ',' << row.seed << '\n';
  }
}

void write_json(std::ostream& os, const std::vector<ReportRow>& rows, bool timing) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const auto& row : rows) {
    const auto& r = row.report;
    nlohmann::ordered_json j;
    j["check_id"] = r.check_id;
    j["body_k"] = r.body_k;
    j["body_l"] = r.body_l;
    j["n"] = r.n;
    j["k"] = r.k;
    j["p"] = r.p ? jnum(*r.p) : nlohmann::json(nullptr);
    j["lhs"] = jnum(r.lhs.value);
    j["lhs_se"] = jnum(r.lhs.std_error);
    j["rhs"] = jnum(r.rhs.value);
    j["rhs_se"] = jnum(r.rhs.std_error);
    j["margin_se_units"] = jnum(r.margin_se);
    auto cs = nlohmann::ordered_json::array();
    for (const auto& c : r.constants)
      cs.push_back(nlohmann::ordered_json{{"symbol", c.symbol}, {"value", jnum(c.value)}, {"provenance", c.provenance}});
    j["constants"] = std::move(cs);
    j["verdict"] = to_string(r.verdict);
    j["seconds"] = timing ? row.seconds : 0.0;
    j["seed"] = row.seed;
    j["notes"] = r.notes;
    out.push_back(std::move(j));
  }
  os << out.dump(2) << "\n";
}

void write_report(const std::string& path, ReportFormat format, const std::vector<ReportRow>& rows, bool timing) {
  auto emit = [&](std::ostream& os) {
    if (format == ReportFormat::csv)
      write_csv(os, rows, timing);
    else
      write_json(os, rows, timing);
  };
  if (path.empty() || path == "-") {
    emit(std::cout);
    return;
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot write report to " + path);
  emit(f);
  f.flush();
  if (!f) throw std::runtime_error("error while writing " + path);
}

}  // namespace tomo
