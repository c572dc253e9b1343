#include "tomo/config.hpp"
#include "tomo/runner.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace tomo;
namespace fs = std::filesystem;

namespace {

std::string csv_of(const std::vector<ReportRow>& rows) {
  std::ostringstream os;
  write_csv(os, rows, false);
  return os.str();
}

std::string json_of(const std::vector<ReportRow>& rows) {
  std::ostringstream os;
  write_json(os, rows, false);
  return os.str();
}

// RFC 4180 fields
std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> out(1);
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"' && i + 1 < text.size() && text[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.back().push_back(field);
      field.clear();
    } else if (c == '\n') {
      out.back().push_back(field);
      field.clear();
      out.emplace_back();
    } else {
      field += c;
    }
  }
  if (out.back().empty()) out.pop_back();
  return out;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_cli(const std::string& args, const fs::path& err_file) {
  const std::string cmd = std::string(TOMO_CLI_PATH) + " " + args + " 2> " + err_file.string() + " > /dev/null";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

const char* kSmall = R"yaml(seed: 42
samples: 4000
defaults:
  section_samples: 2000
  net_random: 2
suite:
  - check: quotient_holder
    K: ball(3)
    L: ball(3)
    k: 1
  - "quotient_main: K=cube(3), L=ball(3), f=gaussian, g=gaussian, k=1"
  - "volume: K=cube(4)"
  - "section: K=cube(3), H=perp(1, 1, 1)"
  - "lutwak: K=cube(3), L=lp_ball(3, 1), p=1.5"
)yaml";

}  // namespace

TEST_CASE("inline and map entries are the same check") {
  const auto a = parse_config("suite:\n  - check: quotient_holder\n    K: ball(3)\n    L: ball(3)\n    k: 1\n");
  const auto b = parse_config("suite:\n  - \"quotient_holder: K=ball(3), L=ball(3), k=1\"\n");
  REQUIRE(a.suite.size() == 1);
  CHECK(a.suite[0].canonical() == b.suite[0].canonical());
  CHECK(a.suite[0].canonical() == "quotient_holder K=ball(3) L=ball(3) k=1");
  const auto lists = parse_config("suite:\n  - check: section\n    K: cube(3)\n    H: perp(1, 1, 1)\n");
  CHECK(lists.suite[0].params.at("H") == "perp(1, 1, 1)");
}

TEST_CASE("validation errors name the line and the field") {
  auto error_of = [](const std::string& text) -> ConfigError {
    try {
      validate(parse_config(text));
    } catch (const ConfigError& e) {
      return e;
    }
    FAIL("no error for: " << text);
    return ConfigError(0, "", "");
  };
  const auto k = error_of("seed: 1\nsuite:\n  - check: quotient_holder\n    K: ball(3)\n    L: ball(3)\n    k: 3\n");
  CHECK(k.field() == "k");
  CHECK(k.line() == 6);
  CHECK(std::string(k.what()).find("0 < k < n") != std::string::npos);
  const auto inline_k = error_of("suite:\n  - \"quotient_holder: K=ball(3), L=ball(3), k=3\"\n");
  CHECK(inline_k.field() == "k");
  CHECK(inline_k.line() == 2);
  CHECK(error_of("suite:\n  - \"quotient_holder: K=ball(3), L=ball(3), k=1, colour=red\"\n").field() == "colour");
  CHECK(error_of("suite:\n  - \"teapot: K=ball(3)\"\n").field() == "check");
  CHECK(error_of("suite:\n  - \"volume: K=ball(\"\n").field() == "K");
  CHECK(error_of("suite:\n  - \"quotient_holder: K=ball(3), L=cube(4), k=1\"\n").field() == "L");
  CHECK(error_of("suite:\n  - \"quotient_main: K=ball(3), L=ball(3), g=constant(2), k=1\"\n").field() == "g");
  CHECK(error_of("suite:\n  - \"main_proj: K=ball(3), L=ball(3), p=1\"\n").field() == "K");
  CHECK(error_of("suite:\n  - \"main_proj: K=cube(3), L=ball(3), p=0.5\"\n").field() == "p");
  CHECK(error_of("suite:\n  - \"brunn_identities: K=cube(7)\"\n").field() == "K");
  CHECK(error_of("samples: lots\nsuite: []\n").field() == "samples");
  CHECK(error_of("format: xml\nsuite: []\n").field() == "format");
  CHECK(error_of("colour: red\nsuite: []\n").field() == "colour");
  CHECK(error_of("seed: 1\n").field() == "suite");
  CHECK(error_of("defaults:\n  K: ball(3)\nsuite:\n  - \"volume: K=ball(3)\"\n").field() == "K");
  CHECK(error_of("suite:\n  - [unclosed\n").line() > 0);
}

TEST_CASE("worked examples") {
  const auto rows = run_suite(parse_config("suite:\n  - \"quotient_holder: K=ball(3), L=ball(3), k=1\"\n"));
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].report.verdict == Verdict::holds);
  CHECK(rows[0].report.lhs.value == 1.0);
  const auto constants = run_suite(parse_config("suite:\n  - \"constants: gamma_max_n=64\"\n"));
  CHECK_FALSE(any_violated(constants));
  CHECK(constants.size() >= 5);
}

TEST_CASE("reruns are byte-identical and independent of --jobs") {
  RunConfig cfg = parse_config(kSmall);
  const std::string first = csv_of(run_suite(cfg));
  const std::string second = csv_of(run_suite(cfg));
  CHECK(first == second);
  cfg.jobs = 3;
  CHECK(csv_of(run_suite(cfg)) == first);
  cfg.seed = 43;
  CHECK(csv_of(run_suite(cfg)) != first);
}

TEST_CASE("CSV and JSON carry identical numbers") {
  const auto rows = run_suite(parse_config(kSmall));
  const auto csv = parse_csv(csv_of(rows));
  const auto json = nlohmann::json::parse(json_of(rows));
  REQUIRE(csv.size() == rows.size() + 1);
  REQUIRE(json.size() == rows.size());
  CHECK(csv[0] == kCsvColumns);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& line = csv[i + 1];
    REQUIRE(line.size() == kCsvColumns.size());
    for (const char* col : {"lhs", "lhs_se", "rhs", "rhs_se", "margin_se_units"}) {
      const std::size_t c = std::find(kCsvColumns.begin(), kCsvColumns.end(), col) - kCsvColumns.begin();
      const double from_csv = std::strtod(line[c].c_str(), nullptr);
      const double from_json = json[i][col].get<double>();
      CHECK(from_csv == from_json);
    }
    CHECK(line[0] == json[i]["check_id"].get<std::string>());
    CHECK(line[12] == json[i]["verdict"].get<std::string>());
  }
}

TEST_CASE("built-in suite validates and matches the shipped config") {
  const RunConfig cfg = parse_config(default_suite_yaml());
  validate(cfg);
  int quotient = 0;
  for (const auto& s : cfg.suite) quotient += s.id == "quotient_main" || s.id == "quotient_holder";
  CHECK(quotient >= 50);
  std::vector<std::string> ids;
  for (const auto& c : checker_catalog()) {
    bool used = false;
    for (const auto& s : cfg.suite) used |= s.id == c.id;
    CHECK_MESSAGE(used, "checker missing from the suite: " << c.id);
  }
  CHECK(read_file(TOMO_SUITE_FILE) == default_suite_yaml());
}

TEST_CASE("command line exit status") {
  const fs::path dir = fs::temp_directory_path() / "tomo_cli_test";
  fs::create_directories(dir);
  const fs::path err = dir / "stderr.txt";
  auto write = [&](const char* name, const std::string& text) {
    std::ofstream(dir / name) << text;
    return (dir / name).string();
  };

  const std::string ok = write("ok.yaml", kSmall);
  CHECK(run_cli("run " + ok + " -q --out " + (dir / "a.csv").string(), err) == 0);
  CHECK(run_cli("run " + ok + " -q --jobs 2 --out " + (dir / "b.csv").string(), err) == 0);
  CHECK(read_file(dir / "a.csv") == read_file(dir / "b.csv"));
  CHECK(run_cli("run " + ok + " -q --format json --out " + (dir / "a.json").string(), err) == 0);
  CHECK(nlohmann::json::parse(read_file(dir / "a.json")).size() == 5);

  const std::string bad = write("bad.yaml", "suite:\n  - check: quotient_holder\n    K: ball(3)\n    L: ball(3)\n    k: 3\n");
  CHECK(run_cli("run " + bad, err) == 2);
  CHECK(read_file(err).find("line 5: field 'k'") != std::string::npos);

  // a budget far below the isotropic constant trips the Milman row
  const std::string tripped = write("trip.yaml", "samples: 20000\nsuite:\n  - \"isotropy: K=cube(3), milman_budget=0.001\"\n");
  CHECK(run_cli("run " + tripped + " -q --out " + (dir / "t.csv").string(), err) == 1);
  CHECK(read_file(dir / "t.csv").find("violated") != std::string::npos);

  CHECK(run_cli("run " + ok + " -q --out " + (dir / "missing" / "x.csv").string(), err) == 3);
  CHECK(run_cli("run " + ok + " --format xml", err) != 0);
  CHECK(run_cli("list-checkers", err) == 0);
  CHECK(run_cli("list-bodies", err) == 0);
  fs::remove_all(dir);
}
