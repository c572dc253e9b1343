// tomo: run checker suites and write reports.
#include "tomo/catalog.hpp"
#include "tomo/config.hpp"
#include "tomo/runner.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>

namespace {

enum Exit { ok = 0, violated = 1, bad_config = 2, io_error = 3 };

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical geometric tomography: section and projection inequalities on a body catalog"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> samples;
  std::optional<int> workers;
  std::optional<int> jobs;
  std::string format;
  std::string out;
  bool timing = false;
  bool quiet = false;

  auto* run = app.add_subcommand("run", "run a suite config (or the built-in 'default-suite')");
  run->add_option("config", config_path, "YAML config path, or default-suite")->required();
  run->add_option("--seed", seed, "override the base seed");
  run->add_option("--samples", samples, "override the default Monte Carlo sample count")->check(CLI::Range(2ul, 1ul << 40));
  run->add_option("--workers", workers, "worker partition for Monte Carlo estimators (changes results)")
      ->check(CLI::Range(1, 1024));
  run->add_option("--jobs", jobs, "checks run at once (does not change results)")->check(CLI::Range(1, 1024));
  run->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  run->add_option("--out", out, "report path, '-' for stdout");
  run->add_flag("--timing", timing, "fill the seconds column with wall time (breaks byte-identical reruns)");
  run->add_flag("-q,--quiet", quiet, "no progress on stderr");

  auto* list_checkers = app.add_subcommand("list-checkers", "list checker ids and their parameters");
  auto* list_bodies = app.add_subcommand("list-bodies", "list body descriptors");
  auto* print_suite = app.add_subcommand("print-suite", "print the built-in default-suite config");
  auto* validate_cmd = app.add_subcommand("validate", "parse and validate a config without running it");
  validate_cmd->add_option("config", config_path, "YAML config path")->required();

  CLI11_PARSE(app, argc, argv);

  if (*list_checkers) {
    for (const auto& c : tomo::checker_catalog()) std::printf("%-22s %-40s %s\n", c.id.c_str(), c.params.c_str(), c.summary.c_str());
    std::printf("\nsuite-wide options (defaults: or per check): samples section_samples net_random refine_steps\n"
                "  direction_random c_budget milman_budget hensley_low hensley_high radial_nodes workers loewner_tol seed\n"
                "densities: one | constant(c) | gaussian | halfspace | halfspace(u1, .., un)\n");
    return ok;
  }
  if (*list_bodies) {
    for (const auto& line : tomo::catalog_help()) std::printf("%s\n", line.c_str());
    return ok;
  }
  if (*print_suite) {
    std::fputs(tomo::default_suite_yaml().c_str(), stdout);
    return ok;
  }

  tomo::RunConfig cfg;
  try {
    cfg = tomo::load_config(config_path);
    if (seed) cfg.seed = *seed;
    if (samples) cfg.samples = *samples;
    if (workers) cfg.workers = *workers;
    if (jobs) cfg.jobs = *jobs;
    if (!format.empty()) cfg.format = tomo::parse_format(format);
    if (!out.empty()) cfg.out = out;
    if (timing) cfg.timing = true;
    tomo::validate(cfg);
  } catch (const tomo::ConfigError& e) {
    std::fprintf(stderr, "%s: %s\n", config_path.c_str(), e.what());
    return bad_config;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "%s: %s\n", config_path.c_str(), e.what());
    return bad_config;
  }
  if (*validate_cmd) {
    std::printf("%s: %zu checks ok\n", config_path.c_str(), cfg.suite.size());
    return ok;
  }

  std::vector<tomo::ReportRow> rows;
  try {
    rows = tomo::run_suite(cfg, [&](std::size_t done, std::size_t total) {
      if (!quiet) std::fprintf(stderr, "\r[%zu/%zu]", done, total);
    });
    if (!quiet) std::fprintf(stderr, "\n");
  } catch (const tomo::ConfigError& e) {
    std::fprintf(stderr, "\n%s: %s\n", config_path.c_str(), e.what());
    return bad_config;
  }

  try {
    tomo::write_report(cfg.out, cfg.format, rows, cfg.timing);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return io_error;
  }

  std::size_t counts[5] = {};
  for (const auto& r : rows) ++counts[static_cast<int>(r.report.verdict)];
  if (!quiet)
    std::fprintf(stderr, "%zu rows: %zu holds, %zu holds-with-bound, %zu inconclusive, %zu reported, %zu violated\n",
                 rows.size(), counts[0], counts[1], counts[3], counts[4], counts[2]);
  for (const auto& r : rows)
    if (r.report.verdict == tomo::Verdict::violated)
      std::fprintf(stderr, "VIOLATED %s K=%s L=%s n=%d k=%d\n", r.report.check_id.c_str(), r.report.body_k.c_str(),
                   r.report.body_l.c_str(), r.report.n, r.report.k);
  return tomo::any_violated(rows) ? violated : ok;
}
