// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.
#include "tomo/catalog.hpp"
#include "tomo/config.hpp"
#include "tomo/constants.hpp"
#include "tomo/harness.hpp"
#include "tomo/radon.hpp"
#include "tomo/runner.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <thread>

using namespace tomo;
namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kSeed = 20240917;

struct Result {
  bool pass = true;
  std::string detail;
  // first few failures only
  void fail(const std::string& why) {
    if (pass || detail.size() < 400) detail += (detail.empty() ? "" : "; ") + why;
    pass = false;
  }
  void expect(bool ok, const std::string& why) {
    if (!ok) fail(why);
  }
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

std::string where(const InequalityReport& r) {
  std::string s = r.check_id + " " + r.body_k;
  if (!r.body_l.empty()) s += "/" + r.body_l;
  s += " n=" + std::to_string(r.n) + " k=" + std::to_string(r.k);
  if (r.p) s += " p=" + fmt(*r.p);
  return s;
}

bool passing(Verdict v) { return v == Verdict::holds || v == Verdict::holds_with_bound; }

bool within_se(const Estimate& a, const Estimate& b, double z = 3.0) {
  return std::abs(a.value - b.value) <= z * pooled_se(a, b);
}

// Closed forms computed here with std::tgamma, not through the library.
double ball_volume(int n) { return std::pow(std::numbers::pi, n / 2.0) / std::tgamma(n / 2.0 + 1.0); }
double log_ball_volume(int n) { return n / 2.0 * std::log(std::numbers::pi) - std::lgamma(n / 2.0 + 1.0); }

const ConstantUsed* constant_named(const InequalityReport& r, const std::string& symbol) {
  for (const auto& c : r.constants)
    if (c.symbol == symbol) return &c;
  return nullptr;
}

std::vector<const InequalityReport*> rows_with(const std::vector<ReportRow>& rows, const std::string& id) {
  std::vector<const InequalityReport*> out;
  for (const auto& r : rows)
    if (r.report.check_id == id) out.push_back(&r.report);
  return out;
}

bool starts_with(const std::string& s, const std::string& prefix) { return s.rfind(prefix, 0) == 0; }

std::string csv_text(const std::vector<ReportRow>& rows) {
  std::ostringstream os;
  write_csv(os, rows, false);
  return os.str();
}

void save(const fs::path& path, const std::string& text) { std::ofstream(path, std::ios::binary) << text; }

std::string load(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// ---------------------------------------------------------------- criteria

Result volumes() {
  Result res;
  const McConfig cfg{100'000, 1, 32};
  const Rng rng(kSeed, hash_label("volumes"));
  for (int n = 2; n <= 8; ++n) {
    double fact = std::tgamma(n + 1.0);
    const std::pair<StarBody, double> cases[] = {{StarBody::ball(n), ball_volume(n)},
                                                 {StarBody::cube(n), std::pow(2.0, n)},
                                                 {StarBody::lp_ball(n, 1.0), std::pow(2.0, n) / fact}};
    for (const auto& [body, exact] : cases) {
      const Estimate v = polar_volume(body, cfg, rng.split(body.tag()));
      const double tol = std::max(3.0 * v.std_error, 1e-12 * exact);
      res.expect(std::abs(v.value - exact) <= tol, body.tag() + " " + fmt(v.value) + " vs " + fmt(exact));
      res.expect(v.std_error / v.value <= 0.01, body.tag() + " relative SE " + fmt(v.std_error / v.value));
    }
  }
  if (res.pass) res.detail = "21 bodies, n = 2..8";
  return res;
}

Result sections() {
  Result res;
  const McConfig cfg{100'000, 1, 32};
  Rng rng(kSeed, hash_label("sections"));
  for (int i = 0; i < 20; ++i) {
    const int n = 2 + i % 5;
    const int k = 1 + (i / 5) % (n - 1);
    const Subspace h = rng.grassmann(n, n - k);
    const Estimate s = integrate_section(StarBody::ball(n), Density::constant(), h, cfg, rng.split(i));
    const double exact = ball_volume(n - k);
    res.expect(std::abs(s.value - exact) <= std::max(3.0 * s.std_error, 1e-12 * exact),
               "ball(" + std::to_string(n) + ") k=" + std::to_string(k) + " " + fmt(s.value) + " vs " + fmt(exact));
  }
  Mat diag(3, 1);
  diag << 1, 1, 1;
  const Subspace h = Subspace::complement(diag);
  const StarBody cube = StarBody::cube(3);
  const Estimate mc = integrate_section(cube, Density::constant(), h, cfg, rng.split("diagonal"));
  const double hexagon = 3.0 * std::sqrt(3.0);
  res.expect(std::abs(mc.value - hexagon) <= 3.0 * mc.std_error,
             "cube diagonal MC " + fmt(mc.value) + " +- " + fmt(mc.std_error));
  const auto exact = exact_section_volume(cube, h);
  res.expect(exact && std::abs(*exact - hexagon) <= 1e-9, "cube diagonal exact slicing");
  if (res.pass)
    res.detail = "20 random H; cube diagonal " + fmt(mc.value) + " +- " + fmt(mc.std_error) + " vs 3 sqrt 3";
  return res;
}

Result constants_ranges() {
  Result res;
  for (int n = 2; n <= 64; ++n)
    for (int k = 1; k < n; ++k) {
      const double g = constants::gamma_nk(n, k);
      const double oracle = std::exp((n - k) / static_cast<double>(n) * log_ball_volume(n) - log_ball_volume(n - k));
      res.expect(std::exp(-k / 2.0) < g && g < 1.0, "gamma(" + std::to_string(n) + "," + std::to_string(k) + ")");
      res.expect(std::abs(g - oracle) <= 1e-12 * oracle, "gamma oracle n=" + std::to_string(n));
    }
  for (int n = 2; n <= 200; ++n)
    res.expect(constants::c_n1(n) <= std::sqrt(std::numbers::e), "c(" + std::to_string(n) + ",1)");
  double lo = 1e300, hi = 0.0;
  for (int n = 3; n <= 20; ++n)
    for (int k = 1; k < n; ++k) {
      const double e = constants::sqrt_envelope(n, k);
      lo = std::min(lo, e);
      hi = std::max(hi, e);
      res.expect(e >= 0.2 && e <= 5.0, "envelope(" + std::to_string(n) + "," + std::to_string(k) + ")=" + fmt(e));
    }
  if (res.pass) res.detail = "envelope range [" + fmt(lo) + ", " + fmt(hi) + "]";
  return res;
}

Result blaschke() {
  Result res;
  const McConfig cfg{100'000, 1, 32};
  const Rng rng(kSeed, hash_label("blaschke"));
  for (const char* d : {"ball(2)", "ball(3)", "cube(2)"}) {
    const auto r = blaschke_check(make_catalog_body(d), 1, cfg, rng.split(d));
    const double z = (r.rhs.value - r.lhs.value) / pooled_se(r.lhs, r.rhs);
    res.expect(within_se(r.lhs, r.rhs), std::string(d) + " off by " + fmt(z) + " SE");
    res.detail += (res.detail.empty() ? "" : ", ") + std::string(d) + " " + fmt(z) + " SE";
  }
  return res;
}

Result quotient(const std::vector<ReportRow>& suite) {
  Result res;
  int count = 0, equal = 0;
  for (const char* id : {"quotient_main", "quotient_holder"})
    for (const auto* r : rows_with(suite, id)) {
      ++count;
      res.expect(passing(r->verdict), where(*r) + " " + to_string(r->verdict));
      if (r->body_k == r->body_l) {
        ++equal;
        res.expect(std::abs(r->lhs.value - 1.0) <= 1e-9 && r->rhs.value >= 1.0 - 1e-12,
                   where(*r) + " K=L gives lhs " + fmt(r->lhs.value) + " rhs " + fmt(r->rhs.value));
      }
    }
  res.expect(count >= 50, "only " + std::to_string(count) + " instances");
  res.expect(equal > 0, "no K=L instances");
  if (res.pass) res.detail = std::to_string(count) + " instances, " + std::to_string(equal) + " with K=L";
  return res;
}

Result arb_ovr(const std::vector<ReportRow>& suite) {
  Result res;
  double worst = 0.0;
  const auto rows = rows_with(suite, "arb_ovr");
  for (const auto* r : rows) {
    worst = std::max(worst, r->lhs.value);
    res.expect(r->lhs.value <= 10.0, where(*r) + " C_required " + fmt(r->lhs.value));
    if (starts_with(r->body_k, "ball(")) {
      const double cap = std::pow(r->n / static_cast<double>(r->n - r->k), 1.0 / r->k) + 0.1;
      res.expect(r->lhs.value <= cap, where(*r) + " ball C_required " + fmt(r->lhs.value) + " > " + fmt(cap));
    }
  }
  res.expect(!rows.empty(), "no arb_ovr rows");
  if (res.pass) res.detail = std::to_string(rows.size()) + " instances, max C_required " + fmt(worst);
  return res;
}

Result grinberg(const std::vector<ReportRow>& suite) {
  Result res;
  int seen = 0;
  for (const auto* r : rows_with(suite, "grinberg")) {
    if (r->k != 1) continue;
    ++seen;
    if (starts_with(r->body_k, "ball("))
      res.expect(within_se(r->lhs, r->rhs), where(*r) + " ball difference " + fmt(r->lhs.value - r->rhs.value));
    else
      res.expect(passing(r->verdict), where(*r) + " " + to_string(r->verdict));
  }
  res.expect(seen == 9, std::to_string(seen) + " k=1 instances, expected 9");
  if (res.pass) res.detail = "cube, cross-polytope and ball for n = 3..5, 500 subspaces each";
  return res;
}

Result dpp(const std::vector<ReportRow>& suite) {
  Result res;
  int equality = 0, gaussian = 0;
  for (const auto* r : rows_with(suite, "dpp")) {
    if (r->body_k.find("[gaussian]") != std::string::npos) {
      ++gaussian;
      res.expect(passing(r->verdict), where(*r) + " " + to_string(r->verdict));
    } else if (starts_with(r->body_k, "ball(")) {
      ++equality;
      res.expect(within_se(r->lhs, r->rhs), where(*r) + " ball equality " + fmt(r->lhs.value) + " vs " + fmt(r->rhs.value));
    }
  }
  res.expect(equality >= 7 && gaussian >= 14, "missing instances");
  if (res.pass)
    res.detail = std::to_string(equality) + " ball-indicator equalities, " + std::to_string(gaussian) + " Gaussian";
  return res;
}

Result barany_furedi() {
  Result res;
  CheckOptions opts;
  opts.mc.workers = std::max(1u, std::thread::hardware_concurrency());
  const Rng rng(kSeed, hash_label("barany_furedi"));
  double worst = 0.0;
  for (int m = 2; m <= 6; ++m)
    for (int s : {m + 1, 2 * m, 10 * m}) {
      const auto r = check_barany_furedi(m, s, 10'000, opts, rng.split(std::to_string(m) + "/" + std::to_string(s)));
      worst = std::max(worst, r.lhs.value);
      res.expect(r.lhs.value <= 10.0, where(r) + " statistic " + fmt(r.lhs.value));
    }
  if (res.pass)
    res.detail = "max statistic " + fmt(worst) + " over 15 (m,s), 10^4 trials, " + std::to_string(opts.mc.workers) +
                 " workers";
  return res;
}

Result brunn_section(const std::vector<ReportRow>& suite) {
  Result res;
  int pairs_rows = 0;
  std::vector<double> lutwak_p;
  for (const char* id : {"minkowski.random_pairs", "lutwak.random_pairs"})
    for (const auto* r : rows_with(suite, id)) {
      ++pairs_rows;
      if (r->p && std::string(id) == "lutwak.random_pairs") lutwak_p.push_back(*r->p);
      const auto* slack = constant_named(*r, "min_relative_slack");
      res.expect(slack && slack->value >= -1e-9, where(*r) + " slack " + (slack ? fmt(slack->value) : "missing"));
      res.expect(!r->notes.empty() && r->notes[0].find("200") != std::string::npos, where(*r) + " not 200 pairs");
    }
  std::sort(lutwak_p.begin(), lutwak_p.end());
  res.expect(pairs_rows == 4 && lutwak_p == std::vector<double>{1.5, 2.0, 3.0}, "random pair rows missing");
  for (const char* id : {"brunn.v1_self", "brunn.vp_self", "brunn.pi1"})
    for (const auto* r : rows_with(suite, id)) {
      const double scale = std::max({1.0, std::abs(r->lhs.value), std::abs(r->rhs.value)});
      res.expect(std::abs(r->lhs.value - r->rhs.value) <= 1e-10 * scale, where(*r) + " identity gap");
    }
  double worst_z = 0.0;
  const auto cauchy = rows_with(suite, "brunn.cauchy");
  for (const auto* r : cauchy) {
    worst_z = std::max(worst_z, std::abs(r->lhs.value - r->rhs.value) / pooled_se(r->lhs, r->rhs));
    res.expect(within_se(r->lhs, r->rhs), where(*r) + " Cauchy vs shadow");
  }
  res.expect(!cauchy.empty(), "no Cauchy rows");
  if (res.pass) res.detail = "random pairs slack >= -1e-9, identities to 1e-10, Cauchy worst " + fmt(worst_z) + " SE";
  return res;
}

Result main_proj(const std::vector<ReportRow>& suite) {
  Result res;
  int exact = 0, equal = 0;
  bool cube_p1 = false, ball_p2 = false;
  for (const auto* r : rows_with(suite, "main_proj")) {
    const auto* d = constant_named(*r, "d_vr(L,Pi_p)");
    if (!d || !starts_with(d->provenance, "exact-one")) continue;
    ++exact;
    cube_p1 |= starts_with(r->body_l, "cube(") && r->p && *r->p == 1.0;
    ball_p2 |= starts_with(r->body_l, "ball(") && r->p && *r->p == 2.0;
    res.expect(r->verdict == Verdict::holds, where(*r) + " " + to_string(r->verdict));
    if (r->body_k == r->body_l) {
      ++equal;
      res.expect(std::abs(r->lhs.value - r->rhs.value) <= 1e-10 * std::max(1.0, r->rhs.value), where(*r) + " K=L gap");
    }
  }
  res.expect(cube_p1 && ball_p2 && equal > 0, "missing exact-one instances");
  if (res.pass) res.detail = std::to_string(exact) + " exact-one instances, " + std::to_string(equal) + " with K=L";
  return res;
}

Result min_projection(const std::vector<ReportRow>& suite) {
  Result res;
  const auto rows = rows_with(suite, "min_projection");
  for (const auto* r : rows) res.expect(passing(r->verdict), where(*r) + " " + to_string(r->verdict));
  res.expect(rows.size() == 6, std::to_string(rows.size()) + " min-projection instances");
  double worst = 0.0;
  for (const auto* r : rows_with(suite, "john_ceiling")) {
    const double ratio = r->lhs.value / std::sqrt(static_cast<double>(r->n));
    worst = std::max(worst, ratio);
    res.expect(r->lhs.value <= std::sqrt(static_cast<double>(r->n)) * (1 + 1e-6), where(*r) + " " + fmt(r->lhs.value));
  }
  if (res.pass) res.detail = "cube and cross-polytope n = 3..5; max d_vr / sqrt n = " + fmt(worst);
  return res;
}

Result isotropy(const std::vector<ReportRow>& suite, double& seconds) {
  Result res;
  const auto t0 = std::chrono::steady_clock::now();
  CheckOptions opts;
  const auto rows = check_isotropy(make_catalog_body("normalized(cube(3))"), 1'000'000, opts,
                                   Rng(kSeed, hash_label("isotropy")));
  seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const double target = 1.0 / std::sqrt(12.0);
  double l_k = 0.0, spread = 1.0;
  for (const auto& r : rows) {
    if (r.check_id == "isotropy.l_k") l_k = r.lhs.value;
    if (r.check_id == "isotropy.spread") spread = r.lhs.value;
  }
  res.expect(std::abs(l_k - target) <= 1e-3, "L_K " + fmt(l_k) + " vs " + fmt(target));
  res.expect(spread <= 0.02, "spread " + fmt(spread));
  res.expect(seconds <= 120.0, "took " + fmt(seconds) + " s");
  const auto milman = rows_with(suite, "isotropy.milman");
  for (const auto* r : milman) res.expect(passing(r->verdict), where(*r) + " Milman " + to_string(r->verdict));
  res.expect(!milman.empty(), "no Milman rows");
  if (res.pass)
    res.detail = "L_K " + fmt(l_k) + " (1/sqrt 12 = " + fmt(target) + "), spread " + fmt(spread) + ", Milman on " +
                 std::to_string(milman.size()) + " bodies";
  return res;
}

Result mean_value(const std::vector<ReportRow>& suite) {
  Result res;
  int seen = 0;
  for (const auto* r : rows_with(suite, "mean_value")) {
    const bool wanted = (starts_with(r->body_k, "cube(") && r->body_k.find("[gaussian]") != std::string::npos) ||
                        (starts_with(r->body_k, "ball(") && r->body_k.find("[gaussian]") != std::string::npos) ||
                        (starts_with(r->body_k, "lp_ball(") && r->body_k.find('[') == std::string::npos);
    if (!wanted) continue;
    ++seen;
    res.expect(passing(r->verdict), where(*r) + " " + to_string(r->verdict));
  }
  res.expect(seen == 21, std::to_string(seen) + " instances, expected 21");
  if (res.pass) res.detail = "21 instances, n <= 5, k in {1, 2}";
  return res;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance run"};
  std::string out_dir = "acceptance_reports";
  app.add_option("--out", out_dir, "directory for suite reports");
  CLI11_PARSE(app, argc, argv);
  fs::create_directories(out_dir);

  RunConfig cfg = parse_config(default_suite_yaml());
  cfg.jobs = std::max(1u, std::thread::hardware_concurrency());

  using clock = std::chrono::steady_clock;
  auto t0 = clock::now();
  const auto suite = run_suite(cfg);
  const double suite_seconds = std::chrono::duration<double>(clock::now() - t0).count();
  const std::string first = csv_text(suite);
  save(fs::path(out_dir) / "default-suite.csv", first);
  std::printf("default suite: %zu rows in %.1f s\n", suite.size(), suite_seconds);

  std::vector<std::pair<std::string, std::function<Result()>>> criteria = {
      {"volumes", volumes},
      {"sections", sections},
      {"constants", constants_ranges},
      {"Blaschke-Petkantschin", blaschke},
      {"quotient inequalities", [&] { return quotient(suite); }},
      {"outer volume ratio constant", [&] { return arb_ovr(suite); }},
      {"Grinberg", [&] { return grinberg(suite); }},
      {"dual section inequality", [&] { return dpp(suite); }},
      {"Barany-Furedi envelope", barany_furedi},
      {"mixed volumes and projections", [&] { return brunn_section(suite); }},
      {"projection comparison", [&] { return main_proj(suite); }},
      {"minimal projection", [&] { return min_projection(suite); }},
      {"isotropic constant",
       [&] {
         double s = 0.0;
         return isotropy(suite, s);
       }},
      {"mean value inequality", [&] { return mean_value(suite); }},
      {"determinism",
       [&] {
         Result res;
         const auto again = run_suite(cfg);
         const fs::path rerun = fs::path(out_dir) / "default-suite-rerun.csv";
         save(rerun, csv_text(again));
         res.expect(load(fs::path(out_dir) / "default-suite.csv") == load(rerun), "report files differ");
         if (res.pass) res.detail = std::to_string(again.size()) + " rows, files byte-identical";
         return res;
       }},
  };

  std::ofstream summary(fs::path(out_dir) / "acceptance.txt");
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    t0 = clock::now();
    Result r;
    try {
      r = criteria[i].second();
    } catch (const std::exception& e) {
      r.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(clock::now() - t0).count();
    char line[1024];
    std::snprintf(line, sizeof line, "criterion %2zu %s  %s (%.1f s): %s", i + 1, r.pass ? "PASS" : "FAIL",
                  criteria[i].first.c_str(), secs, r.detail.c_str());
    std::printf("%s\n", line);
    std::fflush(stdout);
    summary << line << "\n";
    failed += !r.pass;
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed ? 1 : 0;
}
