#include "tomo/runner.hpp"

#include "tomo/catalog.hpp"
#include "tomo/harness.hpp"
#include "tomo/radon.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <charconv>
#include <exception>
#include <limits>
#include <mutex>
#include <set>
#include <thread>

namespace tomo {

namespace {

using Runnable = std::function<std::vector<InequalityReport>(const Rng&)>;

const std::set<std::string> kOptionKeys = {
    "samples",          "section_samples", "net_random",    "refine_steps", "direction_random", "c_budget",
    "milman_budget",    "hensley_low",     "hensley_high",  "radial_nodes", "workers",          "loewner_tol",
};

// Largest ambient dimension for checks that take hulls of projections.
constexpr int kProjectionDimCap = 6;

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

// "[1, 2, 3]", "(1, 2, 3)" or "1, 2, 3"
std::vector<std::string> list_items(std::string s) {
  s = trim(s);
  if (s.size() >= 2 && ((s.front() == '[' && s.back() == ']') || (s.front() == '(' && s.back() == ')')))
    s = s.substr(1, s.size() - 2);
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == ',') {
      const std::string item = trim(std::string_view(s).substr(start, i - start));
      if (!item.empty()) out.push_back(item);
      start = i + 1;
    }
  }
  return out;
}

bool parse_double(const std::string& s, double& v) {
  if (s == "inf" || s == "infinity") {
    v = std::numeric_limits<double>::infinity();
    return true;
  }
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  return ec == std::errc() && p == s.data() + s.size();
}

class Params {
 public:
  Params(const CheckSpec& spec, const RunConfig& cfg) : spec_(spec), cfg_(cfg) {}

  bool has(const std::string& key) const { return spec_.params.count(key) > 0; }

  int line(const std::string& key) const {
    auto it = spec_.param_lines.find(key);
    if (it != spec_.param_lines.end()) return it->second;
    auto d = cfg_.default_lines.find(key);
    if (d != cfg_.default_lines.end() && kOptionKeys.count(key)) return d->second;
    return spec_.line;
  }

  [[noreturn]] void fail(const std::string& key, const std::string& msg) const {
    throw ConfigError(line(key), key, msg + " (check '" + spec_.id + "')");
  }

  std::optional<std::string> find(const std::string& key) {
    used_.insert(key);
    auto it = spec_.params.find(key);
    if (it != spec_.params.end()) return it->second;
    if (kOptionKeys.count(key)) {
      auto d = cfg_.defaults.find(key);
      if (d != cfg_.defaults.end()) return d->second;
    }
    return std::nullopt;
  }

  std::string raw(const std::string& key) {
    auto v = find(key);
    if (!v) fail(key, "required");
    return *v;
  }

  long integer(const std::string& key, std::optional<long> fallback = std::nullopt) {
    auto v = find(key);
    if (!v) {
      if (!fallback) fail(key, "required");
      return *fallback;
    }
    long out = 0;
    auto [p, ec] = std::from_chars(v->data(), v->data() + v->size(), out);
    if (ec != std::errc() || p != v->data() + v->size()) fail(key, "expected an integer, got '" + *v + "'");
    return out;
  }

  double real(const std::string& key, std::optional<double> fallback = std::nullopt) {
    auto v = find(key);
    if (!v) {
      if (!fallback) fail(key, "required");
      return *fallback;
    }
    double out = 0.0;
    if (!parse_double(*v, out)) fail(key, "expected a number, got '" + *v + "'");
    return out;
  }

  StarBody body(const std::string& key, const LoewnerOptions& lo) {
    const std::string d = raw(key);
    try {
      return make_catalog_body(d, lo);
    } catch (const std::exception& e) {
      fail(key, e.what());
    }
  }

  Density density(const std::string& key, int n, std::optional<std::string> fallback = std::nullopt) {
    auto v = find(key);
    if (!v) {
      if (!fallback) fail(key, "required");
      v = fallback;
    }
    const std::string s = trim(*v);
    if (s == "one" || s == "constant" || s == "1") return Density::constant(1.0);
    if (s == "gaussian") return Density::gaussian();
    if (s.rfind("constant(", 0) == 0 && s.back() == ')') {
      double c = 0.0;
      if (!parse_double(trim(s.substr(9, s.size() - 10)), c) || !(c > 0.0)) fail(key, "bad constant in '" + s + "'");
      return Density::constant(c);
    }
    if (s == "halfspace") return Density::halfspace_indicator(Vec::Unit(n, 0));
    if (s.rfind("halfspace(", 0) == 0 && s.back() == ')') {
      const auto items = list_items(s.substr(9));
      if (static_cast<int>(items.size()) != n) fail(key, "halfspace normal needs " + std::to_string(n) + " coordinates");
      Vec u(n);
      for (int i = 0; i < n; ++i)
        if (!parse_double(items[i], u[i])) fail(key, "bad coordinate '" + items[i] + "'");
      if (!(u.norm() > 0.0)) fail(key, "halfspace normal must be nonzero");
      return Density::halfspace_indicator(u / u.norm());
    }
    fail(key, "unknown density '" + s + "' (one, constant(c), gaussian, halfspace, halfspace(u1,..,un))");
  }

  /// coord(i, j, ...) or perp(x1, ..., xn)
  Subspace subspace(const std::string& key, int n) {
    const std::string s = trim(raw(key));
    const auto open = s.find('(');
    if (open == std::string::npos || s.back() != ')') fail(key, "expected coord(...) or perp(...)");
    const std::string head = s.substr(0, open);
    const auto items = list_items(s.substr(open));
    if (head == "coord") {
      std::vector<int> axes;
      for (const auto& it : items) {
        double a = 0.0;
        if (!parse_double(it, a) || a < 0 || a >= n || a != std::floor(a)) fail(key, "bad axis '" + it + "'");
        axes.push_back(static_cast<int>(a));
      }
      if (axes.empty() || static_cast<int>(axes.size()) >= n) fail(key, "need between 1 and n-1 axes");
      try {
        return Subspace::coordinate(n, axes);
      } catch (const std::exception& e) {
        fail(key, e.what());
      }
    }
    if (head == "perp") {
      if (static_cast<int>(items.size()) != n) fail(key, "perp needs " + std::to_string(n) + " coordinates");
      Vec u(n);
      for (int i = 0; i < n; ++i)
        if (!parse_double(items[i], u[i])) fail(key, "bad coordinate '" + items[i] + "'");
      if (!(u.norm() > 0.0)) fail(key, "normal must be nonzero");
      return Subspace::hyperplane(Direction(u));
    }
    fail(key, "expected coord(...) or perp(...)");
  }

  int codim(const std::string& key, int n) {
    const long k = integer(key);
    if (k < 1 || k > n - 1)
      fail(key, "must satisfy 0 < k < n (got k=" + std::to_string(k) + ", n=" + std::to_string(n) + ")");
    return static_cast<int>(k);
  }

  void same_dim(const StarBody& a, const StarBody& b, const std::string& key) const {
    if (a.dim() != b.dim())
      fail(key, "dimension " + std::to_string(b.dim()) + " does not match " + std::to_string(a.dim()));
  }

  void dim_cap(const StarBody& b, int cap, const std::string& key) const {
    if (b.dim() > cap) fail(key, "dimension " + std::to_string(b.dim()) + " exceeds the cap " + std::to_string(cap));
  }

  void normalized(const Density& g, const std::string& key) const {
    if (g.constant_value && *g.constant_value != 1.0) fail(key, "needs g(0) = sup g = 1");
  }

  CheckOptions options() {
    CheckOptions o;
    o.mc.samples = static_cast<std::size_t>(integer("samples", static_cast<long>(cfg_.samples)));
    o.mc.workers = static_cast<int>(integer("workers", cfg_.workers));
    o.mc.radial_nodes = static_cast<int>(integer("radial_nodes", o.mc.radial_nodes));
    o.section_samples = static_cast<std::size_t>(integer("section_samples", static_cast<long>(o.section_samples)));
    o.net_random = static_cast<int>(integer("net_random", o.net_random));
    o.refine_steps = static_cast<int>(integer("refine_steps", o.refine_steps));
    o.direction_random = static_cast<int>(integer("direction_random", o.direction_random));
    o.c_budget = real("c_budget", o.c_budget);
    o.milman_budget = real("milman_budget", o.milman_budget);
    o.hensley_low = real("hensley_low", o.hensley_low);
    o.hensley_high = real("hensley_high", o.hensley_high);
    o.loewner.tol = real("loewner_tol", o.loewner.tol);
    if (o.mc.samples < 2) fail("samples", "must be at least 2");
    if (o.mc.workers < 1) fail("workers", "must be positive");
    if (o.mc.radial_nodes < 1 || o.mc.radial_nodes > 256) fail("radial_nodes", "must be in [1, 256]");
    if (o.section_samples < 2) fail("section_samples", "must be at least 2");
    if (o.net_random < 0) fail("net_random", "must be non-negative");
    if (o.refine_steps < 0) fail("refine_steps", "must be non-negative");
    if (o.direction_random < 0) fail("direction_random", "must be non-negative");
    if (!(o.c_budget > 0.0)) fail("c_budget", "must be positive");
    if (!(o.milman_budget > 0.0)) fail("milman_budget", "must be positive");
    if (!(o.hensley_low < o.hensley_high)) fail("hensley_low", "must be below hensley_high");
    if (!(o.loewner.tol > 0.0)) fail("loewner_tol", "must be positive");
    return o;
  }

  /// Rejects keys nobody asked for.
  void finish() const {
    for (const auto& [key, value] : spec_.params)
      if (!used_.count(key) && key != "seed") fail(key, "unknown field");
  }

 private:
  const CheckSpec& spec_;
  const RunConfig& cfg_;
  std::set<std::string> used_;
};

using Builder = std::function<Runnable(Params&)>;

Runnable one(std::function<InequalityReport(const Rng&)> f) {
  return [f = std::move(f)](const Rng& rng) { return std::vector<InequalityReport>{f(rng)}; };
}

struct Checker {
  CheckerInfo info;
  Builder build;
};

const std::vector<Checker>& registry() {
  static const std::vector<Checker> table = [] {
    std::vector<Checker> t;
    auto add = [&](std::string id, std::string params, std::string summary, Builder b) {
      t.push_back({{std::move(id), std::move(params), std::move(summary)}, std::move(b)});
    };

    add("volume", "K", "polar Monte Carlo volume against the closed form", [](Params& p) {
      auto o = p.options();
      auto K = p.body("K", o.loewner);
      return one([=](const Rng& r) { return check_volume(K, o, r); });
    });
    add("section", "K, H=coord(..)|perp(..)", "section volume against the exact slicing oracle", [](Params& p) {
      auto o = p.options();
      auto K = p.body("K", o.loewner);
      auto H = p.subspace("H", K.dim());
      if (!exact_section_volume(K, H)) p.fail("K", "no exact section volume for '" + K.tag() + "'");
      return one([=](const Rng& r) { return check_section(K, H, o, r); });
    });
    add("constants", "gamma_max_n, c_max_n", "gamma_{n,k}, c(n,1) and the sqrt envelope", [](Params& p) {
      const long gn = p.integer("gamma_max_n", 64);
      const long cn = p.integer("c_max_n", 200);
      if (gn < 3 || gn > 400) p.fail("gamma_max_n", "must be in [3, 400]");
      if (cn < 2 || cn > 2000) p.fail("c_max_n", "must be in [2, 2000]");
      return Runnable([=](const Rng&) { return check_constants(static_cast<int>(gn), static_cast<int>(cn)); });
    });
    add("blaschke", "K, s", "both sides of the Blaschke-Petkantschin formula", [](Params& p) {
      auto o = p.options();
      auto K = p.body("K", o.loewner);
      const long s = p.integer("s", 1);
      if (s < 1 || s > K.dim() - 1) p.fail("s", "must satisfy 1 <= s <= n-1");
      return one([=](const Rng& r) { return blaschke_check(K, static_cast<int>(s), o.mc, r); });
    });
    add("quotient_main", "K, L, f, g, k", "integral quotient inequality with densities", [](Params& p) {
      auto o = p.options();
      auto K = p.body("K", o.loewner);
      auto L = p.body("L", o.loewner);
      p.same_dim(K, L, "L");
      const int k = p.codim("k", K.dim());
      auto f = p.density("f", K.dim(), "one");
      auto g = p.density("g", K.dim(), "one");
      p.normalized(g, "g");
      return one([=](const Rng& r) { return check_quotient_main(K, L, f, g, k, o, r); });
    });
    add("quotient_holder", "K, L, k", "volume quotient inequality", [](Params& p) {
      auto o = p.options();
      auto K = p.body("K", o.loewner);
      auto L = p.body("L", o.loewner);
      p.same_dim(K, L, "L");
      const int k = p.codim("k", K.dim());
      return one([=](const Rng& r) { return check_quotient_holder(K, L, k, o, r); });
    });
    add("arb_ovr", "K, L, f, g, k", "constant required by the outer-volume-ratio version", [](Params& p) {
      auto o = p.options();
      auto K = p.body("K", o.loewner);
      auto L = p.body("L", o.loewner);
      p.same_dim(K, L, "L");
      const int k = p.codim("k", K.dim());
      auto f = p.density("f", K.dim(), "one");
      auto g = p.density("g", K.dim(), "one");
      p.normalized(g, "g");
      return one([=](const Rng& r) { return check_arb_ovr(K, L, f, g, k, o, r); });
    });
    add("grinberg", "K, k, trials", "E|K cap H|^n against the ball of the same volume", [](Params& p) {
      auto o = p.options();
      auto K = p.body("K", o.loewner);
      if (!K.closed_form_volume()) p.fail("K", "needs a closed-form volume");
      const int k = p.codim("k", K.dim());
      const long trials = p.integer("trials", 500);
      if (trials < 2) p.fail("trials", "must be at least 2");
      return one([=](const Rng& r) { return check_grinberg(K, k, static_cast<int>(trials), o, r); });
    });
    add("dpp", "K, g, k, trials", "sections of a density against gamma_{n,k}", [](Params& p) {
      auto o = p.options();
      auto K = p.body("K", o.loewner);
      const int k = p.codim("k", K.dim());
      auto g = p.density("g", K.dim(), "one");
      const long trials = p.integer("trials", 500);
      if (trials < 2) p.fail("trials", "must be at least 2");
      return one([=](const Rng& r) { return check_dpp(K, g, k, static_cast<int>(trials), o, r); });
    });
    add("barany_furedi", "m, s, trials", "normalized hull volume of s ellipsoid boundary points", [](Params& p) {
      auto o = p.options();
      const long m = p.integer("m");
      const long s = p.integer("s");
      const long trials = p.integer("trials", 10'000);
      if (m < 2 || m > 7) p.fail("m", "must be in [2, 7]");
      if (s < m + 1 || s >= 1000) p.fail("s", "must be in [m+1, 999]");
      if (trials < 1) p.fail("trials", "must be positive");
      return one([=](const Rng& r) {
        return check_barany_furedi(static_cast<int>(m), static_cast<int>(s), static_cast<int>(trials), o, r);
      });
    });
    add("hull_step", "K, k, trials", "constant implied by the hull-of-section-points step (reported)", [](Params& p) {
      auto o = p.options();
      auto K = p.body("K", o.loewner);
      if (!K.is_convex()) p.fail("K", "must be convex");
      const int k = p.codim("k", K.dim());
      const long trials = p.integer("trials", 200);
      if (trials < 1) p.fail("trials", "must be positive");
      return one([=](const Rng& r) { return check_hull_step(K, k, static_cast<int>(trials), o, r); });
    });
    add("main_proj", "K (polytope), L, p", "p-projection body comparison", [](Params& p) {
      auto o = p.options();
      auto K = p.body("K", o.loewner);
      auto L = p.body("L", o.loewner);
      p.same_dim(K, L, "L");
      p.dim_cap(K, kProjectionDimCap, "K");
      if (!K.polytope()) p.fail("K", "must be a polytope");
      if (!L.is_convex()) p.fail("L", "must be convex");
      const double pp = p.real("p", 1.0);
      if (!(pp >= 1.0) || !std::isfinite(pp)) p.fail("p", "must be a finite number >= 1");
      return one([=](const Rng& r) { return check_main_proj(K, L, pp, o, r); });
    });
    add("projection_dominance", "K, L", "|K| <= d_vr |L| when projections of L dominate", [](Params& p) {
      auto o = p.options();
      auto K = p.body("K", o.loewner);
      auto L = p.body("L", o.loewner);
      p.same_dim(K, L, "L");
      p.dim_cap(K, kProjectionDimCap, "K");
      if (!K.is_convex() || !K.is_symmetric()) p.fail("K", "must be origin-symmetric convex");
      if (!L.is_convex() || !L.is_symmetric()) p.fail("L", "must be origin-symmetric convex");
      return one([=](const Rng& r) { return check_projection_dominance(K, L, o, r); });
    });
    add("proj_section_mixed", "K, D, k", "projections of K against sections of D", [](Params& p) {
      auto o = p.options();
      auto K = p.body("K", o.loewner);
      auto D = p.body("D", o.loewner);
      p.same_dim(K, D, "D");
      p.dim_cap(K, kProjectionDimCap, "K");
      if (!K.is_convex()) p.fail("K", "must be convex");
      const int k = p.codim("k", K.dim());
      return one([=](const Rng& r) { return check_proj_section_mixed(K, D, k, o, r); });
    });
    add("minkowski", "K (polytope), L", "V_1(K, L) >= |K|^{(n-1)/n} |L|^{1/n}", [](Params& p) {
      auto o = p.options();
      auto K = p.body("K", o.loewner);
      auto L = p.body("L", o.loewner);
      p.same_dim(K, L, "L");
      if (!K.polytope()) p.fail("K", "must be a polytope");
      if (!L.is_convex()) p.fail("L", "must be convex");
      return one([=](const Rng&) { return check_minkowski(K, L); });
    });
    add("lutwak", "K (polytope), L, p", "V_p(K, L) >= |K|^{(n-p)/n} |L|^{p/n}", [](Params& p) {
      auto o = p.options();
      auto K = p.body("K", o.loewner);
      auto L = p.body("L", o.loewner);
      p.same_dim(K, L, "L");
      if (!K.polytope()) p.fail("K", "must be a polytope");
      if (!L.is_convex()) p.fail("L", "must be convex");
      const double pp = p.real("p", 2.0);
      if (!(pp >= 1.0) || !std::isfinite(pp)) p.fail("p", "must be a finite number >= 1");
      return one([=](const Rng&) { return check_lutwak(K, L, pp); });
    });
    add("random_pairs", "kind=minkowski|lutwak, n, pairs, p", "tightest of many random polytope pairs", [](Params& p) {
      const std::string kind = p.raw("kind");
      if (kind != "minkowski" && kind != "lutwak") p.fail("kind", "must be minkowski or lutwak");
      const long n = p.integer("n", 3);
      if (n < 2 || n > kProjectionDimCap) p.fail("n", "must be in [2, 6]");
      const long pairs = p.integer("pairs", 200);
      if (pairs < 1) p.fail("pairs", "must be positive");
      const double pp = kind == "lutwak" ? p.real("p", 2.0) : 1.0;
      if (!(pp >= 1.0) || !std::isfinite(pp)) p.fail("p", "must be a finite number >= 1");
      return one([=](const Rng& r) { return check_random_pairs(kind, static_cast<int>(n), static_cast<int>(pairs), pp, r); });
    });
    add("brunn_identities", "K (polytope)", "V_1(K,K), V_p(K,K), Pi_1 vs Pi, Cauchy vs shadow area", [](Params& p) {
      auto o = p.options();
      auto K = p.body("K", o.loewner);
      p.dim_cap(K, kProjectionDimCap, "K");
      if (!K.polytope()) p.fail("K", "must be a polytope");
      return Runnable([=](const Rng& r) { return check_brunn_identities(K, o, r); });
    });
    add("comparison", "K, L, f, g, k", "Radon transform comparison under section dominance", [](Params& p) {
      auto o = p.options();
      auto K = p.body("K", o.loewner);
      auto L = p.body("L", o.loewner);
      p.same_dim(K, L, "L");
      const int k = p.codim("k", K.dim());
      auto f = p.density("f", K.dim(), "one");
      auto g = p.density("g", K.dim(), "one");
      p.normalized(g, "g");
      return one([=](const Rng& r) { return check_comparison(K, L, f, g, k, o, r); });
    });
    add("slicing", "K, f, k", "slicing inequality for densities", [](Params& p) {
      auto o = p.options();
      auto K = p.body("K", o.loewner);
      const int k = p.codim("k", K.dim());
      auto f = p.density("f", K.dim(), "one");
      return one([=](const Rng& r) { return check_slicing(K, f, k, o, r); });
    });
    add("mean_value", "K, f, k", "mean value inequality for the Radon transform", [](Params& p) {
      auto o = p.options();
      auto K = p.body("K", o.loewner);
      const int k = p.codim("k", K.dim());
      auto f = p.density("f", K.dim(), "one");
      return one([=](const Rng& r) { return check_mean_value(K, f, k, o, r); });
    });
    add("proportional", "K, L, k", "empirical constant for sections of proportional dimension (reported)",
        [](Params& p) {
          auto o = p.options();
          auto K = p.body("K", o.loewner);
          auto L = p.body("L", o.loewner);
          p.same_dim(K, L, "L");
          const int k = p.codim("k", K.dim());
          return one([=](const Rng& r) { return check_proportional(K, L, k, o, r); });
        });
    add("min_projection", "K", "smallest hyperplane projection against sqrt(e) d_vr |K|^{(n-1)/n}", [](Params& p) {
      auto o = p.options();
      auto K = p.body("K", o.loewner);
      p.dim_cap(K, kProjectionDimCap, "K");
      if (!K.is_convex() || !K.is_symmetric()) p.fail("K", "must be origin-symmetric convex");
      return one([=](const Rng& r) { return check_min_projection(K, o, r); });
    });
    add("john_ceiling", "K", "Loewner-path bound on d_vr(K, Pi) against sqrt(n)", [](Params& p) {
      auto o = p.options();
      auto K = p.body("K", o.loewner);
      if (!K.is_convex() || !K.is_symmetric()) p.fail("K", "must be origin-symmetric convex");
      return one([=](const Rng&) { return check_john_ceiling(K, o); });
    });
    add("isotropy", "K, samples", "isotropic constant, spread, Hensley envelope, Milman bound", [](Params& p) {
      auto o = p.options();
      auto K = p.body("K", o.loewner);
      if (!K.is_symmetric()) p.fail("K", "must be origin-symmetric");
      return Runnable([=](const Rng& r) { return check_isotropy(K, o.mc.samples, o, r); });
    });
    return t;
  }();
  return table;
}

struct Prepared {
  Runnable run;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
};

std::vector<Prepared> prepare_all(const RunConfig& cfg) {
  for (const auto& [key, value] : cfg.defaults)
    if (!kOptionKeys.count(key)) throw ConfigError(cfg.default_lines.at(key), key, "not a suite-wide option");
  if (cfg.suite.empty()) throw ConfigError(0, "suite", "is empty");

  std::vector<Prepared> out;
  out.reserve(cfg.suite.size());
  for (const auto& spec : cfg.suite) {
    const Checker* checker = nullptr;
    for (const auto& c : registry())
      if (c.info.id == spec.id) checker = &c;
    if (!checker) throw ConfigError(spec.line, "check", "unknown checker '" + spec.id + "' (see list-checkers)");
    Params params(spec, cfg);
    Prepared p;
    p.seed = cfg.seed;
    if (params.has("seed")) {
      const long s = params.integer("seed");
      if (s < 0) params.fail("seed", "must be non-negative");
      p.seed = static_cast<std::uint64_t>(s);
    }
    p.stream = hash_label(spec.canonical());
    p.run = checker->build(params);
    params.finish();
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace

const std::vector<CheckerInfo>& checker_catalog() {
  static const std::vector<CheckerInfo> infos = [] {
    std::vector<CheckerInfo> v;
    for (const auto& c : registry()) v.push_back(c.info);
    return v;
  }();
  return infos;
}

void validate(const RunConfig& config) { prepare_all(config); }

std::vector<ReportRow> run_suite(const RunConfig& config,
                                 const std::function<void(std::size_t, std::size_t)>& progress) {
  const auto prepared = prepare_all(config);
  const std::size_t total = prepared.size();
  std::vector<std::vector<ReportRow>> per_entry(total);
  std::vector<std::exception_ptr> errors(total);
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> done{0};
  std::mutex progress_mutex;

  auto worker = [&] {
    for (std::size_t i = next++; i < total; i = next++) {
      try {
        const auto start = std::chrono::steady_clock::now();
        auto reports = prepared[i].run(Rng(prepared[i].seed, prepared[i].stream));
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        for (auto& r : reports) per_entry[i].push_back(ReportRow{std::move(r), secs, prepared[i].seed, i});
      } catch (const std::invalid_argument& e) {
        errors[i] = std::make_exception_ptr(
            ConfigError(config.suite[i].line, "check", std::string(e.what()) + " (check '" + config.suite[i].id + "')"));
      } catch (...) {
        errors[i] = std::current_exception();
      }
      const std::size_t d = ++done;
      if (progress) {
        std::lock_guard<std::mutex> lock(progress_mutex);
        progress(d, total);
      }
    }
  };
  const int jobs = std::max(1, std::min<int>(config.jobs, static_cast<int>(total)));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  std::vector<ReportRow> rows;
  for (auto& entry : per_entry)
    for (auto& row : entry) rows.push_back(std::move(row));
  return rows;
}

bool any_violated(const std::vector<ReportRow>& rows) {
  for (const auto& r : rows)
    if (r.report.verdict == Verdict::violated) return true;
  return false;
}

}  // namespace tomo
