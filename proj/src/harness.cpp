#include "tomo/harness.hpp"

#include "tomo/brunn.hpp"
#include "tomo/catalog.hpp"
#include "tomo/constants.hpp"
#include "tomo/hull.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <mutex>
#include <thread>

namespace tomo {

namespace {

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

std::string label(const StarBody& body, const Density& f) {
  if (f.constant_value && *f.constant_value == 1.0) return body.tag();
  return body.tag() + "[" + f.name + "]";
}

void require_codim(int n, int k) {
  if (k < 1 || k > n - 1) throw std::invalid_argument("k must satisfy 1 <= k <= n-1 (got k=" + std::to_string(k) + ", n=" + std::to_string(n) + ")");
}

void require_same_dim(const StarBody& a, const StarBody& b) {
  if (a.dim() != b.dim())
    throw std::invalid_argument("bodies '" + a.tag() + "' and '" + b.tag() + "' live in different dimensions");
}

Estimate section_integral(const StarBody& body, const Density& f, const Subspace& h, const CheckOptions& opts,
                          const Rng& rng) {
  if (f.constant_value) {
    if (auto v = exact_section_volume(body, h)) return Estimate::exact(*f.constant_value * *v);
  }
  return integrate_section(body, f, h, opts.section_mc(), rng);
}

Estimate body_integral(const StarBody& body, const Density& f, const CheckOptions& opts, const Rng& rng) {
  if (f.constant_value) {
    if (auto v = body.closed_form_volume()) return Estimate::exact(*f.constant_value * *v);
  }
  return integrate_body(body, f, opts.mc, rng);
}

/// g(0) = sup g = 1, checked at the origin, against the declared sup norm and
/// on sampled points of L.
void validate_normalized(const StarBody& body, const Density& g, const Rng& rng) {
  const int n = body.dim();
  const double at_origin = g(Vec::Zero(n));
  if (std::abs(at_origin - 1.0) > 1e-12)
    throw std::invalid_argument("density '" + g.name + "' must satisfy g(0) = 1 (got " + fmt(at_origin) + ")");
  if (g.sup_norm && std::abs(*g.sup_norm - 1.0) > 1e-12)
    throw std::invalid_argument("density '" + g.name + "' must have sup norm 1");
  Rng r = rng;
  for (int i = 0; i < 1000; ++i) {
    const Vec theta = r.sphere(n);
    const Vec x = body.radial(theta) * std::pow(r.uniform(), 1.0 / n) * theta;
    if (g(x) > 1.0 + 1e-9) throw std::invalid_argument("density '" + g.name + "' exceeds 1 on '" + body.tag() + "'");
  }
}

struct NetMax {
  Estimate best;
  std::size_t evaluated = 0;
  std::size_t dropped = 0;
  bool found = false;
};

/// Maximizes `ratio` over the net, then optionally refines around the
/// maximizer by random perturbations. Each subspace gets its own stream key
/// so that numerator and denominator can share random numbers.
NetMax net_max(const std::vector<Subspace>& net,
               const std::function<std::optional<Estimate>(const Subspace&, std::uint64_t)>& ratio, int refine_steps,
               const Rng& rng) {
  NetMax out;
  std::optional<Subspace> arg;
  for (std::size_t i = 0; i < net.size(); ++i) {
    auto v = ratio(net[i], i);
    ++out.evaluated;
    if (!v) {
      ++out.dropped;
      continue;
    }
    if (!out.found || v->value > out.best.value) {
      out.best = *v;
      out.found = true;
      arg = net[i];
    }
  }
  if (!out.found) throw std::runtime_error("every net element was unusable");
  Rng r = rng.split("refine");
  double step = 0.2;
  for (int s = 0; s < refine_steps; ++s) {
    const Mat& b = arg->basis();
    Mat g(b.rows(), b.cols());
    for (Eigen::Index j = 0; j < g.cols(); ++j) g.col(j) = r.gaussian(static_cast<int>(b.rows()));
    const Subspace cand = Subspace::span(b + step * g);
    auto v = ratio(cand, net.size() + static_cast<std::size_t>(s));
    ++out.evaluated;
    if (v && v->value > out.best.value) {
      out.best = *v;
      arg = cand;
    } else {
      step *= 0.7;
    }
  }
  return out;
}

std::string net_note(const NetMax& m, int n, int dim) {
  std::string s = "max over a net of " + std::to_string(m.evaluated) + " subspaces of dimension " + std::to_string(dim) +
                  " in R^" + std::to_string(n) + " (understates the sup over the Grassmannian, so the check is conservative)";
  if (m.dropped) s += "; " + std::to_string(m.dropped) + " subspaces dropped for vanishing denominator";
  return s;
}

void add_bound(InequalityReport& r, const std::string& symbol, const DistanceBound& b) {
  r.constants.push_back({symbol, b.value, to_string(b.kind) + ": " + b.provenance});
}

void add_general_bound(InequalityReport& r, const StarBody& body, const DistanceBound& b, int n, int k) {
  if (b.exact() || !body.is_convex() || !body.is_symmetric()) return;
  r.constants.push_back({"sqrt(n/k)*log^1.5(e*n/k)", general_bp_factor(n, k),
                         "general bound C*factor for symmetric convex K; C unspecified, reported only"});
}

/// ovr(K), reusing the Loewner value stored by the catalog when present.
DistanceBound ovr_of(const StarBody& body, const LoewnerOptions& opts) {
  if (body.traits().ellipsoidal) return DistanceBound{BoundKind::loewner_ellipsoid, 1.0, "body is an ellipsoid"};
  if (auto reg = body.registered_dovr(1); reg && reg->kind == BoundKind::loewner_ellipsoid) return *reg;
  return ovr(body, opts);
}

std::uint64_t stream_key(std::uint64_t i) { return i; }

/// Runs body(0..count-1) on `workers` threads, handing out indices in order.
void parallel_for(int count, int workers, const std::function<void(int)>& body) {
  const int threads = std::max(1, std::min(workers, count));
  if (threads == 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (int w = 0; w < threads; ++w) {
    pool.emplace_back([&] {
      for (int i = next++; i < count; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

/// |K|, or |K cap {<x,u> >= 0}| when f is a half-space indicator (the
/// Borel set on which f lives).
struct BorelSet {
  Estimate volume;
  double ovr_factor = 1.0;
  std::string note;
};

}  // namespace

std::vector<Subspace> deterministic_subspaces(int n, int m) {
  require_codim(n, n - m);
  std::vector<Subspace> out;
  for (const auto& axes : linalg::combinations(n, m)) out.push_back(Subspace::coordinate(n, axes));
  const int k = n - m;
  Mat v(n, k);
  for (int j = 0; j < k; ++j)
    for (int i = 0; i < n; ++i) v(i, j) = (j == 0 || ((i >> (j - 1)) & 1) == 0) ? 1.0 : -1.0;
  try {
    out.push_back(Subspace::complement(v));
  } catch (const std::exception&) {
    // Sign vectors dependent for this (n, k); the coordinate part suffices.
  }
  return out;
}

std::vector<Subspace> subspace_net(int n, int m, int random, Rng& rng) {
  auto out = deterministic_subspaces(n, m);
  for (int i = 0; i < random; ++i) out.push_back(rng.grassmann(n, m));
  return out;
}

std::vector<Direction> direction_net(int n, int random, Rng& rng) {
  std::vector<Direction> out;
  for (int i = 0; i < n; ++i) out.push_back(Direction::axis(n, i));
  if (n <= 10) {
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (n - 1)); ++mask) {
      Vec v(n);
      v[0] = 1.0;
      for (int i = 1; i < n; ++i) v[i] = (mask >> (i - 1)) & 1 ? -1.0 : 1.0;
      out.emplace_back(v);
    }
  }
  for (int i = 0; i < random; ++i) out.emplace_back(rng.sphere(n));
  return out;
}

// ------------------------------------------------------------ quotients

InequalityReport check_quotient_main(const StarBody& k_body, const StarBody& l_body, const Density& f,
                                     const Density& g, int k, const CheckOptions& opts, const Rng& rng) {
  require_same_dim(k_body, l_body);
  const int n = k_body.dim();
  require_codim(n, k);
  validate_normalized(l_body, g, rng.split("validate"));

  InequalityReport r;
  r.check_id = "quotient_main";
  r.body_k = label(k_body, f);
  r.body_l = label(l_body, g);
  r.n = n;
  r.k = k;

  // Shared streams: K = L with f = g gives identical estimates.
  const Estimate int_f = body_integral(k_body, f, opts, rng.split("integral"));
  const Estimate int_g = body_integral(l_body, g, opts, rng.split("integral"));
  const Estimate vol_k = body_volume(k_body, opts.mc, rng.split("volume"));
  const double a = static_cast<double>(n - k) / n;
  r.lhs = quotient(int_f, product(power(int_g, a), power(vol_k, 1.0 - a)));

  const DistanceBound bound = dovr_bp_bound(k_body, k, opts.loewner);
  Rng net_rng = rng.split("net");
  const auto net = subspace_net(n, n - k, opts.net_random, net_rng);
  const Rng sections = rng.split("sections");
  const NetMax m = net_max(
      net,
      [&](const Subspace& h, std::uint64_t i) -> std::optional<Estimate> {
        const Rng s = sections.split(stream_key(i));
        const Estimate den = section_integral(l_body, g, h, opts, s);
        if (!(den.value > 0.0)) return std::nullopt;
        return quotient(section_integral(k_body, f, h, opts, s), den);
      },
      opts.refine_steps, rng);

  const double factor = static_cast<double>(n) / (n - k);
  r.rhs = scaled(m.best, factor * std::pow(bound.value, k));
  r.constants.push_back({"n/(n-k)", factor, "dimension factor"});
  add_bound(r, "d_ovr(K,BP_k^n)", bound);
  add_general_bound(r, k_body, bound, n, k);
  r.notes.push_back(net_note(m, n, n - k));
  decide_inequality(r, !bound.exact());
  return r;
}

InequalityReport check_quotient_holder(const StarBody& k_body, const StarBody& l_body, int k,
                                       const CheckOptions& opts, const Rng& rng) {
  require_same_dim(k_body, l_body);
  const int n = k_body.dim();
  require_codim(n, k);

  InequalityReport r;
  r.check_id = "quotient_holder";
  r.body_k = k_body.tag();
  r.body_l = l_body.tag();
  r.n = n;
  r.k = k;

  const Estimate vol_k = body_volume(k_body, opts.mc, rng.split("volume"));
  const Estimate vol_l = body_volume(l_body, opts.mc, rng.split("volume"));
  r.lhs = power(quotient(vol_k, vol_l), static_cast<double>(n - k) / n);

  const DistanceBound bound = dovr_bp_bound(k_body, k, opts.loewner);
  Rng net_rng = rng.split("net");
  const auto net = subspace_net(n, n - k, opts.net_random, net_rng);
  const Rng sections = rng.split("sections");
  const NetMax m = net_max(
      net,
      [&](const Subspace& h, std::uint64_t i) -> std::optional<Estimate> {
        const Rng s = sections.split(stream_key(i));
        const Estimate den = section_volume(l_body, h, opts.section_mc(), s);
        if (!(den.value > 0.0)) return std::nullopt;
        return quotient(section_volume(k_body, h, opts.section_mc(), s), den);
      },
      opts.refine_steps, rng);

  r.rhs = scaled(m.best, std::pow(bound.value, k));
  add_bound(r, "d_ovr(K,BP_k^n)", bound);
  add_general_bound(r, k_body, bound, n, k);
  r.notes.push_back(net_note(m, n, n - k));
  decide_inequality(r, !bound.exact());
  return r;
}

InequalityReport check_arb_ovr(const StarBody& k_body, const StarBody& l_body, const Density& f, const Density& g,
                               int k, const CheckOptions& opts, const Rng& rng) {
  require_same_dim(k_body, l_body);
  const int n = k_body.dim();
  require_codim(n, k);
  if (!g.sup_norm || std::abs(*g.sup_norm - 1.0) > 1e-12)
    throw std::invalid_argument("density '" + g.name + "' must have sup norm 1");

  InequalityReport r;
  r.check_id = "arb_ovr";
  r.body_k = label(k_body, f);
  r.body_l = label(l_body, g);
  r.n = n;
  r.k = k;

  const Estimate int_f = body_integral(k_body, f, opts, rng.split("integral"));
  const Estimate int_g = body_integral(l_body, g, opts, rng.split("integral"));
  if (!(int_g.value > 0.0)) throw std::invalid_argument("density '" + g.name + "' has zero integral on '" + l_body.tag() + "'");

  // A half-space indicator f restricts K to the Borel set B = K cap {<x,u> >= 0}.
  // For symmetric K, |B| = |K|/2 and the smallest symmetric ellipsoid
  // containing B is the Loewner ellipsoid of K, so ovr(B) = 2^{1/n} ovr(K).
  Estimate set_volume = body_volume(k_body, opts.mc, rng.split("volume"));
  DistanceBound o = ovr_of(k_body, opts.loewner);
  double ovr_value = o.value;
  if (f.halfspace) {
    if (!k_body.is_symmetric()) throw std::invalid_argument("half-space restriction needs an origin-symmetric body");
    set_volume = scaled(set_volume, 0.5);
    ovr_value *= std::pow(2.0, 1.0 / n);
    r.notes.push_back("f is a half-space indicator: K is replaced by the Borel set K cap {<x,u> >= 0}, |B| = |K|/2, ovr(B) = 2^{1/n} ovr(K)");
  }

  const double a = static_cast<double>(n - k) / n;
  const Estimate lhs = quotient(int_f, product(power(int_g, a), power(set_volume, 1.0 - a)));

  Rng net_rng = rng.split("net");
  const auto net = subspace_net(n, n - k, opts.net_random, net_rng);
  const Rng sections = rng.split("sections");
  const NetMax m = net_max(
      net,
      [&](const Subspace& h, std::uint64_t i) -> std::optional<Estimate> {
        const Rng s = sections.split(stream_key(i));
        const Estimate den = section_integral(l_body, g, h, opts, s);
        if (!(den.value > 0.0)) return std::nullopt;
        return quotient(section_integral(k_body, f, h, opts, s), den);
      },
      opts.refine_steps, rng);

  // C_required^k = lhs / (ovr^k * max ratio)
  r.lhs = power(quotient(lhs, scaled(m.best, std::pow(ovr_value, k))), 1.0 / k);
  r.rhs = Estimate::exact(opts.c_budget);
  r.constants.push_back({"ovr", ovr_value, to_string(o.kind) + ": " + o.provenance});
  r.constants.push_back({"C_budget", opts.c_budget, "regression budget for the unspecified absolute constant"});
  r.notes.push_back("lhs is C_required, the smallest constant making the inequality hold on this instance");
  r.notes.push_back(net_note(m, n, n - k));
  decide_inequality(r, false);
  return r;
}

// ------------------------------------------------------------ sections

InequalityReport check_grinberg(const StarBody& body, int k, int trials, const CheckOptions& opts, const Rng& rng) {
  const int n = body.dim();
  require_codim(n, k);
  const int m = n - k;
  const StarBody unit = with_volume(body, 1.0);

  InequalityReport r;
  r.check_id = "grinberg";
  r.body_k = body.tag();
  r.body_l = "normalized(ball(" + std::to_string(n) + "))";
  r.n = n;
  r.k = k;

  const double radius = std::exp(-constants::log_omega(n) / n);
  const double ball_section = constants::omega(m) * std::pow(radius, m);
  Rng sub = rng.split("subspaces");
  const Rng sections = rng.split("sections");
  Accumulator lhs;
  for (int t = 0; t < trials; ++t) {
    const Subspace h = sub.grassmann(n, m);
    const double s = section_volume(unit, h, opts.section_mc(), sections.split(static_cast<std::uint64_t>(t))).value;
    lhs.add(std::pow(s, n));
  }
  r.lhs = lhs.estimate();
  r.rhs = Estimate::exact(std::pow(ball_section, n));
  r.notes.push_back("paired over " + std::to_string(trials) + " common Haar subspaces; the ball side is constant");
  decide_inequality(r, false);
  return r;
}

InequalityReport check_dpp(const StarBody& support, const Density& g, int k, int trials, const CheckOptions& opts,
                           const Rng& rng) {
  const int n = support.dim();
  require_codim(n, k);
  const int m = n - k;
  if (!g.sup_norm) throw std::invalid_argument("density '" + g.name + "' needs a known sup norm");
  const double sup = *g.sup_norm;
  if (std::abs(g(Vec::Zero(n)) - sup) > 1e-12 * std::max(1.0, sup))
    throw std::invalid_argument("density '" + g.name + "' must attain its sup norm at the origin");

  InequalityReport r;
  r.check_id = "dpp";
  r.body_k = label(support, g);
  r.n = n;
  r.k = k;

  Rng sub = rng.split("subspaces");
  const Rng sections = rng.split("sections");
  Accumulator lhs;
  for (int t = 0; t < trials; ++t) {
    const Subspace h = sub.grassmann(n, m);
    const double s = section_integral(support, g, h, opts, sections.split(static_cast<std::uint64_t>(t))).value;
    lhs.add(std::pow(s, n) / std::pow(sup, k));
  }
  r.lhs = lhs.estimate();
  const double gamma = constants::gamma_nk(n, k);
  const Estimate total = body_integral(support, g, opts, rng.split("integral"));
  r.rhs = scaled(power(total, n - k), std::pow(gamma, -n));
  r.constants.push_back({"gamma_{n,k}", gamma, "omega_n^{(n-k)/n} / omega_{n-k}"});
  r.notes.push_back("sup of g on every H equals g(0) since each H contains the origin");
  decide_inequality(r, false);
  return r;
}

InequalityReport check_barany_furedi(int m, int s, int trials, const CheckOptions& opts, const Rng& rng) {
  if (m < 2 || m > 7) throw std::invalid_argument("barany_furedi: m must be in [2, 7]");
  if (s < m + 1) throw std::invalid_argument("barany_furedi: s must be at least m+1");
  if (s >= 1000) throw std::invalid_argument("barany_furedi: s must be below 1000");

  InequalityReport r;
  r.check_id = "barany_furedi";
  r.body_k = "random_ellipsoid(" + std::to_string(m) + ")";
  r.n = m;
  r.k = s;

  const double norm = std::sqrt(static_cast<double>(m)) / std::sqrt(std::log(1.0 + static_cast<double>(s) / m));
  // Trial t draws from rng.split(t), so the statistics do not depend on how
  // trials are spread over workers.
  std::vector<double> stats(static_cast<std::size_t>(trials));
  parallel_for(trials, opts.mc.workers, [&](int t) {
    Rng g = rng.split(static_cast<std::uint64_t>(t));
    const Mat q = linalg::orthonormalize(Mat::NullaryExpr(m, m, [&] { return g.normal(); }));
    Vec d(m);
    for (int i = 0; i < m; ++i) d[i] = std::exp(std::log(4.0) * (2.0 * g.uniform() - 1.0));
    const Ellipsoid e(q * d.asDiagonal() * q.transpose());
    std::vector<Vec> points(static_cast<std::size_t>(s));
    for (auto& p : points) {
      const Vec theta = g.sphere(m);
      p = e.radial(theta) * theta;
    }
    stats[static_cast<std::size_t>(t)] = std::pow(hull::hull_volume(points) / e.volume(), 1.0 / m) * norm;
  });
  double worst = 0.0;
  Accumulator mean;
  for (double x : stats) {
    worst = std::max(worst, x);
    mean.add(x);
  }
  r.lhs = Estimate::exact(worst);
  r.rhs = Estimate::exact(opts.c_budget);
  r.constants.push_back({"C_budget", opts.c_budget, "regression budget for the unspecified absolute constant"});
  r.notes.push_back("max over " + std::to_string(trials) + " trials of s=" + std::to_string(s) +
                    " boundary points of a random ellipsoid; mean statistic " + fmt(mean.mean()));
  decide_inequality(r, false);
  return r;
}

InequalityReport check_hull_step(const StarBody& body, int k, int trials, const CheckOptions& opts, const Rng& rng) {
  const int n = body.dim();
  require_codim(n, k);
  const int m = n - k;
  const Ellipsoid e = loewner(body, opts.loewner);

  InequalityReport r;
  r.check_id = "barany_furedi.hull_step";
  r.body_k = body.tag();
  r.n = n;
  r.k = k;

  Rng g = rng;
  const double norm = std::sqrt(static_cast<double>(m)) / std::sqrt(std::log(1.0 + (m + 1.0) / m));
  double worst = 0.0;
  std::vector<Vec> xs(static_cast<std::size_t>(m));
  for (int t = 0; t < trials; ++t) {
    const Subspace h = g.grassmann(n, m);
    for (auto& x : xs) {
      const Vec theta = h.basis() * g.sphere(m);
      x = body.radial(theta) * std::pow(g.uniform(), 1.0 / m) * theta;
    }
    const double ratio = simplex_volume(xs) / e.section_volume(h);
    worst = std::max(worst, std::pow(ratio, 1.0 / k) * norm);
  }
  r.lhs = Estimate::exact(worst);
  r.rhs = Estimate::exact(opts.c_budget);
  r.notes.push_back("implied constant C_1 from |conv(0,x_1..x_{n-k})| / |E cap H| over " + std::to_string(trials) +
                    " draws of uniform points in K cap H; reported only");
  r.verdict = Verdict::reported;
  r.margin_se = (r.rhs.value - r.lhs.value) / pooled_se(r.lhs, r.rhs);
  return r;
}

// ------------------------------------------------------------ projections

InequalityReport check_main_proj(const StarBody& k_body, const StarBody& l_body, double p, const CheckOptions& opts,
                                 const Rng& rng) {
  require_same_dim(k_body, l_body);
  const int n = k_body.dim();
  if (!(p >= 1.0)) throw std::invalid_argument("p must be at least 1");

  InequalityReport r;
  r.check_id = "main_proj";
  r.body_k = k_body.tag();
  r.body_l = l_body.tag();
  r.n = n;
  r.p = p;

  const Estimate vol_k = body_volume(k_body, opts.mc, rng.split("volume"));
  const Estimate vol_l = body_volume(l_body, opts.mc, rng.split("volume"));
  r.lhs = power(quotient(vol_k, vol_l), (n - p) / (p * n));

  const DistanceBound dvr = dvr_projection_bound(l_body, p, opts.loewner);
  Rng net_rng = rng.split("net");
  double best = 0.0;
  for (const auto& xi : direction_net(n, opts.direction_random, net_rng))
    best = std::max(best, p_projection_support(k_body, xi, p) / p_projection_support(l_body, xi, p));
  r.rhs = Estimate::exact(dvr.value * best);
  add_bound(r, "d_vr(L,Pi_p)", dvr);
  r.notes.push_back("max of h_{Pi_p K} / h_{Pi_p L} over a net of directions");
  decide_inequality(r, !dvr.exact());
  return r;
}

InequalityReport check_projection_dominance(const StarBody& k_body, const StarBody& l_body, const CheckOptions& opts,
                                            const Rng& rng) {
  require_same_dim(k_body, l_body);
  const int n = k_body.dim();
  Rng net_rng = rng.split("net");
  const auto dirs = direction_net(n, opts.direction_random, net_rng);
  double ratio = 0.0;
  for (const auto& xi : dirs) ratio = std::max(ratio, projection_volume(k_body, xi) / projection_volume(l_body, xi));
  const double factor = ratio > 1.0 ? std::pow(ratio, 1.0 / (n - 1)) : 1.0;
  const StarBody l_scaled = factor > 1.0 ? scaled(l_body, factor) : l_body;

  InequalityReport r;
  r.check_id = "projection_dominance";
  r.body_k = k_body.tag();
  r.body_l = l_scaled.tag();
  r.n = n;
  r.p = 1.0;

  const DistanceBound dvr = dvr_projection_bound(l_scaled, 1.0, opts.loewner);
  r.lhs = body_volume(k_body, opts.mc, rng.split("volume"));
  r.rhs = scaled(body_volume(l_scaled, opts.mc, rng.split("volume")), dvr.value);
  add_bound(r, "d_vr(L,Pi_n)", dvr);
  r.constants.push_back({"scale", factor, "L scaled so that |K|xi^perp| <= |L|xi^perp| on the direction net"});
  decide_inequality(r, !dvr.exact());
  return r;
}

InequalityReport check_proj_section_mixed(const StarBody& k_body, const StarBody& d_body, int k,
                                          const CheckOptions& opts, const Rng& rng) {
  require_same_dim(k_body, d_body);
  const int n = k_body.dim();
  require_codim(n, k);

  InequalityReport r;
  r.check_id = "proj_section_mixed";
  r.body_k = k_body.tag();
  r.body_l = d_body.tag();
  r.n = n;
  r.k = k;

  const Estimate vol_k = body_volume(k_body, opts.mc, rng.split("volume"));
  const Estimate vol_d = body_volume(d_body, opts.mc, rng.split("volume"));
  r.lhs = power(quotient(vol_k, vol_d), static_cast<double>(n - k) / n);

  Rng net_rng = rng.split("net");
  const auto net = subspace_net(n, n - k, opts.net_random, net_rng);
  const Rng sections = rng.split("sections");
  const NetMax m = net_max(
      net,
      [&](const Subspace& h, std::uint64_t i) -> std::optional<Estimate> {
        const Estimate den = section_volume(d_body, h, opts.section_mc(), sections.split(stream_key(i)));
        if (!(den.value > 0.0)) return std::nullopt;
        return quotient(Estimate::exact(projection_volume_subspace(k_body, h)), den);
      },
      opts.refine_steps, rng);
  r.rhs = m.best;
  r.notes.push_back(net_note(m, n, n - k));
  decide_inequality(r, false);
  return r;
}

// ------------------------------------------------------------ mixed volumes

InequalityReport check_minkowski(const StarBody& k_body, const StarBody& l_body) {
  require_same_dim(k_body, l_body);
  const ConvexPolytope* k = k_body.polytope();
  if (!k) throw std::invalid_argument("minkowski: K must be a polytope");
  const int n = k_body.dim();
  const double vk = k->volume();
  const auto vl = l_body.closed_form_volume();
  if (!vl) throw std::invalid_argument("minkowski: L needs a closed-form volume");

  InequalityReport r;
  r.check_id = "minkowski";
  r.body_k = k_body.tag();
  r.body_l = l_body.tag();
  r.n = n;
  r.lhs = Estimate::exact(std::pow(vk, (n - 1.0) / n) * std::pow(*vl, 1.0 / n));
  r.rhs = Estimate::exact(mixed_volume_v1(*k, l_body));
  r.notes.push_back("V_1(K,L) >= |K|^{(n-1)/n} |L|^{1/n}");
  decide_inequality(r, false);
  return r;
}

InequalityReport check_lutwak(const StarBody& k_body, const StarBody& l_body, double p) {
  require_same_dim(k_body, l_body);
  const ConvexPolytope* k = k_body.polytope();
  if (!k) throw std::invalid_argument("lutwak: K must be a polytope");
  const int n = k_body.dim();
  const double vk = k->volume();
  const auto vl = l_body.closed_form_volume();
  if (!vl) throw std::invalid_argument("lutwak: L needs a closed-form volume");

  InequalityReport r;
  r.check_id = "lutwak";
  r.body_k = k_body.tag();
  r.body_l = l_body.tag();
  r.n = n;
  r.p = p;
  r.lhs = Estimate::exact(std::pow(vk, (n - p) / n) * std::pow(*vl, p / n));
  r.rhs = Estimate::exact(p_mixed_volume(*k, l_body, p));
  r.notes.push_back("V_p(K,L) >= |K|^{(n-p)/n} |L|^{p/n}");
  decide_inequality(r, false);
  return r;
}

InequalityReport check_random_pairs(const std::string& kind, int n, int pairs, double p, const Rng& rng) {
  if (kind != "minkowski" && kind != "lutwak") throw std::invalid_argument("random pairs: kind must be minkowski or lutwak");
  if (pairs < 1) throw std::invalid_argument("random pairs: pairs must be positive");
  Rng g = rng;
  auto draw = [&] {
    const int m = 5 + static_cast<int>(g.uniform() * 11.0);  // 10..30 symmetrized points
    return random_polytope(n, m, g.bits() >> 16);
  };
  std::optional<InequalityReport> tightest;
  double tight_slack = std::numeric_limits<double>::infinity();
  double equality_gap = 0.0;
  for (int i = 0; i < pairs; ++i) {
    const StarBody k = draw();
    const bool equality_case = i % 10 == 9;
    const StarBody l = equality_case ? scaled(k, 0.5 + 1.5 * g.uniform()) : draw();
    InequalityReport r = kind == "minkowski" ? check_minkowski(k, l) : check_lutwak(k, l, p);
    const double slack = (r.rhs.value - r.lhs.value) / r.rhs.value;
    if (equality_case) equality_gap = std::max(equality_gap, std::abs(slack));
    if (slack < tight_slack) {
      tight_slack = slack;
      tightest = std::move(r);
    }
  }
  InequalityReport out = *tightest;
  out.check_id = kind + ".random_pairs";
  out.notes.clear();
  out.notes.push_back("tightest of " + std::to_string(pairs) + " random symmetric polytope pairs; relative slack " +
                      fmt(tight_slack) + "; max relative gap on L = lambda K pairs " + fmt(equality_gap));
  out.constants.push_back({"min_relative_slack", tight_slack, "over all pairs"});
  out.constants.push_back({"max_equality_gap", equality_gap, "pairs with L = lambda K"});
  if (tight_slack < -1e-9) {
    out.verdict = Verdict::violated;
  } else {
    out.verdict = Verdict::holds;
  }
  return out;
}

std::vector<InequalityReport> check_brunn_identities(const StarBody& body, const CheckOptions& opts, const Rng& rng) {
  const ConvexPolytope* k = body.polytope();
  if (!k) throw std::invalid_argument("brunn identities: '" + body.tag() + "' is not a polytope");
  const int n = body.dim();
  std::vector<InequalityReport> out;
  auto base = [&](const std::string& id) {
    InequalityReport r;
    r.check_id = id;
    r.body_k = body.tag();
    r.n = n;
    return r;
  };

  {
    InequalityReport r = base("brunn.closure");
    r.lhs = Estimate::exact(surface_measure(*k).centroid_defect());
    r.rhs = Estimate::exact(1e-8);
    r.notes.push_back("|sum m_F u_F|_inf");
    decide_inequality(r, false);
    out.push_back(r);
  }
  {
    InequalityReport r = base("brunn.v1_self");
    r.lhs = Estimate::exact(mixed_volume_v1(*k, body));
    r.rhs = Estimate::exact(k->volume());
    decide_identity(r, 1e-10);
    out.push_back(r);
  }
  for (double p : {1.5, 2.0, 3.0}) {
    InequalityReport r = base("brunn.vp_self");
    r.p = p;
    r.lhs = Estimate::exact(p_mixed_volume(*k, body, p));
    r.rhs = Estimate::exact(k->volume());
    decide_identity(r, 1e-10);
    out.push_back(r);
  }
  Rng net_rng = rng.split("net");
  const auto dirs = direction_net(n, opts.direction_random, net_rng);
  {
    InequalityReport r = base("brunn.pi1");
    r.p = 1.0;
    double worst = -1.0;
    for (const auto& xi : dirs) {
      const double a = n * p_projection_support(*k, xi, 1.0);
      const double b = projection_volume(*k, xi);
      const double gap = std::abs(a - b) / std::max(1.0, b);
      if (gap > worst) {
        worst = gap;
        r.lhs = Estimate::exact(a);
        r.rhs = Estimate::exact(b);
      }
    }
    r.notes.push_back("n h_{Pi_1 K}(xi) against h_{Pi K}(xi), worst direction of the net");
    decide_identity(r, 1e-10);
    out.push_back(r);
  }
  if (n <= 6) {
    InequalityReport r = base("brunn.cauchy_hull");
    double worst = -1.0;
    for (const auto& xi : dirs) {
      const double a = projection_volume(*k, xi);
      const double b = k->projection_volume(Subspace::hyperplane(xi));
      const double gap = std::abs(a - b) / std::max(1.0, b);
      if (gap > worst) {
        worst = gap;
        r.lhs = Estimate::exact(a);
        r.rhs = Estimate::exact(b);
      }
    }
    r.notes.push_back("Cauchy formula against the hull of the projected vertices, worst direction of the net");
    decide_identity(r, 1e-9);
    out.push_back(r);
  }
  {
    // Shadow Monte Carlo on the deterministic directions and a few random ones.
    InequalityReport r = base("brunn.cauchy");
    Rng shadow = rng.split("shadow");
    const std::size_t limit = std::min<std::size_t>(dirs.size(), static_cast<std::size_t>(n) + 8);
    InequalityReport worst;
    for (std::size_t i = 0; i < limit; ++i) {
      InequalityReport row = r;
      row.lhs = Estimate::exact(projection_volume(*k, dirs[i]));
      row.rhs = shadow_area_mc(*k, dirs[i], opts.mc.samples, shadow);
      decide_equality(row);
      if (i == 0 || std::abs(row.margin_se) > std::abs(worst.margin_se)) worst = row;
    }
    r = worst;
    r.notes.push_back("Cauchy formula against hit-or-miss shadow area on " + std::to_string(limit) +
                      " directions; worst direction reported");
    out.push_back(r);
  }
  return out;
}

// ------------------------------------------------------------ applications

InequalityReport check_comparison(const StarBody& k_body, const StarBody& l_body, const Density& f, const Density& g,
                                  int k, const CheckOptions& opts, const Rng& rng) {
  require_same_dim(k_body, l_body);
  const int n = k_body.dim();
  require_codim(n, k);
  validate_normalized(l_body, g, rng.split("validate"));

  InequalityReport r;
  r.check_id = "comparison";
  r.body_k = label(k_body, f);
  r.body_l = label(l_body, g);
  r.n = n;
  r.k = k;

  Rng net_rng = rng.split("net");
  const auto net = subspace_net(n, n - k, opts.net_random, net_rng);
  const Rng sections = rng.split("sections");
  const NetMax m = net_max(
      net,
      [&](const Subspace& h, std::uint64_t i) -> std::optional<Estimate> {
        const Rng s = sections.split(stream_key(i));
        const Estimate den = section_integral(l_body, g, h, opts, s);
        if (!(den.value > 0.0)) return std::nullopt;
        return quotient(section_integral(k_body, f, h, opts, s), den);
      },
      opts.refine_steps, rng);

  // Rescale f by the net maximum so that the section integrals of K are
  // dominated by those of L on the net.
  const Estimate int_f = body_integral(k_body, f, opts, rng.split("integral"));
  r.lhs = m.best.value > 1.0 ? quotient(int_f, m.best) : int_f;

  const DistanceBound bound = dovr_bp_bound(k_body, k, opts.loewner);
  const Estimate int_g = body_integral(l_body, g, opts, rng.split("integral"));
  const Estimate vol_k = body_volume(k_body, opts.mc, rng.split("volume"));
  const double a = static_cast<double>(n - k) / n;
  const double factor = static_cast<double>(n) / (n - k) * std::pow(bound.value, k);
  r.rhs = scaled(product(power(vol_k, 1.0 - a), power(int_g, a)), factor);
  r.constants.push_back({"n/(n-k)", static_cast<double>(n) / (n - k), "dimension factor"});
  r.constants.push_back({"f_scale", m.best.value > 1.0 ? 1.0 / m.best.value : 1.0,
                         "f rescaled so that int_{K cap H} f <= int_{L cap H} g on the net"});
  add_bound(r, "d_ovr(K,BP_k^n)", bound);
  r.notes.push_back(net_note(m, n, n - k));
  decide_inequality(r, !bound.exact());
  return r;
}

InequalityReport check_slicing(const StarBody& body, const Density& f, int k, const CheckOptions& opts,
                               const Rng& rng) {
  const int n = body.dim();
  require_codim(n, k);

  InequalityReport r;
  r.check_id = "slicing";
  r.body_k = label(body, f);
  r.n = n;
  r.k = k;

  r.lhs = body_integral(body, f, opts, rng.split("integral"));
  const DistanceBound bound = dovr_bp_bound(body, k, opts.loewner);
  Rng net_rng = rng.split("net");
  const auto net = subspace_net(n, n - k, opts.net_random, net_rng);
  const Rng sections = rng.split("sections");
  const NetMax m = net_max(
      net,
      [&](const Subspace& h, std::uint64_t i) -> std::optional<Estimate> {
        return section_integral(body, f, h, opts, sections.split(stream_key(i)));
      },
      opts.refine_steps, rng);

  const double gamma = constants::gamma_nk(n, k);
  // k = 1 uses the printed constant 2 >= (n/(n-1)) gamma_{n,1}.
  const double c = k == 1 ? 2.0 : static_cast<double>(n) / (n - k) * gamma;
  const Estimate vol = body_volume(body, opts.mc, rng.split("volume"));
  r.rhs = scaled(product(power(vol, static_cast<double>(k) / n), m.best), c * std::pow(bound.value, k));
  r.constants.push_back({k == 1 ? "2" : "(n/(n-k))*gamma_{n,k}", c,
                         k == 1 ? "slicing constant for hyperplanes" : "ball-ratio constant, gamma_{n,k} < 1"});
  add_bound(r, k == 1 ? "d_ovr(K,I_n)" : "d_ovr(K,BP_k^n)", bound);
  r.notes.push_back(net_note(m, n, n - k));
  decide_inequality(r, !bound.exact());
  return r;
}

InequalityReport check_mean_value(const StarBody& body, const Density& f, int k, const CheckOptions& opts,
                                  const Rng& rng) {
  const int n = body.dim();
  require_codim(n, k);

  InequalityReport r;
  r.check_id = "mean_value";
  r.body_k = label(body, f);
  r.n = n;
  r.k = k;

  const Estimate vol = body_volume(body, opts.mc, rng.split("volume"));
  r.lhs = quotient(body_integral(body, f, opts, rng.split("integral")), vol);
  const DistanceBound bound = dovr_bp_bound(body, k, opts.loewner);
  Rng net_rng = rng.split("net");
  const auto net = subspace_net(n, n - k, opts.net_random, net_rng);
  const Rng sections = rng.split("sections");
  const Density one = Density::constant(1.0);
  const NetMax m = net_max(
      net,
      [&](const Subspace& h, std::uint64_t i) -> std::optional<Estimate> {
        const Rng s = sections.split(stream_key(i));
        const Estimate den = section_integral(body, one, h, opts, s);
        if (!(den.value > 0.0)) return std::nullopt;
        return quotient(section_integral(body, f, h, opts, s), den);
      },
      opts.refine_steps, rng);
  const double factor = static_cast<double>(n) / (n - k);
  r.rhs = scaled(m.best, factor * std::pow(bound.value, k));
  r.constants.push_back({"n/(n-k)", factor, "dimension factor"});
  add_bound(r, "d_ovr(K,BP_k^n)", bound);
  add_general_bound(r, body, bound, n, k);
  r.notes.push_back(net_note(m, n, n - k));
  decide_inequality(r, !bound.exact());
  return r;
}

InequalityReport check_proportional(const StarBody& k_body, const StarBody& l_body, int k, const CheckOptions& opts,
                                    const Rng& rng) {
  InequalityReport r = check_quotient_holder(k_body, l_body, k, opts, rng);
  const DistanceBound bound = dovr_bp_bound(k_body, k, opts.loewner);
  r.check_id = "proportional";
  // Undo the distance factor: report C(lambda) = lhs / max ratio.
  const Estimate ratio = scaled(r.rhs, std::pow(bound.value, -k));
  const Estimate c = quotient(r.lhs, ratio);
  r.lhs = c;
  r.rhs = Estimate::exact(std::pow(bound.value, k));
  r.constants.clear();
  r.constants.push_back({"lambda", static_cast<double>(k) / r.n, "k / n"});
  add_bound(r, "d_ovr(K,BP_k^n)", bound);
  r.notes.insert(r.notes.begin(), "lhs is the empirical C(lambda) = (|K|/|L|)^{(n-k)/n} / max_H |K cap H|/|L cap H|; reported only");
  r.margin_se = (r.rhs.value - r.lhs.value) / pooled_se(r.lhs, r.rhs);
  r.verdict = Verdict::reported;
  return r;
}

InequalityReport check_min_projection(const StarBody& body, const CheckOptions& opts, const Rng& rng) {
  const int n = body.dim();
  if (!body.is_symmetric() || !body.is_convex()) throw std::invalid_argument("min_projection: body must be origin-symmetric convex");

  InequalityReport r;
  r.check_id = "min_projection";
  r.body_k = body.tag();
  r.n = n;
  r.p = 1.0;

  Rng net_rng = rng.split("net");
  double lo = std::numeric_limits<double>::infinity();
  for (const auto& xi : direction_net(n, opts.direction_random, net_rng)) lo = std::min(lo, projection_volume(body, xi));
  r.lhs = Estimate::exact(lo);
  const DistanceBound dvr = dvr_projection_bound(body, 1.0, opts.loewner);
  const Estimate vol = body_volume(body, opts.mc, rng.split("volume"));
  r.rhs = scaled(power(vol, (n - 1.0) / n), std::sqrt(std::numbers::e) * dvr.value);
  r.constants.push_back({"sqrt(e)", std::sqrt(std::numbers::e), "upper bound for c_{n,1}"});
  r.constants.push_back({"c_{n,1}", constants::c_n1(n), "|B_2^{n-1}| / |B_2^n|^{(n-1)/n}"});
  add_bound(r, "d_vr(L,Pi_n)", dvr);
  r.notes.push_back("min over the direction net overstates the true minimum, so the check is conservative");
  decide_inequality(r, !dvr.exact());
  return r;
}

InequalityReport check_john_ceiling(const StarBody& body, const CheckOptions& opts) {
  const int n = body.dim();
  InequalityReport r;
  r.check_id = "john_ceiling";
  r.body_k = body.tag();
  r.n = n;
  const DistanceBound b = john_volume_ratio(body, opts.loewner);
  r.lhs = Estimate::exact(b.value);
  r.rhs = Estimate::exact(std::sqrt(static_cast<double>(n)) * (1.0 + 1e-6));
  add_bound(r, "d_vr(L,Pi_n)", b);
  decide_inequality(r, false);
  return r;
}

IsotropyEstimate estimate_isotropy(const StarBody& body, std::size_t samples, const Rng& rng) {
  const int n = body.dim();
  constexpr int batches = 20;
  const double c2 = constants::sphere_area(n) / (n + 2);
  const std::optional<double> closed = body.closed_form_volume();
  Mat total = Mat::Zero(n, n);
  double vol_sum = 0.0;
  std::size_t drawn = 0;
  Accumulator per_batch;
  for (int b = 0; b < batches; ++b) {
    const std::size_t count = samples / batches + (static_cast<std::size_t>(b) < samples % batches ? 1 : 0);
    if (count == 0) continue;
    Rng g = rng.split(static_cast<std::uint64_t>(b));
    Mat s = Mat::Zero(n, n);
    double v = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
      const Vec theta = g.sphere(n);
      const double rp = body.radial(theta), rm = body.radial(Vec(-theta));
      s.noalias() += 0.5 * (std::pow(rp, n + 2) + std::pow(rm, n + 2)) * theta * theta.transpose();
      v += 0.5 * (std::pow(rp, n) + std::pow(rm, n));
    }
    total += s;
    vol_sum += v;
    drawn += count;
    const double vol_b = closed ? *closed : constants::omega(n) * v / count;
    const Mat m_b = c2 * s / static_cast<double>(count);
    per_batch.add(std::pow((m_b / vol_b).determinant(), 1.0 / (2 * n)) / std::pow(vol_b, 1.0 / n));
  }
  IsotropyEstimate out;
  out.volume = closed ? *closed : constants::omega(n) * vol_sum / static_cast<double>(drawn);
  out.second_moments = c2 * total / static_cast<double>(drawn);
  out.l_k = std::pow((out.second_moments / out.volume).determinant(), 1.0 / (2 * n)) / std::pow(out.volume, 1.0 / n);
  out.l_k_se = per_batch.estimate().std_error;
  return out;
}

std::vector<InequalityReport> check_isotropy(const StarBody& body, std::size_t samples, const CheckOptions& opts,
                                             const Rng& rng) {
  const int n = body.dim();
  if (!body.is_symmetric()) throw std::invalid_argument("isotropy: body must be origin-symmetric");
  const IsotropyEstimate est = estimate_isotropy(body, samples, rng.split("covariance"));
  const Mat cov = est.second_moments / est.volume;
  Eigen::SelfAdjointEigenSolver<Mat> eig(cov);
  const double cond = eig.eigenvalues().maxCoeff() / eig.eigenvalues().minCoeff();
  if (!(eig.eigenvalues().minCoeff() > 0.0) || cond > 1e6)
    throw std::runtime_error("isotropy: covariance estimation failed (condition number " + fmt(cond) + ")");

  // T = L_K Cov^{-1/2} maps K to volume one with covariance L_K^2 I.
  const Mat t = est.l_k * linalg::inverse_sqrt_spd(cov);
  const StarBody iso = body.linear_image(t).with_tag("isotropic(" + body.tag() + ")");
  const IsotropyEstimate check = estimate_isotropy(iso, samples, rng.split("recheck"));

  std::vector<InequalityReport> out;
  auto base = [&](const std::string& id) {
    InequalityReport r;
    r.check_id = id;
    r.body_k = body.tag();
    r.n = n;
    return r;
  };

  InequalityReport value = base("isotropy.l_k");
  value.lhs = Estimate{est.l_k, est.l_k_se, samples};
  value.rhs = Estimate::exact(est.l_k);
  value.notes.push_back("isotropic constant from the polar second-moment formula; reported only");
  value.constants.push_back({"condition_number", cond, "covariance of K"});
  value.verdict = Verdict::reported;
  out.push_back(value);

  Rng net_rng = rng.split("net");
  const auto dirs = direction_net(n, 40, net_rng);
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0, sum = 0.0;
  for (const auto& xi : dirs) {
    const double l = std::sqrt(xi.vec().dot(check.second_moments * xi.vec()) / check.volume) /
                     std::pow(check.volume, 1.0 / n);
    lo = std::min(lo, l);
    hi = std::max(hi, l);
    sum += l;
  }
  InequalityReport spread = base("isotropy.spread");
  spread.lhs = Estimate::exact((hi - lo) / (sum / static_cast<double>(dirs.size())));
  spread.rhs = Estimate::exact(0.02);
  spread.notes.push_back("relative spread of (int <x,xi>^2)^{1/2} over " + std::to_string(dirs.size()) +
                         " directions after isotropization, fresh samples");
  decide_inequality(spread, false);
  out.push_back(spread);

  double sec_lo = std::numeric_limits<double>::infinity(), sec_hi = 0.0;
  const Rng sections = rng.split("sections");
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    const Estimate s = section_volume(iso, Subspace::hyperplane(dirs[i]), opts.section_mc(), sections.split(i));
    sec_lo = std::min(sec_lo, s.value * est.l_k);
    sec_hi = std::max(sec_hi, s.value * est.l_k);
  }
  InequalityReport upper = base("isotropy.hensley_upper");
  upper.lhs = Estimate::exact(sec_hi);
  upper.rhs = Estimate::exact(opts.hensley_high);
  upper.notes.push_back("max of |K cap xi^perp| L_K in isotropic position; envelope is an engineering default");
  decide_inequality(upper, false);
  out.push_back(upper);
  InequalityReport lower = base("isotropy.hensley_lower");
  lower.lhs = Estimate::exact(opts.hensley_low);
  lower.rhs = Estimate::exact(sec_lo);
  lower.notes.push_back("min of |K cap xi^perp| L_K in isotropic position; envelope is an engineering default");
  decide_inequality(lower, false);
  out.push_back(lower);

  InequalityReport milman = base("isotropy.milman");
  const DistanceBound d = dovr_bp_bound(body, 1, opts.loewner);
  milman.lhs = Estimate{est.l_k, est.l_k_se, samples};
  milman.rhs = Estimate::exact(opts.milman_budget * d.value);
  add_bound(milman, "d_ovr(K,I_n)", d);
  milman.constants.push_back({"C_budget", opts.milman_budget, "regression budget for the unspecified absolute constant"});
  decide_inequality(milman, !d.exact());
  out.push_back(milman);
  return out;
}

// ------------------------------------------------------------ sanity

std::vector<InequalityReport> check_constants(int gamma_max_n, int c_max_n) {
  std::vector<InequalityReport> out;
  auto make = [](const std::string& id, int n, double lhs, double rhs, const std::string& note) {
    InequalityReport r;
    r.check_id = id;
    r.n = n;
    r.lhs = Estimate::exact(lhs);
    r.rhs = Estimate::exact(rhs);
    r.notes.push_back(note);
    decide_inequality(r, false);
    return r;
  };
  double lower = 0.0, upper = 0.0;
  for (int n = 2; n <= gamma_max_n; ++n) {
    for (int k = 1; k < n; ++k) {
      const double g = constants::gamma_nk(n, k);
      lower = std::max(lower, std::exp(-k / 2.0) / g);
      upper = std::max(upper, g);
    }
  }
  out.push_back(make("constants.gamma_lower", gamma_max_n, lower, 1.0,
                     "max over n <= " + std::to_string(gamma_max_n) + ", 1 <= k < n of e^{-k/2} / gamma_{n,k}; strict"));
  out.push_back(make("constants.gamma_upper", gamma_max_n, upper, 1.0,
                     "max over n <= " + std::to_string(gamma_max_n) + ", 1 <= k < n of gamma_{n,k}; strict"));
  for (auto* r : {&out[0], &out[1]})
    if (r->lhs.value >= 1.0) r->verdict = Verdict::violated;

  double c = 0.0;
  for (int n = 2; n <= c_max_n; ++n) c = std::max(c, constants::c_n1(n));
  out.push_back(make("constants.c_n1", c_max_n, c, std::sqrt(std::numbers::e),
                     "max over n <= " + std::to_string(c_max_n) + " of c_{n,1}"));

  double env_lo = std::numeric_limits<double>::infinity(), env_hi = 0.0;
  for (int n = 3; n <= 20; ++n) {
    for (int k = 1; k <= n - 2; ++k) {
      const double e = constants::sqrt_envelope(n, k);
      env_lo = std::min(env_lo, e);
      env_hi = std::max(env_hi, e);
    }
  }
  out.push_back(make("constants.envelope_upper", 20, env_hi, 5.0,
                     "max over 3 <= n <= 20, 1 <= k <= n-2 of [gamma^{-n} p(n,n-k)]^{1/(k(n-k))} / sqrt(n-k)"));
  out.push_back(make("constants.envelope_lower", 20, 0.2, env_lo,
                     "min over 3 <= n <= 20, 1 <= k <= n-2 of [gamma^{-n} p(n,n-k)]^{1/(k(n-k))} / sqrt(n-k)"));
  return out;
}

InequalityReport check_volume(const StarBody& body, const CheckOptions& opts, const Rng& rng) {
  const auto exact = body.closed_form_volume();
  if (!exact) throw std::invalid_argument("volume: '" + body.tag() + "' has no closed-form volume");
  InequalityReport r;
  r.check_id = "volume";
  r.body_k = body.tag();
  r.n = body.dim();
  r.lhs = polar_volume(body, opts.mc, rng);
  r.rhs = Estimate::exact(*exact);
  r.notes.push_back("polar-formula estimate against the closed form; relative SE " + fmt(r.lhs.relative_error()));
  decide_equality(r);
  return r;
}

InequalityReport check_section(const StarBody& body, const Subspace& h, const CheckOptions& opts, const Rng& rng) {
  const auto exact = exact_section_volume(body, h);
  if (!exact) throw std::invalid_argument("section: no exact section volume for '" + body.tag() + "'");
  InequalityReport r;
  r.check_id = "section";
  r.body_k = body.tag();
  r.n = body.dim();
  r.k = h.codim();
  r.lhs = integrate_section(body, Density::constant(1.0), h, opts.mc, rng);
  r.rhs = Estimate::exact(*exact);
  r.notes.push_back("Monte Carlo section integral against exact slicing");
  decide_equality(r);
  return r;
}

}  // namespace tomo
