#include "tomo/radon.hpp"

#include "tomo/constants.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace tomo {

QuadratureRule gauss_legendre(int order) {
  if (order < 1) throw std::invalid_argument("gauss_legendre: order must be positive");
  QuadratureRule rule;
  rule.nodes.resize(static_cast<std::size_t>(order));
  rule.weights.resize(static_cast<std::size_t>(order));
  // Newton iteration on P_order from the usual cosine initial guesses,
  // then map [-1, 1] -> [0, 1].
  auto legendre = [order](double x, double& derivative) {
    double p0 = 1.0, p1 = x;
    for (int j = 2; j <= order; ++j) {
      const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
      p0 = p1;
      p1 = p2;
    }
    derivative = order * (x * p1 - p0) / (x * x - 1.0);
    return p1;
  };
  for (int i = 0; i < (order + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      const double dx = legendre(x, dp) / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    legendre(x, dp);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    const auto lo = static_cast<std::size_t>(i);
    const auto hi = static_cast<std::size_t>(order - 1 - i);
    rule.nodes[lo] = 0.5 * (1.0 - x);
    rule.nodes[hi] = 0.5 * (1.0 + x);
    rule.weights[lo] = 0.5 * w;
    rule.weights[hi] = 0.5 * w;
  }
  return rule;
}

Direction sample_sphere(int n, Rng& rng) { return Direction(rng.sphere(n)); }

Subspace sample_grassmann(int n, int m, Rng& rng) { return rng.grassmann(n, m); }

Accumulator fan_out(const McConfig& cfg, const Rng& rng,
                    const std::function<void(std::size_t, Accumulator&, Rng&)>& chunk) {
  const int workers = std::max(1, cfg.workers);
  const std::size_t base = cfg.samples / static_cast<std::size_t>(workers);
  const std::size_t extra = cfg.samples % static_cast<std::size_t>(workers);
  std::vector<Accumulator> parts(static_cast<std::size_t>(workers));
  std::vector<Rng> streams;
  streams.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) streams.push_back(rng.split(static_cast<std::uint64_t>(w)));
  auto count = [&](int w) { return base + (static_cast<std::size_t>(w) < extra ? 1 : 0); };

  if (workers == 1) {
    chunk(count(0), parts[0], streams[0]);
  } else {
    std::vector<std::thread> threads;
    threads.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
      const auto i = static_cast<std::size_t>(w);
      threads.emplace_back([&, w, i] { chunk(count(w), parts[i], streams[i]); });
    }
    for (auto& t : threads) t.join();
  }
  Accumulator total;
  for (const auto& part : parts) total.merge(part);
  return total;
}

namespace {

/// int_0^rho r^{d-1} f(r theta) dr
class RadialIntegral {
 public:
  RadialIntegral(const Density& f, int d, int nodes) : f_(f), d_(d) {
    if (f.constant_value || f.halfspace) return;
    rule_ = gauss_legendre(nodes);
    // weights absorb t^{d-1}, so the sum is rho^d sum_i w_i f(rho t_i theta)
    for (std::size_t i = 0; i < rule_.nodes.size(); ++i) rule_.weights[i] *= std::pow(rule_.nodes[i], d_ - 1);
  }

  double operator()(const Vec& theta, double rho) const {
    const double rho_d = std::pow(rho, d_);
    if (f_.constant_value) return *f_.constant_value * rho_d / d_;
    // Half-space indicators are constant along open rays.
    if (f_.halfspace) return f_.eval(theta) * rho_d / d_;
    double sum = 0.0;
    if (f_.radial_profile) {
      for (std::size_t i = 0; i < rule_.nodes.size(); ++i) sum += rule_.weights[i] * f_.radial_profile(rho * rule_.nodes[i]);
      return rho_d * sum;
    }
    Vec x(theta.size());
    for (std::size_t i = 0; i < rule_.nodes.size(); ++i) {
      x.noalias() = (rho * rule_.nodes[i]) * theta;
      sum += rule_.weights[i] * f_.eval(x);
    }
    return rho_d * sum;
  }

 private:
  const Density& f_;
  int d_;
  QuadratureRule rule_;
};

void require_dim(const StarBody& body, const Subspace& h) {
  if (body.dim() != h.ambient_dim()) throw std::invalid_argument("section of '" + body.tag() + "': dimension mismatch");
}

}  // namespace

Estimate polar_volume(const StarBody& body, const McConfig& cfg, const Rng& rng) {
  const int n = body.dim();
  auto acc = fan_out(cfg, rng, [&](std::size_t count, Accumulator& out, Rng& r) {
    for (std::size_t i = 0; i < count; ++i) {
      const Vec theta = r.sphere(n);
      out.add(0.5 * (std::pow(body.radial(theta), n) + std::pow(body.radial(Vec(-theta)), n)));
    }
  });
  return acc.estimate(constants::omega(n));
}

Estimate integrate_body(const StarBody& body, const Density& f, const McConfig& cfg, const Rng& rng) {
  const int n = body.dim();
  const RadialIntegral radial(f, n, cfg.radial_nodes);
  auto acc = fan_out(cfg, rng, [&](std::size_t count, Accumulator& out, Rng& r) {
    for (std::size_t i = 0; i < count; ++i) {
      const Vec theta = r.sphere(n);
      const Vec minus = -theta;
      out.add(0.5 * (radial(theta, body.radial(theta)) + radial(minus, body.radial(minus))));
    }
  });
  return acc.estimate(constants::sphere_area(n));
}

Estimate integrate_section(const StarBody& body, const Density& f, const Subspace& h, const McConfig& cfg,
                           const Rng& rng) {
  require_dim(body, h);
  const int m = h.dim();
  const Mat& b = h.basis();
  const RadialIntegral radial(f, m, cfg.radial_nodes);
  auto acc = fan_out(cfg, rng, [&](std::size_t count, Accumulator& out, Rng& r) {
    for (std::size_t i = 0; i < count; ++i) {
      const Vec theta = b * r.sphere(m);
      const Vec minus = -theta;
      out.add(0.5 * (radial(theta, body.radial(theta)) + radial(minus, body.radial(minus))));
    }
  });
  return acc.estimate(constants::sphere_area(m));
}

Estimate spherical_radon(const std::function<double(const Vec&)>& g, const Subspace& h, const McConfig& cfg,
                         const Rng& rng) {
  const int m = h.dim();
  const Mat& b = h.basis();
  auto acc = fan_out(cfg, rng, [&](std::size_t count, Accumulator& out, Rng& r) {
    for (std::size_t i = 0; i < count; ++i) {
      const Vec theta = b * r.sphere(m);
      out.add(0.5 * (g(theta) + g(Vec(-theta))));
    }
  });
  return acc.estimate(constants::sphere_area(m));
}

std::optional<double> exact_section_volume(const StarBody& body, const Subspace& h) {
  require_dim(body, h);
  if (const Ellipsoid* e = body.ellipsoid()) return e->section_volume(h);
  if (const ConvexPolytope* p = body.polytope()) {
    try {
      return p->section_volume(h);
    } catch (const std::length_error&) {
      return std::nullopt;
    }
  }
  return std::nullopt;
}

Estimate section_volume(const StarBody& body, const Subspace& h, const McConfig& cfg, const Rng& rng) {
  if (auto v = exact_section_volume(body, h)) return Estimate::exact(*v);
  return integrate_section(body, Density::constant(1.0), h, cfg, rng);
}

Estimate body_volume(const StarBody& body, const McConfig& cfg, const Rng& rng) {
  if (auto v = body.closed_form_volume()) return Estimate::exact(*v);
  return polar_volume(body, cfg, rng);
}

double simplex_volume(const std::vector<Vec>& vectors) {
  if (vectors.empty()) return 0.0;
  const auto s = static_cast<Eigen::Index>(vectors.size());
  const auto n = vectors.front().size();
  if (s > n) return 0.0;
  Mat g(n, s);
  for (Eigen::Index j = 0; j < s; ++j) g.col(j) = vectors[static_cast<std::size_t>(j)];
  const double det = (g.transpose() * g).determinant();
  return std::sqrt(std::max(det, 0.0)) / std::exp(linalg::log_factorial(static_cast<int>(s)));
}

InequalityReport blaschke_check(const StarBody& body, int s, const McConfig& cfg, const Rng& rng) {
  const int n = body.dim();
  if (s < 1 || s > n - 1) throw std::invalid_argument("blaschke_check: s must satisfy 1 <= s <= n-1");

  InequalityReport r;
  r.check_id = "blaschke";
  r.body_k = body.tag();
  r.n = n;
  r.k = s;
  const double p = constants::p_const(n, s);
  r.constants.push_back({"p(n,s)", p, "Blaschke-Petkantschin constant"});

  r.lhs = power(polar_volume(body, cfg, rng.split("lhs")), s);

  const double area = constants::sphere_area(s);
  const double inv_s = 1.0 / s;
  auto acc = fan_out(cfg, rng.split("rhs"), [&](std::size_t count, Accumulator& out, Rng& g) {
    std::vector<Vec> xs(static_cast<std::size_t>(s));
    for (std::size_t i = 0; i < count; ++i) {
      const Subspace h = g.grassmann(n, s);
      double weight = 1.0;
      for (auto& x : xs) {
        const Vec theta = h.basis() * g.sphere(s);
        const double rho = body.radial(theta);
        weight *= area * std::pow(rho, s) * inv_s;
        x = rho * std::pow(g.uniform(), inv_s) * theta;
      }
      out.add(weight * std::pow(simplex_volume(xs), n - s));
    }
  });
  r.rhs = acc.estimate(p);
  decide_equality(r);
  r.notes.push_back("section points by polar sampling in H with importance weight |S^{s-1}| rho^s / s");
  return r;
}

}  // namespace tomo
