#include "tomo/loewner.hpp"

#include "tomo/radon.hpp"
#include "tomo/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace tomo {

namespace {

struct Design {
  Mat inverse;            // M(u)^{-1}
  std::vector<double> kappa;  // x_i^T M^{-1} x_i
};

Design rebuild(const std::vector<Vec>& x, const std::vector<double>& u, int n) {
  Mat m = Mat::Zero(n, n);
  for (std::size_t i = 0; i < x.size(); ++i)
    if (u[i] > 0.0) m.noalias() += u[i] * x[i] * x[i].transpose();
  Eigen::LLT<Mat> llt(m);
  if (llt.info() != Eigen::Success) throw std::runtime_error("loewner: point cloud does not span R^n");
  Design d;
  d.inverse = llt.solve(Mat::Identity(n, n));
  d.kappa.resize(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) d.kappa[i] = x[i].dot(d.inverse * x[i]);
  return d;
}

std::vector<Vec> deterministic_directions(int n) {
  std::vector<Vec> dirs;
  for (int i = 0; i < n; ++i) {
    for (double s : {1.0, -1.0}) {
      Vec v = Vec::Zero(n);
      v[i] = s;
      dirs.push_back(v);
    }
  }
  const double r = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      for (double si : {1.0, -1.0}) {
        for (double sj : {1.0, -1.0}) {
          Vec v = Vec::Zero(n);
          v[i] = si * r;
          v[j] = sj * r;
          dirs.push_back(v);
        }
      }
    }
  }
  return dirs;
}

void require_symmetric_convex(const StarBody& body, const char* what) {
  if (!body.is_convex()) throw std::invalid_argument(std::string(what) + ": '" + body.tag() + "' is not convex");
  if (!body.is_symmetric())
    throw std::invalid_argument(std::string(what) + ": '" + body.tag() + "' is not origin-symmetric");
}

double volume_of(const StarBody& body, std::uint64_t seed) {
  if (auto v = body.closed_form_volume()) return *v;
  return polar_volume(body, McConfig{}, Rng(seed, hash_label("ovr-volume"))).value;
}

}  // namespace

Ellipsoid loewner_of_points(const std::vector<Vec>& points, double tol) {
  if (points.empty()) throw std::invalid_argument("loewner_of_points: empty cloud");
  const int n = static_cast<int>(points.front().size());
  std::vector<Vec> x;
  x.reserve(points.size());
  for (const auto& p : points)
    if (p.norm() > 0.0) x.push_back(p);
  const std::size_t count = x.size();
  if (static_cast<int>(count) < n) throw std::runtime_error("loewner: point cloud does not span R^n");

  // Frank-Wolfe with away steps on the D-optimal design problem
  // max log det sum u_i x_i x_i^T. At the optimum max kappa_i = n; stopping at
  // max kappa <= n(1+eps) bounds the volume excess by (1+eps)^{n/2}.
  const double eps = std::pow(1.0 + tol, 2.0 / n) - 1.0;
  std::vector<double> u(count, 1.0 / static_cast<double>(count));
  Design d = rebuild(x, u, n);
  const long max_iter = 200'000;
  for (long iter = 1; iter <= max_iter; ++iter) {
    std::size_t j = 0, i = count;
    for (std::size_t t = 0; t < count; ++t) {
      if (d.kappa[t] > d.kappa[j]) j = t;
      if (u[t] > 0.0 && (i == count || d.kappa[t] < d.kappa[i])) i = t;
    }
    if (d.kappa[j] <= n * (1.0 + eps)) break;

    std::size_t pick = j;
    double lambda = 0.0;
    bool drop = false;
    if (i != count && n - d.kappa[i] > d.kappa[j] - n && u[i] < 1.0) {
      pick = i;
      const double cap = u[i] / (1.0 - u[i]);
      double mu = cap;
      if (d.kappa[i] > 1.0) mu = std::min(cap, (n - d.kappa[i]) / (n * (d.kappa[i] - 1.0)));
      drop = mu >= cap;
      lambda = -mu;
    } else {
      lambda = (d.kappa[j] - n) / (n * (d.kappa[j] - 1.0));
    }

    for (auto& w : u) w *= 1.0 - lambda;
    u[pick] += lambda;
    if (drop) u[pick] = 0.0;

    if (iter % 512 == 0) {
      d = rebuild(x, u, n);
      continue;
    }
    // Sherman-Morrison for M' = (1 - lambda)(M + a x x^T), a = lambda / (1 - lambda).
    const double a = lambda / (1.0 - lambda);
    const Vec v = d.inverse * x[pick];
    const double denom = 1.0 + a * d.kappa[pick];
    const double c = a / denom;
    const double inv_scale = 1.0 / (1.0 - lambda);
    d.inverse = inv_scale * (d.inverse - c * v * v.transpose());
    for (std::size_t t = 0; t < count; ++t) {
      const double s = x[t].dot(v);
      d.kappa[t] = inv_scale * (d.kappa[t] - c * s * s);
    }
  }
  d = rebuild(x, u, n);
  const double kmax = *std::max_element(d.kappa.begin(), d.kappa.end());
  Mat shape = d.inverse / kmax;
  return Ellipsoid(0.5 * (shape + shape.transpose()));
}

Ellipsoid loewner(const StarBody& body, const LoewnerOptions& opts) {
  require_symmetric_convex(body, "loewner");
  const int n = body.dim();
  if (n > 10) throw std::invalid_argument("loewner: dimension above 10 is not supported");
  if (const Ellipsoid* e = body.ellipsoid()) return *e;

  std::vector<Vec> cloud;
  if (const ConvexPolytope* p = body.polytope()) {
    // The hull of the vertices is the body, so the fit is already certified.
    return loewner_of_points(p->vertices(), opts.tol);
  }

  for (const auto& dir : deterministic_directions(n)) cloud.push_back(body.support_point(dir));
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    Vec v(n);
    for (int i = 0; i < n; ++i) v[i] = (mask >> i) & 1 ? 1.0 : -1.0;
    cloud.push_back(body.support_point(v / std::sqrt(static_cast<double>(n))));
  }
  Rng rng(opts.seed, hash_label("loewner-cloud"));
  for (int i = 0; i < opts.random_cloud; ++i) cloud.push_back(body.support_point(rng.sphere(n)));

  std::vector<Vec> net = deterministic_directions(n);
  Rng cert(opts.seed, hash_label("loewner-certify"));
  for (int i = 0; i < opts.certification_directions; ++i) net.push_back(cert.sphere(n));
  std::vector<double> h(net.size());
  for (std::size_t i = 0; i < net.size(); ++i) h[i] = body.support(net[i]);

  for (int round = 0; round <= opts.max_refits; ++round) {
    Ellipsoid e = loewner_of_points(cloud, opts.tol);
    std::vector<std::pair<double, std::size_t>> bad;
    for (std::size_t i = 0; i < net.size(); ++i) {
      const double excess = h[i] / e.support(net[i]) - 1.0;
      if (excess > 1e-8) bad.push_back({excess, i});
    }
    if (bad.empty()) return e;
    std::sort(bad.begin(), bad.end(), std::greater<>());
    const std::size_t keep = std::min<std::size_t>(bad.size(), 256);
    for (std::size_t t = 0; t < keep; ++t) cloud.push_back(body.support_point(net[bad[t].second]));
  }
  throw std::runtime_error("loewner: containment of '" + body.tag() + "' could not be certified");
}

DistanceBound ovr(const StarBody& body, const LoewnerOptions& opts) {
  require_symmetric_convex(body, "ovr");
  if (body.traits().ellipsoidal) return DistanceBound{BoundKind::loewner_ellipsoid, 1.0, "Loewner ellipsoid (body is an ellipsoid)"};
  const Ellipsoid e = loewner(body, opts);
  const double ratio = std::pow(e.volume() / volume_of(body, opts.seed), 1.0 / body.dim());
  return DistanceBound{BoundKind::loewner_ellipsoid, std::max(1.0, ratio), "Loewner ellipsoid"};
}

DistanceBound dovr_bp_bound(const StarBody& body, int k, const LoewnerOptions& opts) {
  if (k < 1 || k > body.dim() - 1) throw std::invalid_argument("dovr_bp_bound: k must satisfy 1 <= k <= n-1");
  if (auto registered = body.registered_dovr(k)) return *registered;
  if (body.traits().intersection_body)
    return DistanceBound{BoundKind::exact_one, 1.0, "intersection body; I_n is contained in BP_k^n"};
  if (!body.is_convex() || !body.is_symmetric())
    throw std::invalid_argument("dovr_bp_bound: '" + body.tag() +
                                "' is not origin-symmetric convex; supply an explicit distance bound");
  return ovr(body, opts);
}

DistanceBound john_volume_ratio(const StarBody& body, const LoewnerOptions& opts) {
  require_symmetric_convex(body, "john_volume_ratio");
  const Ellipsoid inner = loewner(body.polar(), opts).polar();
  const double ratio = std::pow(volume_of(body, opts.seed) / inner.volume(), 1.0 / body.dim());
  return DistanceBound{BoundKind::loewner_ellipsoid, std::max(1.0, ratio),
                       "John ellipsoid (polar of the Loewner ellipsoid of the polar body); ellipsoids are projection bodies"};
}

DistanceBound dvr_projection_bound(const StarBody& body, double p, const LoewnerOptions& opts) {
  if (!(p >= 1.0)) throw std::invalid_argument("dvr_projection_bound: p must be at least 1");
  const BodyTraits traits = body.traits();
  if (traits.ellipsoidal) return DistanceBound{BoundKind::exact_one, 1.0, "ellipsoids are p-projection bodies"};
  if (p == 1.0 && traits.zonotope) {
    const bool cube = body.tag().rfind("cube", 0) == 0;
    return DistanceBound{BoundKind::exact_one, 1.0, cube ? "cube is a zonotope" : "zonotope"};
  }
  return john_volume_ratio(body, opts);
}

double general_bp_factor(int n, int k) {
  const double r = static_cast<double>(n) / k;
  return std::sqrt(r) * std::pow(std::log(std::exp(1.0) * r), 1.5);
}

}  // namespace tomo
