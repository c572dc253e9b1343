#include "tomo/brunn.hpp"

#include "tomo/constants.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace tomo {

namespace {

void require_p(double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("p must be at least 1");
}

void require_dim(int n, int m, const char* what) {
  if (n != m) throw std::invalid_argument(std::string(what) + ": dimension mismatch");
}

}  // namespace

double SurfaceMeasure::total() const {
  double s = 0.0;
  for (const auto& a : atoms) s += a.mass;
  return s;
}

double SurfaceMeasure::centroid_defect() const {
  Vec s = Vec::Zero(dim);
  for (const auto& a : atoms) s += a.mass * a.normal;
  return s.cwiseAbs().maxCoeff();
}

SurfaceMeasure surface_measure(const ConvexPolytope& k) {
  SurfaceMeasure s;
  s.dim = k.dim();
  for (const auto& f : k.facets()) {
    if (!(f.area > 0.0)) throw std::invalid_argument("surface_measure: degenerate facet");
    s.atoms.push_back({f.normal, f.area});
  }
  return s;
}

PSurfaceMeasure p_surface_measure(const ConvexPolytope& k, double p) {
  require_p(p);
  PSurfaceMeasure s;
  s.dim = k.dim();
  s.p = p;
  for (const auto& f : k.facets()) s.atoms.push_back({f.normal, f.area * std::pow(f.offset, 1.0 - p)});
  return s;
}

double projection_volume(const ConvexPolytope& k, const Direction& xi) {
  require_dim(k.dim(), xi.dim(), "projection_volume");
  double s = 0.0;
  for (const auto& f : k.facets()) s += f.area * std::abs(f.normal.dot(xi.vec()));
  return 0.5 * s;
}

double projection_volume(const StarBody& k, const Direction& xi) {
  if (const ConvexPolytope* p = k.polytope()) return projection_volume(*p, xi);
  if (const Ellipsoid* e = k.ellipsoid()) {
    require_dim(k.dim(), xi.dim(), "projection_volume");
    const int n = k.dim();
    return constants::omega(n - 1) * std::sqrt(xi.vec().dot(e->shape() * xi.vec())) * e->volume() /
           constants::omega(n);
  }
  throw std::invalid_argument("projection_volume: '" + k.tag() + "' is neither a polytope nor an ellipsoid");
}

Estimate shadow_area_mc(const ConvexPolytope& k, const Direction& xi, std::size_t samples, Rng& rng) {
  if (samples < 2) throw std::invalid_argument("shadow_area_mc: need at least two samples");
  const int n = k.dim();
  const Mat basis = Subspace::hyperplane(xi).basis();
  double radius = 0.0;
  for (const auto& v : k.vertices()) radius = std::max(radius, v.norm());
  std::vector<double> slope;
  for (const auto& f : k.facets()) slope.push_back(f.normal.dot(xi.vec()));
  std::size_t hits = 0;
  Vec u(n - 1);
  for (std::size_t i = 0; i < samples; ++i) {
    for (int j = 0; j < n - 1; ++j) u[j] = radius * (2.0 * rng.uniform() - 1.0);
    const Vec y = basis * u;
    double lo = -std::numeric_limits<double>::infinity(), hi = std::numeric_limits<double>::infinity();
    bool hit = true;
    for (std::size_t f = 0; f < k.facets().size() && hit; ++f) {
      const double gap = k.facets()[f].offset - k.facets()[f].normal.dot(y);
      const double a = slope[f];
      if (std::abs(a) < 1e-15) {
        hit = gap >= 0.0;
      } else if (a > 0.0) {
        hi = std::min(hi, gap / a);
      } else {
        lo = std::max(lo, gap / a);
      }
    }
    if (hit && lo <= hi) ++hits;
  }
  const double box = std::pow(2.0 * radius, n - 1);
  const double frac = static_cast<double>(hits) / static_cast<double>(samples);
  return Estimate{box * frac, box * std::sqrt(frac * (1.0 - frac) / static_cast<double>(samples - 1)), samples};
}

double projection_volume_subspace(const ConvexPolytope& k, const Subspace& h) {
  require_dim(k.dim(), h.ambient_dim(), "projection_volume_subspace");
  if (h.dim() > 6) throw std::invalid_argument("projection_volume_subspace: subspace dimension above 6");
  const double v = k.projection_volume(h);
  if (!(v > 0.0)) throw std::runtime_error("projection_volume_subspace: degenerate projection");
  return v;
}

double projection_volume_subspace(const StarBody& k, const Subspace& h) {
  if (const ConvexPolytope* p = k.polytope()) return projection_volume_subspace(*p, h);
  if (const Ellipsoid* e = k.ellipsoid()) return e->projection_volume(h);
  throw std::invalid_argument("projection_volume_subspace: '" + k.tag() + "' is neither a polytope nor an ellipsoid");
}

double mixed_volume_v1(const ConvexPolytope& k, const StarBody& l) {
  require_dim(k.dim(), l.dim(), "mixed_volume_v1");
  double s = 0.0;
  for (const auto& f : k.facets()) s += l.support(f.normal) * f.area;
  return s / k.dim();
}

double p_mixed_volume(const ConvexPolytope& k, const StarBody& l, double p) {
  require_p(p);
  require_dim(k.dim(), l.dim(), "p_mixed_volume");
  double s = 0.0;
  for (const auto& f : k.facets()) s += std::pow(l.support(f.normal), p) * std::pow(f.offset, 1.0 - p) * f.area;
  return s / k.dim();
}

double p_projection_support(const ConvexPolytope& k, const Direction& xi, double p) {
  require_p(p);
  require_dim(k.dim(), xi.dim(), "p_projection_support");
  double s = 0.0;
  for (const auto& f : k.facets())
    s += std::pow(std::abs(f.normal.dot(xi.vec())), p) * std::pow(f.offset, 1.0 - p) * f.area;
  return std::pow(s / (2.0 * k.dim()), 1.0 / p);
}

double p_projection_support(const StarBody& k, const Direction& xi, double p) {
  require_p(p);
  if (const ConvexPolytope* poly = k.polytope()) return p_projection_support(*poly, xi, p);
  if (const Ellipsoid* e = k.ellipsoid()) {
    require_dim(k.dim(), xi.dim(), "p_projection_support");
    const int n = k.dim();
    // E = T B with T = A^{-1/2}: |det T| = |E| / omega_n, |T^{-1} xi| = sqrt(xi^T A xi).
    // For the unit ball, h^p = (1/(2n)) int_{S^{n-1}} |<u, xi>|^p du.
    const double ball = std::pow(constants::sphere_abs_moment(n, p) / (2.0 * n), 1.0 / p);
    const double det_t = e->volume() / constants::omega(n);
    return std::pow(det_t, 1.0 / p) * ball * std::sqrt(xi.vec().dot(e->shape() * xi.vec()));
  }
  throw std::invalid_argument("p_projection_support: '" + k.tag() + "' is neither a polytope nor an ellipsoid");
}

}  // namespace tomo
