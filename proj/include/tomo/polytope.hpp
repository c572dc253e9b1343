#pragma once

#include "tomo/linalg.hpp"

#include <utility>
#include <vector>

namespace tomo {

struct Facet {
  Vec normal;         // outward unit normal
  double offset;      // h_P(normal) = max_v <v, normal>
  double area;        // (n-1)-dimensional measure
};

/// Convex polytope with the origin in its interior, given by both its
/// vertices and its facets.
class ConvexPolytope {
 public:
  /// Validates: positive offsets, h(u_F) == offset_F, sum area_F u_F == 0.
  ConvexPolytope(std::vector<Vec> vertices, std::vector<Facet> facets);

  /// Convex hull of `points`; coplanar hull simplices are merged into one
  /// facet. Supported for 2 <= n <= 6.
  static ConvexPolytope from_vertices(const std::vector<Vec>& points);

  static ConvexPolytope cube(int n, double half_side);
  static ConvexPolytope cross_polytope(int n, double radius);

  int dim() const { return dim_; }
  const std::vector<Vec>& vertices() const { return vertices_; }
  const std::vector<Facet>& facets() const { return facets_; }
  /// Vertex index pairs spanning 1-dimensional faces.
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }

  /// Exact, from the facet decomposition (1/n) sum h_F area_F.
  double volume() const { return volume_; }
  double surface_area() const;
  bool is_symmetric() const { return symmetric_; }

  double support(const Vec& xi) const;
  Vec support_point(const Vec& xi) const;
  /// rho(theta) = min over facets with <u,theta> > 0 of h_F / <u,theta>.
  double radial(const Vec& theta) const;
  bool contains(const Vec& x, double tol = 1e-12) const;

  /// Image under an invertible linear map; facet areas follow
  /// area' = |det T| |T^{-T} u| area.
  ConvexPolytope transformed(const Mat& t) const;

  /// Polar body conv(u_F / h_F). Supported for n <= 6.
  ConvexPolytope polar() const;

  /// Exact (n-k)-volume of P cap H. Codimension one uses edge crossings,
  /// higher codimension enumerates tight constraint sets. Throws
  /// std::length_error when the enumeration would exceed `max_subsets`.
  double section_volume(const Subspace& h, std::size_t max_subsets = 4'000'000) const;

  /// Exact volume of the orthogonal projection P|H (hull of projected
  /// vertices).
  double projection_volume(const Subspace& h) const;

 private:
  void compute_edges();

  int dim_;
  std::vector<Vec> vertices_;
  std::vector<Facet> facets_;
  std::vector<std::pair<int, int>> edges_;
  double volume_ = 0.0;
  bool symmetric_ = false;
};

}  // namespace tomo
