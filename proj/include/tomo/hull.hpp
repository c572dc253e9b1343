#pragma once

#include "tomo/linalg.hpp"

#include <vector>

namespace tomo::hull {

/// Simplicial facet: d point indices, outward unit normal, offset <n, p>.
struct SimplexFacet {
  std::vector<int> vertices;
  Vec normal;
  double offset = 0.0;
};

/// Triangulated boundary of the convex hull of a point set in R^d, d >= 2.
///
/// Built by incremental beneath-beyond insertion. Degenerate input
/// (duplicates, coplanar points) is tolerated: a point is inserted only when
/// it lies beyond some facet by more than the distance tolerance, so the
/// boundary may carry coplanar simplices but never overlaps.
class Hull {
 public:
  Hull(std::vector<Vec> points, double relative_tolerance = 1e-10);

  int dim() const { return dim_; }
  const std::vector<Vec>& points() const { return points_; }
  const std::vector<SimplexFacet>& facets() const { return facets_; }
  const Vec& interior_point() const { return interior_; }

  double volume() const { return volume_; }
  /// (d-1)-volume of a simplicial facet.
  double facet_area(const SimplexFacet& f) const;
  /// Indices of points used by at least one facet.
  std::vector<int> vertex_indices() const;

 private:
  int dim_;
  std::vector<Vec> points_;
  std::vector<SimplexFacet> facets_;
  Vec interior_;
  double volume_ = 0.0;
};

/// Volume of conv(points); d = 1 handled as max - min. Returns 0 for
/// lower-dimensional input instead of throwing.
double hull_volume(const std::vector<Vec>& points);

/// s-dimensional volume of the simplex with the given s+1 vertices in R^n.
double simplex_measure(const std::vector<Vec>& vertices);

}  // namespace tomo::hull
