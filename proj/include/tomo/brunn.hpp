#pragma once

#include "tomo/bodies.hpp"
#include "tomo/estimate.hpp"
#include "tomo/rng.hpp"

#include <vector>

namespace tomo {

struct SurfaceAtom {
  Vec normal;
  double mass = 0.0;
};

/// Surface area measure of a polytope: one atom per facet.
struct SurfaceMeasure {
  int dim = 0;
  std::vector<SurfaceAtom> atoms;

  double total() const;
  /// |sum m_F u_F|_inf; zero for a closed surface.
  double centroid_defect() const;
};

/// S_p(K, .) = h_K^{1-p} S(K, .), atoms carry the reweighted masses.
struct PSurfaceMeasure {
  int dim = 0;
  double p = 1.0;
  std::vector<SurfaceAtom> atoms;
};

SurfaceMeasure surface_measure(const ConvexPolytope& k);
PSurfaceMeasure p_surface_measure(const ConvexPolytope& k, double p);

/// |K | xi^perp| by the Cauchy formula (1/2) sum m_F |<u_F, xi>|.
double projection_volume(const ConvexPolytope& k, const Direction& xi);
/// Cauchy formula for polytopes, closed form for ellipsoids; throws
/// std::invalid_argument for other bodies.
double projection_volume(const StarBody& k, const Direction& xi);

/// |K | xi^perp| by hit-or-miss sampling in a cube around the shadow: a
/// point y of xi^perp is a hit when the line y + t xi meets K. Independent
/// of the facet areas used by the Cauchy formula.
Estimate shadow_area_mc(const ConvexPolytope& k, const Direction& xi, std::size_t samples, Rng& rng);
/// |K | H| from the hull of the projected vertices; dim(H) <= 6.
double projection_volume_subspace(const ConvexPolytope& k, const Subspace& h);
double projection_volume_subspace(const StarBody& k, const Subspace& h);

/// V_1(K, L) = (1/n) sum h_L(u_F) m_F.
double mixed_volume_v1(const ConvexPolytope& k, const StarBody& l);
/// V_p(K, L) = (1/n) sum h_L(u_F)^p h_K(u_F)^{1-p} m_F, p >= 1.
double p_mixed_volume(const ConvexPolytope& k, const StarBody& l, double p);

/// h_{Pi_p K}(xi) with h^p = (1/(2n)) int |<u, xi>|^p dS_p(K, u).
/// At p = 1 this is |K | xi^perp| / n.
double p_projection_support(const ConvexPolytope& k, const Direction& xi, double p);
/// Atom sum for polytopes; for ellipsoids E = T B_2^n the closed form
/// h_{Pi_p E}(xi) = |det T|^{1/p} h_{Pi_p B}(T^{-1} xi).
double p_projection_support(const StarBody& k, const Direction& xi, double p);

}  // namespace tomo
