#pragma once

#include "tomo/bodies.hpp"

#include <cstdint>
#include <vector>

namespace tomo {

struct LoewnerOptions {
  /// Volume tolerance: |E| <= (1 + tol) |E_opt|.
  double tol = 1e-6;
  int certification_directions = 100'000;
  int random_cloud = 2'000;
  int max_refits = 12;
  std::uint64_t seed = 0x5eed10e;
};

/// Minimum-volume origin-centered ellipsoid containing the symmetric point
/// cloud {+-x_i}. Returns E with |E| <= (1 + tol)|E_opt| for the cloud.
Ellipsoid loewner_of_points(const std::vector<Vec>& points, double tol = 1e-6);

/// Loewner ellipsoid of an origin-symmetric convex body. Containment is
/// certified on a direction net; directions that fail are added to the cloud
/// and the fit is repeated. Throws std::invalid_argument for non-symmetric
/// or non-convex bodies and std::runtime_error if certification fails.
Ellipsoid loewner(const StarBody& body, const LoewnerOptions& opts = {});

/// Outer volume ratio (|E| / |K|)^{1/n} with E the Loewner ellipsoid.
DistanceBound ovr(const StarBody& body, const LoewnerOptions& opts = {});

/// Smallest available upper bound on d_ovr(K, BP_k^n): the body's registry,
/// exact one for intersection bodies, otherwise ovr(K).
DistanceBound dovr_bp_bound(const StarBody& body, int k, const LoewnerOptions& opts = {});

/// Upper bound on the volume-ratio distance d_vr(L, Pi_{p,n}): exact one for
/// registered p-projection bodies, otherwise (|L| / |E_in|)^{1/n} with E_in
/// the polar of the Loewner ellipsoid of the polar body.
DistanceBound dvr_projection_bound(const StarBody& body, double p, const LoewnerOptions& opts = {});

/// The John-ellipsoid path of dvr_projection_bound, regardless of registry.
DistanceBound john_volume_ratio(const StarBody& body, const LoewnerOptions& opts = {});

/// sqrt(n/k) log^{3/2}(e n / k): the n,k-dependence of the general
/// d_ovr(K, BP_k^n) bound for symmetric convex K. Its absolute constant is
/// unknown, so it is reported but never used numerically.
double general_bp_factor(int n, int k);

}  // namespace tomo
