#pragma once

#include "tomo/bodies.hpp"
#include "tomo/estimate.hpp"
#include "tomo/report.hpp"
#include "tomo/rng.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

namespace tomo {

struct McConfig {
  std::size_t samples = 100'000;
  /// Worker partition. Samples are split into `workers` contiguous chunks,
  /// chunk w drawing from rng.split(w); results depend on this number.
  int workers = 1;
  int radial_nodes = 32;
};

/// Gauss-Legendre rule on [0, 1].
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
QuadratureRule gauss_legendre(int order);

Direction sample_sphere(int n, Rng& rng);
Subspace sample_grassmann(int n, int m, Rng& rng);

/// Runs `chunk(count, acc, stream)` over the worker partition of cfg and
/// merges the per-worker accumulators in worker order.
Accumulator fan_out(const McConfig& cfg, const Rng& rng,
                    const std::function<void(std::size_t, Accumulator&, Rng&)>& chunk);

/// |K| = (1/n) int_{S^{n-1}} rho^n, with antithetic pairs.
Estimate polar_volume(const StarBody& body, const McConfig& cfg, const Rng& rng);

/// int_K f via polar coordinates; the radial integral uses Gauss-Legendre
/// unless f is constant along rays.
Estimate integrate_body(const StarBody& body, const Density& f, const McConfig& cfg, const Rng& rng);

/// int_{K cap H} f, averaging over S^{n-1} cap H.
Estimate integrate_section(const StarBody& body, const Density& f, const Subspace& h, const McConfig& cfg,
                           const Rng& rng);

/// int_{S^{n-1} cap H} g.
Estimate spherical_radon(const std::function<double(const Vec&)>& g, const Subspace& h, const McConfig& cfg,
                         const Rng& rng);

/// Exact |K cap H| for ellipsoids and polytopes (nullopt otherwise, or when
/// exact polytope slicing would be too expensive).
std::optional<double> exact_section_volume(const StarBody& body, const Subspace& h);

/// Exact when available, Monte Carlo otherwise.
Estimate section_volume(const StarBody& body, const Subspace& h, const McConfig& cfg, const Rng& rng);

/// Closed-form volume when registered, polar Monte Carlo otherwise.
Estimate body_volume(const StarBody& body, const McConfig& cfg, const Rng& rng);

/// |conv(0, x_1, ..., x_s)| = sqrt(det(G^T G)) / s!.
double simplex_volume(const std::vector<Vec>& vectors);

/// Both sides of the Blaschke-Petkantschin formula for F = product of
/// indicators of K: lhs |K|^s, rhs p(n,s) E_H[int_{(K cap H)^s} |conv(0,x)|^{n-s}].
/// Section points are drawn by polar sampling in H with importance weights.
InequalityReport blaschke_check(const StarBody& body, int s, const McConfig& cfg, const Rng& rng);

}  // namespace tomo
