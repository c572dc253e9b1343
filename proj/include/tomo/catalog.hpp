#pragma once

#include "tomo/bodies.hpp"
#include "tomo/loewner.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace tomo {

/// Builds a body from a descriptor such as
///   ball(3)  ball(3, 2)  cube(4)  cube(4, 0.5)  lp_ball(3, 1.5)  lp_ball(3, inf)
///   simplex(3)  ellipsoid(1, 4, 9)  ellipsoid([[2, 1], [1, 2]])
///   random_polytope(3, 12, 7)  normalized(cube(4))  scaled(ball(3), 2)
/// and fills its d_ovr(K, BP_k^n) registry for every 1 <= k <= n-1.
/// Throws std::invalid_argument on malformed or out-of-range descriptors.
StarBody make_catalog_body(std::string_view descriptor, const LoewnerOptions& opts = {});

/// Regular simplex with circumradius 1, centroid at the origin (2 <= n <= 6).
StarBody regular_simplex(int n);

/// Convex hull of m uniform points on S^{n-1} and their negatives.
StarBody random_polytope(int n, int m, std::uint64_t seed);

/// One line per descriptor form, for `list-bodies`.
std::vector<std::string> catalog_help();

}  // namespace tomo
