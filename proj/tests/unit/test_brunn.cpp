#include "tomo/brunn.hpp"
#include "tomo/catalog.hpp"
#include "tomo/constants.hpp"

#include <doctest.h>

#include <cmath>

using namespace tomo;

namespace {

const ConvexPolytope& poly(const StarBody& b) { return *b.polytope(); }

// Fibonacci lattice on S^2
ConvexPolytope fine_sphere_polytope(int m) {
  std::vector<Vec> points;
  const double golden = M_PI * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < m; ++i) {
    const double z = 1.0 - (2.0 * i + 1.0) / m;
    const double r = std::sqrt(1.0 - z * z);
    Vec v(3);
    v << r * std::cos(golden * i), r * std::sin(golden * i), z;
    points.push_back(v);
  }
  return ConvexPolytope::from_vertices(points);
}

}  // namespace

TEST_CASE("surface measure of the cube") {
  const auto s = surface_measure(ConvexPolytope::cube(3, 1.0));
  CHECK(s.atoms.size() == 6);
  CHECK(s.total() == doctest::Approx(24.0));
  CHECK(s.centroid_defect() < 1e-12);
  const auto sp = p_surface_measure(ConvexPolytope::cube(3, 2.0), 2.0);
  // h = 2 on every facet, area 16: mass 16 * 2^{-1}
  for (const auto& a : sp.atoms) CHECK(a.mass == doctest::Approx(8.0));
}

TEST_CASE("Cauchy formula against the hull and the shadow") {
  const auto cube = ConvexPolytope::cube(3, 1.0);
  CHECK(projection_volume(cube, Direction::axis(3, 0)) == doctest::Approx(4.0));
  const Direction d(Vec::Ones(3));
  CHECK(projection_volume(cube, d) == doctest::Approx(12.0 / std::sqrt(3.0)));
  Rng rng(5);
  for (const auto& body : {make_catalog_body("cube(3)"), make_catalog_body("lp_ball(4, 1)"),
                           make_catalog_body("simplex(3)"), random_polytope(4, 9, 2)}) {
    for (int t = 0; t < 4; ++t) {
      const Direction xi(rng.sphere(body.dim()));
      const double cauchy = projection_volume(poly(body), xi);
      CHECK(cauchy == doctest::Approx(projection_volume_subspace(poly(body), Subspace::hyperplane(xi))).epsilon(1e-9));
      Rng shadow = rng.split(t);
      const Estimate mc = shadow_area_mc(poly(body), xi, 100'000, shadow);
      CHECK(std::abs(mc.value - cauchy) <= 4.0 * mc.std_error);
    }
  }
}

TEST_CASE("ellipsoid projections") {
  const StarBody e = make_catalog_body("ellipsoid(1, 4, 9)");
  CHECK(projection_volume(e, Direction::axis(3, 0)) == doctest::Approx(M_PI / 6.0));
  CHECK(projection_volume_subspace(StarBody::ball(4), Subspace::coordinate(4, {0, 1})) == doctest::Approx(M_PI));
}

TEST_CASE("mixed volumes: self, ball and scaling") {
  for (const auto& body : {make_catalog_body("cube(3)"), make_catalog_body("lp_ball(4, 1)"),
                           make_catalog_body("simplex(3)"), random_polytope(3, 10, 3)}) {
    const auto& k = poly(body);
    CHECK(mixed_volume_v1(k, body) == doctest::Approx(k.volume()).epsilon(1e-10));
    for (double p : {1.0, 1.5, 2.0, 3.0}) CHECK(p_mixed_volume(k, body, p) == doctest::Approx(k.volume()).epsilon(1e-10));
    // V_1(K, B) = S(K) / n
    CHECK(mixed_volume_v1(k, StarBody::ball(k.dim())) == doctest::Approx(k.surface_area() / k.dim()));
    // V_1(K, lambda L) = lambda V_1(K, L), V_p(K, lambda L) = lambda^p V_p(K, L)
    const StarBody l = StarBody::ball(k.dim(), 1.7);
    CHECK(mixed_volume_v1(k, l) == doctest::Approx(1.7 * mixed_volume_v1(k, StarBody::ball(k.dim()))));
    CHECK(p_mixed_volume(k, l, 2.0) == doctest::Approx(1.7 * 1.7 * p_mixed_volume(k, StarBody::ball(k.dim()), 2.0)));
  }
}

TEST_CASE("Minkowski and Lutwak inequalities on random pairs") {
  Rng rng(77);
  for (int t = 0; t < 60; ++t) {
    const int n = 2 + t % 3;
    const StarBody k = random_polytope(n, 5 + t % 7, rng.bits() >> 20);
    const StarBody l = random_polytope(n, 4 + t % 5, rng.bits() >> 20);
    const double vk = poly(k).volume(), vl = poly(l).volume();
    CHECK(mixed_volume_v1(poly(k), l) >= std::pow(vk, (n - 1.0) / n) * std::pow(vl, 1.0 / n) * (1 - 1e-9));
    for (double p : {1.5, 2.0, 3.0}) {
      CHECK(p_mixed_volume(poly(k), l, p) >= std::pow(vk, (n - p) / n) * std::pow(vl, p / n) * (1 - 1e-9));
    }
  }
}

TEST_CASE("p-projection bodies") {
  Rng rng(3);
  const StarBody body = make_catalog_body("lp_ball(3, 1)");
  const auto& k = poly(body);
  for (int t = 0; t < 10; ++t) {
    const Direction xi(rng.sphere(3));
    // Pi_1 K = Pi K / n
    CHECK(3.0 * p_projection_support(k, xi, 1.0) == doctest::Approx(projection_volume(k, xi)).epsilon(1e-12));
  }
}

TEST_CASE("p-projection support transforms covariantly") {
  // h_{Pi_p TK}(xi) = |det T|^{1/p} h_{Pi_p K}(T^{-1} xi)
  Mat t(3, 3);
  t << 1.5, 0.2, 0, -0.3, 1, 0.4, 0, 0.1, 0.8;
  const auto k = ConvexPolytope::cube(3, 1.0);
  const auto tk = k.transformed(t);
  const double det = std::abs(t.determinant());
  Rng rng(6);
  for (double p : {1.0, 2.0, 3.5}) {
    for (int i = 0; i < 5; ++i) {
      const Vec xi = rng.sphere(3);
      const Vec pre = t.inverse() * xi;
      const double lhs = p_projection_support(tk, Direction(xi), p);
      const double rhs = std::pow(det, 1.0 / p) * pre.norm() * p_projection_support(k, Direction(pre), p);
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
    }
  }
}

TEST_CASE("ball p-projection support against a fine inscribed polytope") {
  const StarBody ball = StarBody::ball(3);
  const ConvexPolytope approx = fine_sphere_polytope(800);
  Rng rng(10);
  for (double p : {1.0, 2.0, 3.0}) {
    const Direction xi(rng.sphere(3));
    const double exact = p_projection_support(ball, xi, p);
    CHECK(p_projection_support(approx, xi, p) == doctest::Approx(exact).epsilon(0.01));
  }
  // |B^3 | xi^perp| = pi, so h_{Pi_1 B} = pi / 3
  CHECK(p_projection_support(ball, Direction::axis(3, 2), 1.0) == doctest::Approx(M_PI / 3.0));
}
