#include "tomo/hull.hpp"
#include "tomo/polytope.hpp"
#include "tomo/rng.hpp"

#include <doctest.h>

#include <cmath>

using namespace tomo;

namespace {

Vec v(std::initializer_list<double> xs) {
  Vec out(static_cast<int>(xs.size()));
  int i = 0;
  for (double x : xs) out[i++] = x;
  return out;
}

std::vector<Vec> cube_vertices(int n, double a) {
  std::vector<Vec> pts;
  for (int mask = 0; mask < (1 << n); ++mask) {
    Vec x(n);
    for (int i = 0; i < n; ++i) x[i] = (mask >> i & 1) ? a : -a;
    pts.push_back(x);
  }
  return pts;
}

double factorial(int n) { return std::tgamma(n + 1.0); }

}  // namespace

TEST_CASE("hull volume of cubes and simplices") {
  for (int n = 2; n <= 6; ++n) CHECK(hull::hull_volume(cube_vertices(n, 1.0)) == doctest::Approx(std::pow(2.0, n)));
  for (int n = 2; n <= 7; ++n) {
    std::vector<Vec> pts{Vec::Zero(n)};
    for (int i = 0; i < n; ++i) pts.push_back(Vec::Unit(n, i));
    CHECK(hull::hull_volume(pts) == doctest::Approx(1.0 / factorial(n)));
  }
}

TEST_CASE("interior and duplicate points are ignored") {
  auto pts = cube_vertices(3, 1.0);
  Rng rng(3);
  for (int i = 0; i < 200; ++i) pts.push_back(Vec::Random(3) * 0.99);
  pts.push_back(pts[0]);
  pts.push_back(v({1.0, 1.0, 0.0}));  // on an edge
  hull::Hull h(pts);
  CHECK(h.volume() == doctest::Approx(8.0));
  CHECK(h.vertex_indices().size() == 8);
  double area = 0.0;
  for (const auto& f : h.facets()) area += h.facet_area(f);
  CHECK(area == doctest::Approx(24.0));
}

TEST_CASE("facets are outward and support the point set") {
  Rng rng(11);
  for (int n = 2; n <= 6; ++n) {
    std::vector<Vec> pts;
    for (int i = 0; i < 40; ++i) pts.push_back(rng.gaussian(n));
    hull::Hull h(pts);
    for (const auto& f : h.facets()) {
      CHECK(f.normal.norm() == doctest::Approx(1.0));
      CHECK(f.normal.dot(h.interior_point()) < f.offset);
      double worst = -1e300;
      for (const auto& p : pts) worst = std::max(worst, f.normal.dot(p) - f.offset);
      CHECK(worst <= 1e-9);
    }
  }
}

TEST_CASE("hull volume against hit-or-miss sampling") {
  // independent route: fraction of a bounding box inside the facet inequalities
  Rng rng(5);
  for (int n = 3; n <= 5; ++n) {
    std::vector<Vec> pts;
    for (int i = 0; i < 25; ++i) pts.push_back(rng.sphere(n));
    const double vol = hull::hull_volume(pts);
    const ConvexPolytope p = ConvexPolytope::from_vertices(pts);
    const int trials = 200'000;
    int hits = 0;
    Rng box(17);
    for (int t = 0; t < trials; ++t) {
      Vec x(n);
      for (int i = 0; i < n; ++i) x[i] = 2.0 * box.uniform() - 1.0;
      bool inside = true;
      for (const auto& f : p.facets())
        if (f.normal.dot(x) > f.offset) {
          inside = false;
          break;
        }
      hits += inside;
    }
    const double frac = static_cast<double>(hits) / trials;
    const double est = frac * std::pow(2.0, n);
    const double se = std::sqrt(frac * (1 - frac) / trials) * std::pow(2.0, n);
    CHECK(std::abs(est - vol) <= 4.0 * se);
    CHECK(p.volume() == doctest::Approx(vol).epsilon(1e-10));
  }
}

TEST_CASE("lower-dimensional input has zero volume") {
  std::vector<Vec> pts{v({0, 0, 0}), v({1, 0, 0}), v({0, 1, 0}), v({1, 1, 0})};
  CHECK(hull::hull_volume(pts) == 0.0);
  CHECK(hull::hull_volume({v({-2}), v({3}), v({1})}) == doctest::Approx(5.0));
}

TEST_CASE("simplex measure in ambient space") {
  // triangle (0,0,0), (1,0,0), (0,1,0) has area 1/2 wherever it sits
  CHECK(hull::simplex_measure({v({0, 0, 0}), v({1, 0, 0}), v({0, 1, 0})}) == doctest::Approx(0.5));
  CHECK(hull::simplex_measure({v({0, 0, 0, 0}), v({0, 0, 3, 0})}) == doctest::Approx(3.0));
}
