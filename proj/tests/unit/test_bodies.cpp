#include "tomo/bodies.hpp"
#include "tomo/catalog.hpp"
#include "tomo/constants.hpp"
#include "tomo/rng.hpp"

#include <doctest.h>

#include <cmath>

using namespace tomo;

namespace {

double lp_volume(int n, double p) {
  return std::pow(2.0 * std::tgamma(1.0 + 1.0 / p), n) / std::tgamma(1.0 + n / p);
}

}  // namespace

TEST_CASE("closed-form volumes") {
  for (int n = 2; n <= 8; ++n) {
    CHECK(*StarBody::ball(n).closed_form_volume() == doctest::Approx(constants::omega(n)));
    CHECK(*StarBody::ball(n, 2.0).closed_form_volume() == doctest::Approx(constants::omega(n) * std::pow(2.0, n)));
    CHECK(*StarBody::cube(n, 0.5).closed_form_volume() == doctest::Approx(1.0));
    CHECK(*StarBody::lp_ball(n, 1.0).closed_form_volume() == doctest::Approx(std::pow(2.0, n) / std::tgamma(n + 1.0)));
    CHECK(*StarBody::lp_ball(n, 1.5).closed_form_volume() == doctest::Approx(lp_volume(n, 1.5)));
    CHECK(*StarBody::lp_ball(n, 3.0).closed_form_volume() == doctest::Approx(lp_volume(n, 3.0)));
  }
}

TEST_CASE("radial function and Minkowski functional are reciprocal") {
  Rng rng(1);
  for (const auto& body : {StarBody::ball(3, 2.0), StarBody::cube(4), StarBody::lp_ball(3, 1.5),
                           StarBody::lp_ball(5, 1.0), make_catalog_body("ellipsoid(1, 4, 9)")}) {
    for (int t = 0; t < 50; ++t) {
      const Vec theta = rng.sphere(body.dim());
      const double rho = body.radial(theta);
      CHECK(body.norm(rho * theta) == doctest::Approx(1.0));
      CHECK(body.norm(3.0 * theta) == doctest::Approx(3.0 / rho));
    }
    CHECK(body.norm(Vec::Zero(body.dim())) == 0.0);
  }
  // cube(3) along the diagonal reaches the corner
  const Vec d = Vec::Ones(3) / std::sqrt(3.0);
  CHECK(StarBody::cube(3).radial(d) == doctest::Approx(std::sqrt(3.0)));
}

TEST_CASE("support function of convex bodies") {
  const Vec e1 = Vec::Unit(3, 0);
  const Vec d = Vec::Ones(3) / std::sqrt(3.0);
  CHECK(StarBody::cube(3).support(d) == doctest::Approx(std::sqrt(3.0)));
  CHECK(StarBody::lp_ball(3, 1.0).support(d) == doctest::Approx(1.0 / std::sqrt(3.0)));
  CHECK(StarBody::ball(3, 2.0).support(e1) == doctest::Approx(2.0));
  // l_p support is the dual norm
  const StarBody l3 = StarBody::lp_ball(3, 3.0);
  const double q = 1.5;
  const double dual = std::pow(3.0 * std::pow(1.0 / std::sqrt(3.0), q), 1.0 / q);
  CHECK(l3.support(d) == doctest::Approx(dual));
}

TEST_CASE("non-convex bodies refuse support queries") {
  const StarBody star = StarBody::from_radial(
      2, [](const Vec& t) { return 1.0 + 0.5 * std::cos(5.0 * std::atan2(t[1], t[0])); }, "star");
  CHECK_FALSE(star.is_convex());
  CHECK_THROWS_AS(star.support(Vec::Unit(2, 0)), std::logic_error);
  CHECK(star.radial(Vec::Unit(2, 0)) == doctest::Approx(1.5));
}

TEST_CASE("polar bodies") {
  const StarBody cube = StarBody::cube(3);
  const StarBody polar = cube.polar();
  CHECK(*polar.closed_form_volume() == doctest::Approx(8.0 / 6.0));
  const StarBody b = StarBody::ball(3, 2.0).polar();
  CHECK(b.radial(Vec::Unit(3, 1)) == doctest::Approx(0.5));
}

TEST_CASE("linear images scale volume by |det|") {
  Mat t(3, 3);
  t << 2, 1, 0, 0, 1, 0, 0, 0.5, 3;
  const double det = std::abs(t.determinant());
  CHECK(*StarBody::cube(3).linear_image(t).closed_form_volume() == doctest::Approx(8.0 * det));
  CHECK(*StarBody::ball(3).linear_image(t).closed_form_volume() == doctest::Approx(constants::omega(3) * det));
  CHECK(*with_volume(StarBody::lp_ball(4, 1.0)).closed_form_volume() == doctest::Approx(1.0));
  CHECK(*scaled(StarBody::cube(2), 3.0).closed_form_volume() == doctest::Approx(36.0));
}

TEST_CASE("catalog descriptors") {
  CHECK(make_catalog_body("ball(3)").dim() == 3);
  CHECK(make_catalog_body("lp_ball(3, inf)").closed_form_volume().value() == doctest::Approx(8.0));
  CHECK(make_catalog_body("normalized(cube(4))").closed_form_volume().value() == doctest::Approx(1.0));
  CHECK(make_catalog_body("scaled(ball(2), 2)").closed_form_volume().value() == doctest::Approx(4.0 * M_PI));
  CHECK(make_catalog_body("ellipsoid([[2, 1], [1, 2]])").dim() == 2);
  CHECK(make_catalog_body("simplex(3)").polytope() != nullptr);
  CHECK(make_catalog_body("random_polytope(3, 12, 7)").is_symmetric());
  CHECK_THROWS_AS(make_catalog_body("ball("), std::invalid_argument);
  CHECK_THROWS_AS(make_catalog_body("cube(0)"), std::invalid_argument);
  CHECK_THROWS_AS(make_catalog_body("lp_ball(3, 0)"), std::invalid_argument);
  CHECK_THROWS_AS(make_catalog_body("simplex(9)"), std::invalid_argument);
  CHECK_THROWS_AS(make_catalog_body("teapot(3)"), std::invalid_argument);
}

TEST_CASE("distance registry: exact for intersection bodies, Loewner otherwise") {
  for (const char* d : {"ball(4)", "ellipsoid(1, 2, 3)", "lp_ball(4, 1)", "lp_ball(4, 1.5)", "lp_ball(4, 2)"}) {
    const StarBody b = make_catalog_body(d);
    for (int k = 1; k < b.dim(); ++k) {
      REQUIRE(b.registered_dovr(k));
      CHECK(b.registered_dovr(k)->exact());
    }
  }
  const StarBody cube = make_catalog_body("cube(3)");
  const auto bound = cube.registered_dovr(1);
  REQUIRE(bound);
  CHECK_FALSE(bound->exact());
  CHECK(bound->kind == BoundKind::loewner_ellipsoid);
  // Loewner ellipsoid of the cube is the circumscribed ball
  CHECK(bound->value == doctest::Approx(std::cbrt(constants::omega(3) * std::pow(3.0, 1.5) / 8.0)).epsilon(1e-5));
  CHECK(bound->value == doctest::Approx(1.3962).epsilon(1e-4));
  // non-symmetric bodies get no registry entry
  CHECK_FALSE(make_catalog_body("simplex(3)").registered_dovr(1));
}

TEST_CASE("densities") {
  const Density g = Density::gaussian();
  CHECK(g(Vec::Zero(3)) == 1.0);
  CHECK(g(Vec::Ones(2)) == doctest::Approx(std::exp(-2.0)));
  CHECK(g.radial_profile(std::sqrt(2.0)) == doctest::Approx(std::exp(-2.0)));
  const Density h = Density::halfspace_indicator(Vec::Unit(2, 0));
  CHECK(h(Vec::Unit(2, 0)) == 1.0);
  CHECK(h(-Vec::Unit(2, 0)) == 0.0);
  CHECK(Density::constant(2.0).is_constant());
}
