#include "tomo/catalog.hpp"
#include "tomo/constants.hpp"
#include "tomo/harness.hpp"

#include <doctest.h>

#include <cmath>

using namespace tomo;

namespace {

CheckOptions quick() {
  CheckOptions o;
  o.mc.samples = 20'000;
  o.section_samples = 5'000;
  o.net_random = 4;
  o.direction_random = 50;
  return o;
}

StarBody body(const char* d) { return make_catalog_body(d); }

const ConstantUsed* constant(const InequalityReport& r, const std::string& symbol) {
  for (const auto& c : r.constants)
    if (c.symbol == symbol) return &c;
  return nullptr;
}

bool passes(const InequalityReport& r) { return r.verdict == Verdict::holds || r.verdict == Verdict::holds_with_bound; }

}  // namespace

TEST_CASE("subspace nets always contain the coordinate subspaces") {
  Rng rng(1);
  for (int n = 2; n <= 6; ++n)
    for (int m = 1; m < n; ++m) {
      const auto det = deterministic_subspaces(n, m);
      const auto net = subspace_net(n, m, 5, rng);
      CHECK(net.size() == det.size() + 5);
      const double binom = std::round(std::tgamma(n + 1.0) / (std::tgamma(m + 1.0) * std::tgamma(n - m + 1.0)));
      int coordinate = 0;
      for (const auto& h : net) {
        CHECK(h.dim() == m);
        // coordinate subspace: basis rows are zero except on m axes
        int nonzero_rows = 0;
        for (int i = 0; i < n; ++i) nonzero_rows += h.basis().row(i).norm() > 1e-12;
        coordinate += nonzero_rows == m;
      }
      CHECK(coordinate >= binom);
    }
  const auto dirs = direction_net(3, 10, rng);
  for (int i = 0; i < 3; ++i) {
    bool found = false;
    for (const auto& d : dirs) found |= std::abs(std::abs(d.vec()[i]) - 1.0) < 1e-12;
    CHECK(found);
  }
}

TEST_CASE("quotient inequalities: equality sanity at K = L") {
  const CheckOptions o = quick();
  const Rng rng(2);
  for (const char* d : {"ball(3)", "cube(3)", "lp_ball(4, 1)", "lp_ball(3, 3)"}) {
    const StarBody k = body(d);
    for (int kk = 1; kk < k.dim(); ++kk) {
      const auto r = check_quotient_holder(k, k, kk, o, rng);
      CHECK(r.lhs.value == doctest::Approx(1.0));
      CHECK(r.rhs.value >= 1.0 - 3.0 * r.rhs.std_error);
      CHECK(passes(r));
    }
  }
  // K = L = B^3, f = g = 1, k = 1: LHS 1, RHS 3/2
  const auto m = check_quotient_main(body("ball(3)"), body("ball(3)"), Density::constant(1.0), Density::constant(1.0), 1,
                                     o, rng);
  CHECK(m.lhs.value == doctest::Approx(1.0));
  CHECK(m.rhs.value == doctest::Approx(1.5));
  CHECK(m.verdict == Verdict::holds);
}

TEST_CASE("quotient inequalities on catalog pairs") {
  const CheckOptions o = quick();
  const Rng rng(3);
  const auto cross = check_quotient_main(body("lp_ball(4, 1)"), body("ball(4)"), Density::constant(1.0),
                                         Density::constant(1.0), 1, o, rng);
  CHECK(cross.verdict == Verdict::holds);
  const auto gauss = check_quotient_main(body("cube(3)"), body("ball(3)"), Density::gaussian(), Density::gaussian(), 1,
                                         o, rng);
  CHECK(gauss.verdict == Verdict::holds_with_bound);
  REQUIRE(constant(gauss, "d_ovr(K,BP_k^n)") != nullptr);
  CHECK(constant(gauss, "d_ovr(K,BP_k^n)")->value == doctest::Approx(1.3962).epsilon(1e-4));
  const auto h5 = check_quotient_holder(body("normalized(ball(5))"), body("normalized(cube(5))"), 2, o, rng);
  CHECK(h5.verdict == Verdict::holds);
  const auto lp = check_quotient_holder(body("lp_ball(3, 1.5)"), body("ball(3)"), 1, o, rng);
  CHECK(lp.verdict == Verdict::holds);
}

TEST_CASE("quotient preconditions") {
  const CheckOptions o = quick();
  const Rng rng(4);
  CHECK_THROWS_AS(check_quotient_holder(body("ball(3)"), body("ball(3)"), 3, o, rng), std::invalid_argument);
  CHECK_THROWS_AS(check_quotient_holder(body("ball(3)"), body("ball(4)"), 1, o, rng), std::invalid_argument);
  CHECK_THROWS_AS(check_quotient_main(body("ball(3)"), body("ball(3)"), Density::constant(1.0), Density::constant(2.0),
                                      1, o, rng),
                  std::invalid_argument);
}

TEST_CASE("enlarging the net never lowers the right-hand side") {
  const Rng rng(5);
  CheckOptions small = quick(), large = quick();
  small.net_random = 2;
  large.net_random = 12;
  for (const char* d : {"cube(3)", "lp_ball(3, 1)"}) {
    const auto a = check_quotient_holder(body(d), body("ball(3)"), 1, small, rng);
    const auto b = check_quotient_holder(body(d), body("ball(3)"), 1, large, rng);
    CHECK(b.rhs.value >= a.rhs.value);
  }
}

TEST_CASE("scale covariance of verdicts") {
  const CheckOptions o = quick();
  const Rng rng(6);
  for (double lambda : {0.5, 3.0}) {
    const auto base = check_quotient_holder(body("cube(3)"), body("ball(3)"), 1, o, rng);
    const auto s = check_quotient_holder(scaled(body("cube(3)"), lambda), body("ball(3)"), 1, o, rng);
    CHECK(s.verdict == base.verdict);
  }
}

TEST_CASE("outer-volume-ratio version: required constant") {
  const CheckOptions o = quick();
  const Rng rng(7);
  for (int n = 2; n <= 4; ++n)
    for (int k = 1; k < n; ++k) {
      const StarBody b = StarBody::ball(n);
      const auto r = check_arb_ovr(b, b, Density::constant(1.0), Density::constant(1.0), k, o, rng);
      CHECK(r.lhs.value <= std::pow(static_cast<double>(n) / (n - k), 1.0 / k) + 1e-9);
    }
  const auto cube = check_arb_ovr(body("cube(4)"), body("ball(4)"), Density::constant(1.0), Density::constant(1.0), 2, o,
                                  rng);
  CHECK(cube.lhs.value <= 10.0);
  CHECK(passes(cube));
  const auto half = check_arb_ovr(body("ball(3)"), body("ball(3)"), Density::halfspace_indicator(Vec::Unit(3, 0)),
                                  Density::constant(1.0), 1, o, rng);
  CHECK(std::isfinite(half.lhs.value));
  CHECK(half.lhs.value == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("section inequalities") {
  const CheckOptions o = quick();
  const Rng rng(8);
  const auto ball = check_grinberg(StarBody::ball(4), 1, 200, o, rng);
  CHECK(std::abs(ball.margin_se) <= 3.0);
  const auto cube = check_grinberg(StarBody::cube(4), 1, 300, o, rng);
  CHECK(cube.verdict == Verdict::holds);
  // n = 2: E |K cap H|^2 = 4|K| / pi for any symmetric K
  const auto plane = check_grinberg(StarBody::cube(2), 1, 2000, o, rng);
  CHECK(plane.rhs.value == doctest::Approx(4.0 / M_PI).epsilon(1e-12));
  CHECK(std::abs(plane.lhs.value - 4.0 / M_PI) <= 3.0 * plane.lhs.std_error);
  // indicator of B^3, k = 1: both sides pi^3
  const auto dpp = check_dpp(StarBody::ball(3), Density::constant(1.0), 1, 100, o, rng);
  CHECK(dpp.lhs.value == doctest::Approx(std::pow(M_PI, 3)));
  CHECK(dpp.rhs.value == doctest::Approx(std::pow(M_PI, 3)));
  CHECK(passes(dpp));
  const auto dg = check_dpp(StarBody::cube(3), Density::gaussian(), 2, 100, o, rng);
  CHECK(dg.verdict == Verdict::holds);
}

TEST_CASE("hull statistic: bounded and independent of the worker count") {
  CheckOptions one = quick(), many = quick();
  many.mc.workers = 3;
  const Rng rng(9);
  const auto a = check_barany_furedi(3, 30, 200, one, rng);
  const auto b = check_barany_furedi(3, 30, 200, many, rng);
  CHECK(a.lhs.value == b.lhs.value);
  CHECK(a.lhs.value <= 10.0);
  CHECK(a.verdict == Verdict::holds);
  CHECK_THROWS_AS(check_barany_furedi(3, 3, 10, one, rng), std::invalid_argument);
  const auto step = check_hull_step(body("cube(3)"), 1, 50, one, rng);
  CHECK(step.verdict == Verdict::reported);
}

TEST_CASE("projection comparisons") {
  const CheckOptions o = quick();
  const Rng rng(10);
  const auto eq = check_main_proj(body("cube(3)"), body("cube(3)"), 1.0, o, rng);
  CHECK(eq.lhs.value == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(eq.rhs.value - eq.lhs.value) <= 1e-10);
  CHECK(eq.verdict == Verdict::holds);
  for (double p : {1.0, 2.0, 3.0}) CHECK(check_main_proj(body("cube(4)"), body("ball(4)"), p, o, rng).verdict == Verdict::holds);
  CHECK(check_main_proj(random_polytope(3, 7, 1), body("cube(3)"), 1.0, o, rng).verdict == Verdict::holds);
  CHECK(passes(check_projection_dominance(body("cube(3)"), body("ball(3)"), o, rng)));
  const auto mixed = check_proj_section_mixed(body("ball(3)"), body("ball(3)"), 1, o, rng);
  CHECK(mixed.lhs.value == doctest::Approx(1.0));
  CHECK(mixed.rhs.value == doctest::Approx(1.0));
  CHECK(passes(mixed));
  CHECK(passes(check_proj_section_mixed(body("cube(4)"), body("ball(4)"), 2, o, rng)));
}

TEST_CASE("Minkowski and Lutwak checks") {
  CHECK(check_minkowski(body("cube(3)"), body("ball(3)")).verdict == Verdict::holds);
  const auto eq = check_lutwak(body("cube(3)"), scaled(body("cube(3)"), 2.0), 2.0);
  CHECK(eq.lhs.value == doctest::Approx(eq.rhs.value).epsilon(1e-12));
  const auto pairs = check_random_pairs("minkowski", 3, 40, 1.0, Rng(11));
  CHECK(pairs.verdict != Verdict::violated);
  REQUIRE(constant(pairs, "max_equality_gap"));
  CHECK(constant(pairs, "max_equality_gap")->value <= 1e-10);
  for (const auto& r : check_brunn_identities(body("cube(3)"), quick(), Rng(12))) CHECK(passes(r));
}

TEST_CASE("applications") {
  const CheckOptions o = quick();
  const Rng rng(13);
  CHECK(passes(check_slicing(body("normalized(ball(4))"), Density::gaussian(), 1, o, rng)));
  CHECK(passes(check_mean_value(body("cube(3)"), Density::gaussian(), 1, o, rng)));
  CHECK(passes(check_comparison(body("cube(3)"), body("ball(3)"), Density::constant(1.0), Density::constant(1.0), 1, o,
                                rng)));
  CHECK(check_proportional(body("cube(4)"), body("ball(4)"), 2, o, rng).verdict == Verdict::reported);
  const auto mp = check_min_projection(body("cube(3)"), o, rng);
  CHECK(mp.lhs.value == doctest::Approx(4.0));
  CHECK(mp.rhs.value == doctest::Approx(std::sqrt(std::exp(1.0)) * 4.0));
  CHECK(mp.verdict == Verdict::holds);
  CHECK(check_john_ceiling(body("lp_ball(4, 1)"), o).verdict == Verdict::holds);
}

TEST_CASE("isotropic constant of the cube") {
  const CheckOptions o = quick();
  const auto rows = check_isotropy(body("cube(3)"), 100'000, o, Rng(14));
  REQUIRE(!rows.empty());
  CHECK(rows[0].lhs.value == doctest::Approx(1.0 / std::sqrt(12.0)).epsilon(0.01));
  for (const auto& r : rows) CHECK(r.verdict != Verdict::violated);
  // volume-one ball: L = r / sqrt(n + 2) with r = omega_n^{-1/n}; ellipsoids are linear images
  const double ball_l = std::pow(constants::omega(3), -1.0 / 3.0) / std::sqrt(5.0);
  const auto ell = check_isotropy(body("ellipsoid(1, 4, 9)"), 50'000, o, Rng(15));
  CHECK(ell[0].lhs.value == doctest::Approx(ball_l).epsilon(0.01));
}

TEST_CASE("constants and estimator rows") {
  for (const auto& r : check_constants()) CHECK(r.verdict != Verdict::violated);
  CHECK(check_volume(body("cube(4)"), quick(), Rng(16)).verdict == Verdict::holds);
  CHECK(check_section(body("cube(3)"), Subspace::hyperplane(Direction(Vec::Ones(3))), quick(), Rng(17)).verdict ==
        Verdict::holds);
}
