#include "tomo/config.hpp"

#include <sstream>
#include <string>
#include <vector>

namespace tomo {

namespace {

std::string dims(int n, const std::string& name, const std::string& extra = "") {
  return name + "(" + std::to_string(n) + extra + ")";
}

}  // namespace

std::string default_suite_yaml() {
  std::ostringstream y;
  y << "# Default suite: every checker on the canonical catalog, n in 2..5, k in {1, 2}, p in {1, 2}.\n"
       "# Regenerate with `tomo print-suite`.\n"
       "seed: 1729\n"
       "samples: 100000\n"
       "workers: 1\n"
       "format: csv\n"
       "out: default-suite.csv\n"
       "defaults:\n"
       "  section_samples: 20000\n"
       "  net_random: 8\n"
       "suite:\n";
  auto entry = [&](const std::string& text) { y << "  - \"" << text << "\"\n"; };

  entry("constants: gamma_max_n=64, c_max_n=200");
  for (int n = 2; n <= 8; ++n) {
    entry("volume: K=" + dims(n, "ball"));
    entry("volume: K=" + dims(n, "cube"));
    entry("volume: K=" + dims(n, "lp_ball", ", 1"));
  }
  entry("section: K=cube(3), H=perp(1, 1, 1)");
  for (int n = 3; n <= 6; ++n) entry("section: K=" + dims(n, "ball") + ", H=coord(0, 1)");
  entry("blaschke: K=ball(2), s=1");
  entry("blaschke: K=ball(3), s=1");
  entry("blaschke: K=cube(2), s=1");

  for (int n = 2; n <= 5; ++n) {
    for (int k = 1; k <= 2 && k < n; ++k) {
      const std::string nk = ", k=" + std::to_string(k);
      const std::string ball = dims(n, "ball"), cube = dims(n, "cube"), cross = dims(n, "lp_ball", ", 1");
      entry("quotient_holder: K=" + ball + ", L=" + ball + nk);
      entry("quotient_holder: K=" + cube + ", L=" + ball + nk);
      entry("quotient_holder: K=" + cross + ", L=" + ball + nk);
      entry("quotient_holder: K=" + dims(n, "lp_ball", ", 1.5") + ", L=" + cube + nk);
      entry("quotient_holder: K=" + dims(n, "lp_ball", ", 3") + ", L=" + ball + nk);
      entry("quotient_holder: K=normalized(" + ball + "), L=normalized(" + cube + ")" + nk);
      entry("quotient_main: K=" + ball + ", L=" + ball + ", f=one, g=one" + nk);
      entry("quotient_main: K=" + cross + ", L=" + ball + ", f=one, g=one" + nk);
      entry("quotient_main: K=" + cube + ", L=" + ball + ", f=gaussian, g=gaussian" + nk);
      entry("quotient_main: K=" + ball + ", L=" + cube + ", f=halfspace, g=one" + nk);
      entry("arb_ovr: K=" + ball + ", L=" + ball + ", f=one, g=one" + nk);
      entry("arb_ovr: K=" + cube + ", L=" + ball + ", f=one, g=one" + nk);
      entry("arb_ovr: K=" + ball + ", L=" + ball + ", f=halfspace, g=one" + nk);
      entry("comparison: K=" + cube + ", L=" + ball + ", f=one, g=one" + nk);
      entry("comparison: K=" + cross + ", L=" + cube + ", f=gaussian, g=one" + nk);
      entry("slicing: K=normalized(" + ball + "), f=gaussian" + nk);
      entry("slicing: K=" + cube + ", f=one" + nk);
      entry("slicing: K=" + cross + ", f=gaussian" + nk);
      entry("mean_value: K=" + cube + ", f=gaussian" + nk);
      entry("mean_value: K=" + ball + ", f=gaussian" + nk);
      entry("mean_value: K=" + cross + ", f=one" + nk);
      entry("dpp: K=" + ball + ", g=one" + nk + ", trials=500, section_samples=1000");
      entry("dpp: K=" + ball + ", g=gaussian" + nk + ", trials=500, section_samples=1000");
      entry("dpp: K=" + cube + ", g=gaussian" + nk + ", trials=500, section_samples=1000");
      if (n >= 3) entry("proportional: K=" + cube + ", L=" + ball + nk);
    }
  }

  for (int n = 3; n <= 5; ++n) {
    entry("grinberg: K=" + dims(n, "cube") + ", k=1, trials=500");
    entry("grinberg: K=" + dims(n, "lp_ball", ", 1") + ", k=1, trials=500");
    entry("grinberg: K=" + dims(n, "ball") + ", k=1, trials=500");
  }
  entry("grinberg: K=cube(4), k=2, trials=500");

  for (int m = 2; m <= 6; ++m)
    for (int s : {m + 1, 2 * m, 10 * m})
      entry("barany_furedi: m=" + std::to_string(m) + ", s=" + std::to_string(s) + ", trials=1000");
  entry("hull_step: K=cube(3), k=1, trials=200");
  entry("hull_step: K=lp_ball(4, 1), k=2, trials=200");

  for (int n = 2; n <= 5; ++n) {
    const std::string ball = dims(n, "ball"), cube = dims(n, "cube"), cross = dims(n, "lp_ball", ", 1");
    for (int p : {1, 2}) {
      const std::string pp = ", p=" + std::to_string(p);
      entry("main_proj: K=" + cube + ", L=" + cube + pp);
      entry("main_proj: K=" + cube + ", L=" + ball + pp);
      entry("main_proj: K=" + cross + ", L=" + ball + pp);
    }
    entry("main_proj: K=random_polytope(" + std::to_string(n) + ", 8, " + std::to_string(10 + n) + "), L=" + cube +
          ", p=1");
  }
  for (int n = 3; n <= 5; ++n) {
    entry("projection_dominance: K=" + dims(n, "cube") + ", L=" + dims(n, "ball"));
    entry("projection_dominance: K=" + dims(n, "lp_ball", ", 1") + ", L=" + dims(n, "cube"));
  }
  entry("proj_section_mixed: K=ball(3), D=ball(3), k=1");
  entry("proj_section_mixed: K=cube(3), D=cube(3), k=1");
  entry("proj_section_mixed: K=cube(4), D=ball(4), k=2");
  entry("proj_section_mixed: K=lp_ball(4, 1), D=cube(4), k=1");

  entry("minkowski: K=cube(3), L=ball(3)");
  entry("minkowski: K=lp_ball(3, 1), L=cube(3)");
  entry("random_pairs: kind=minkowski, n=3, pairs=200");
  for (const char* p : {"1.5", "2", "3"}) {
    entry(std::string("lutwak: K=cube(3), L=lp_ball(3, 1), p=") + p);
    entry(std::string("random_pairs: kind=lutwak, n=3, pairs=200, p=") + p);
  }
  entry("brunn_identities: K=cube(3)");
  entry("brunn_identities: K=lp_ball(3, 1)");
  entry("brunn_identities: K=simplex(3)");
  entry("brunn_identities: K=cube(4)");
  entry("brunn_identities: K=random_polytope(4, 8, 3)");

  for (int n = 3; n <= 5; ++n) {
    entry("min_projection: K=" + dims(n, "cube"));
    entry("min_projection: K=" + dims(n, "lp_ball", ", 1"));
    entry("john_ceiling: K=" + dims(n, "cube"));
    entry("john_ceiling: K=" + dims(n, "lp_ball", ", 1"));
    entry("john_ceiling: K=random_polytope(" + std::to_string(n) + ", 10, " + std::to_string(n) + ")");
  }
  for (const char* k : {"cube(3)", "cube(4)", "lp_ball(3, 1)", "ball(3)", "lp_ball(3, 3)", "random_polytope(3, 10, 1)"})
    entry(std::string("isotropy: K=") + k);
  return y.str();
}

}  // namespace tomo
