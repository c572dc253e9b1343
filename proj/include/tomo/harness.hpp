#pragma once

#include "tomo/bodies.hpp"
#include "tomo/loewner.hpp"
#include "tomo/radon.hpp"
#include "tomo/report.hpp"
#include "tomo/rng.hpp"

#include <cstddef>
#include <vector>

namespace tomo {

struct CheckOptions {
  /// Body integrals and volumes.
  McConfig mc;
  /// Samples per section integral.
  std::size_t section_samples = 10'000;
  /// Haar subspaces added to the deterministic net.
  int net_random = 8;
  /// Local perturbation steps around the current net maximizer.
  int refine_steps = 0;
  /// Random directions added to direction nets.
  int direction_random = 200;
  double c_budget = 10.0;
  double milman_budget = 5.0;
  double hensley_low = 0.1;
  double hensley_high = 2.0;
  LoewnerOptions loewner;

  McConfig section_mc() const { return McConfig{section_samples, mc.workers, mc.radial_nodes}; }
};

/// Deterministic part of a subspace net: every coordinate m-subspace of R^n
/// plus the orthogonal complement of the first n-m "diagonal" sign vectors.
std::vector<Subspace> deterministic_subspaces(int n, int m);
/// Deterministic subspaces followed by `random` Haar samples.
std::vector<Subspace> subspace_net(int n, int m, int random, Rng& rng);
/// +-e_i, all sign diagonals (up to sign) and `random` uniform directions.
std::vector<Direction> direction_net(int n, int random, Rng& rng);

// Quotient inequalities -----------------------------------------------------

InequalityReport check_quotient_main(const StarBody& k_body, const StarBody& l_body, const Density& f,
                                     const Density& g, int k, const CheckOptions& opts, const Rng& rng);
InequalityReport check_quotient_holder(const StarBody& k_body, const StarBody& l_body, int k,
                                       const CheckOptions& opts, const Rng& rng);
/// lhs is the constant C_required that makes the inequality with ovr(K)
/// tight on this instance; rhs is the budget.
InequalityReport check_arb_ovr(const StarBody& k_body, const StarBody& l_body, const Density& f, const Density& g,
                               int k, const CheckOptions& opts, const Rng& rng);

// Sections ----------------------------------------------------------------

/// E_H |K cap H|^n <= E_H |B cap H|^n for volume-one K and ball B.
InequalityReport check_grinberg(const StarBody& body, int k, int trials, const CheckOptions& opts, const Rng& rng);
/// E_H[ |g|_H|_inf^{-k} (int_{L cap H} g)^n ] <= gamma_{n,k}^{-n} (int_L g)^{n-k}.
InequalityReport check_dpp(const StarBody& support, const Density& g, int k, int trials, const CheckOptions& opts,
                           const Rng& rng);
/// max over trials of (|conv(w_1..w_s)| / |E|)^{1/m} sqrt(m) / sqrt(log(1 + s/m))
/// for s points on the boundary of a random ellipsoid E in R^m.
InequalityReport check_barany_furedi(int m, int s, int trials, const CheckOptions& opts, const Rng& rng);
/// Reports the constant implied by |conv(0, x_1..x_{n-k})| <= (C sqrt(log(1+(m+1)/m)) / sqrt(m))^k |E cap H|
/// for points of K cap H, E the Loewner ellipsoid of K.
InequalityReport check_hull_step(const StarBody& body, int k, int trials, const CheckOptions& opts, const Rng& rng);

// Projections ---------------------------------------------------------------

InequalityReport check_main_proj(const StarBody& k_body, const StarBody& l_body, double p, const CheckOptions& opts,
                                 const Rng& rng);
/// |K| <= d_vr(L, Pi_n) |L| after scaling L so that its projections dominate
/// those of K on the direction net.
InequalityReport check_projection_dominance(const StarBody& k_body, const StarBody& l_body, const CheckOptions& opts,
                                            const Rng& rng);
/// (|K| / |D|)^{(n-k)/n} <= max_H |K|H| / |D cap H|.
InequalityReport check_proj_section_mixed(const StarBody& k_body, const StarBody& d_body, int k,
                                          const CheckOptions& opts, const Rng& rng);

// Mixed volumes -------------------------------------------------------------

/// V_1(K, L) >= |K|^{(n-1)/n} |L|^{1/n}.
InequalityReport check_minkowski(const StarBody& k_body, const StarBody& l_body);
/// V_p(K, L) >= |K|^{(n-p)/n} |L|^{p/n}.
InequalityReport check_lutwak(const StarBody& k_body, const StarBody& l_body, double p);
/// Tightest of `pairs` random symmetric polytope pairs (hulls of 10..30
/// symmetrized sphere points in R^n); kind is "minkowski" or "lutwak".
InequalityReport check_random_pairs(const std::string& kind, int n, int pairs, double p, const Rng& rng);
/// V_1(K,K) = |K|, V_p(K,K) = |K| and n h_{Pi_1 K} = h_{Pi K} on a direction net,
/// plus the Cauchy formula against the hull of the projected vertices.
std::vector<InequalityReport> check_brunn_identities(const StarBody& body, const CheckOptions& opts, const Rng& rng);

// Applications --------------------------------------------------------------

InequalityReport check_comparison(const StarBody& k_body, const StarBody& l_body, const Density& f, const Density& g,
                                  int k, const CheckOptions& opts, const Rng& rng);
InequalityReport check_slicing(const StarBody& body, const Density& f, int k, const CheckOptions& opts,
                               const Rng& rng);
InequalityReport check_mean_value(const StarBody& body, const Density& f, int k, const CheckOptions& opts,
                                  const Rng& rng);
/// Reports (|K|/|L|)^{(n-k)/n} / max_H |K cap H| / |L cap H|.
InequalityReport check_proportional(const StarBody& k_body, const StarBody& l_body, int k, const CheckOptions& opts,
                                    const Rng& rng);
InequalityReport check_min_projection(const StarBody& body, const CheckOptions& opts, const Rng& rng);
/// John-path bound on d_vr(L, Pi_n) against sqrt(n)(1 + 1e-6).
InequalityReport check_john_ceiling(const StarBody& body, const CheckOptions& opts);
/// Isotropic constant: the value itself, directional spread, Hensley
/// envelope (upper and lower), and L_K <= budget * d_ovr(K, I_n).
std::vector<InequalityReport> check_isotropy(const StarBody& body, std::size_t samples, const CheckOptions& opts,
                                             const Rng& rng);

// Estimator sanity ----------------------------------------------------------

std::vector<InequalityReport> check_constants(int gamma_max_n = 64, int c_max_n = 200);
InequalityReport check_volume(const StarBody& body, const CheckOptions& opts, const Rng& rng);
InequalityReport check_section(const StarBody& body, const Subspace& h, const CheckOptions& opts, const Rng& rng);

/// Isotropic constant estimate from the polar second-moment formula
/// int_K x x^T = n omega_n / (n+2) E[rho^{n+2} theta theta^T].
struct IsotropyEstimate {
  double l_k = 0.0;
  double l_k_se = 0.0;
  Mat second_moments;  // int_K x x^T
  double volume = 0.0;
};
IsotropyEstimate estimate_isotropy(const StarBody& body, std::size_t samples, const Rng& rng);

}  // namespace tomo
