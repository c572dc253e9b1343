#pragma once

namespace tomo::constants {

// All of these work in log space internally so that n up to a few hundred
// does not overflow.

/// log of omega_n = |B_2^n| = pi^{n/2} / Gamma(n/2 + 1).
double log_omega(int n);
double omega(int n);

/// Surface area of S^{n-1}, n * omega_n.
double sphere_area(int n);

/// gamma_{n,k} = omega_n^{(n-k)/n} / omega_{n-k}.
double gamma_nk(int n, int k);

/// Blaschke-Petkantschin constant p(n,s):
///   (s!)^{n-s} * prod_{j=n-s+1}^{n} (j omega_j) / (prod_{j=2}^{s} (j omega_j) * omega_1)
double log_p_const(int n, int s);
double p_const(int n, int s);

/// c_{n,1} = |B_2^{n-1}| / |B_2^n|^{(n-1)/n}.
double c_n1(int n);

/// [gamma_{n,k}^{-n} p(n, n-k)]^{1/(k(n-k))} / sqrt(n-k).
double sqrt_envelope(int n, int k);

/// Integral over S^{n-1} of |x_1|^p.
double sphere_abs_moment(int n, double p);

}  // namespace tomo::constants
