#include "tomo/constants.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tomo::constants {

double log_omega(int n) {
  if (n < 0) throw std::invalid_argument("log_omega: n must be nonnegative");
  const double half = 0.5 * n;
  return half * std::log(std::numbers::pi) - std::lgamma(half + 1.0);
}

double omega(int n) { return std::exp(log_omega(n)); }

double sphere_area(int n) { return n * omega(n); }

double gamma_nk(int n, int k) {
  if (k < 1 || k > n - 1) throw std::invalid_argument("gamma_nk: need 1 <= k <= n-1");
  const double m = n - k;
  return std::exp(m / n * log_omega(n) - log_omega(n - k));
}

double log_p_const(int n, int s) {
  if (s < 1 || s > n - 1) throw std::invalid_argument("p_const: need 1 <= s <= n-1");
  double r = (n - s) * std::lgamma(s + 1.0);
  for (int j = n - s + 1; j <= n; ++j) r += std::log(static_cast<double>(j)) + log_omega(j);
  for (int j = 2; j <= s; ++j) r -= std::log(static_cast<double>(j)) + log_omega(j);
  r -= log_omega(1);
  return r;
}

double p_const(int n, int s) { return std::exp(log_p_const(n, s)); }

double c_n1(int n) {
  if (n < 2) throw std::invalid_argument("c_n1: need n >= 2");
  return std::exp(log_omega(n - 1) - (n - 1.0) / n * log_omega(n));
}

double sqrt_envelope(int n, int k) {
  const double m = n - k;
  const double log_inner = -n * std::log(gamma_nk(n, k)) + log_p_const(n, n - k);
  return std::exp(log_inner / (k * m)) / std::sqrt(m);
}

double sphere_abs_moment(int n, double p) {
  // 2 pi^{(n-1)/2} Gamma((p+1)/2) / Gamma((n+p)/2)
  return 2.0 * std::exp(0.5 * (n - 1) * std::log(std::numbers::pi) + std::lgamma(0.5 * (p + 1.0)) -
                        std::lgamma(0.5 * (n + p)));
}

}  // namespace tomo::constants
