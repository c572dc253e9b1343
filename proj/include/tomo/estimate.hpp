#pragma once

#include <cstddef>

namespace tomo {

/// Monte Carlo value with its standard error. Exact quantities carry
/// std_error == 0.
struct Estimate {
  double value = 0.0;
  double std_error = 0.0;
  std::size_t samples = 0;

  static Estimate exact(double v) { return Estimate{v, 0.0, 0}; }
  double relative_error() const;
};

/// Inverse-variance pooling of two independent estimates of the same
/// quantity. Exact inputs dominate.
Estimate pool(const Estimate& a, const Estimate& b);

// Delta-method propagation for independent inputs.
Estimate scaled(const Estimate& a, double c);
Estimate power(const Estimate& a, double exponent);
Estimate product(const Estimate& a, const Estimate& b);
Estimate quotient(const Estimate& a, const Estimate& b);

/// Streaming mean/variance (Welford), mergeable across workers (Chan et al.).
class Accumulator {
 public:
  void add(double x);
  void merge(const Accumulator& other);

  std::size_t count() const { return count_; }
  double mean() const { return mean_; }
  double variance() const;  // sample variance, n-1 denominator

  /// Estimate of `scale * E[X]`.
  Estimate estimate(double scale = 1.0) const;

 private:
  std::size_t count_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

}  // namespace tomo
