#pragma once

#include "tomo/linalg.hpp"

#include <cstdint>
#include <random>
#include <string_view>

namespace tomo {

/// Splittable random stream identified by (seed, stream id).
///
/// Two Rng objects with the same seed and stream produce identical sequences.
/// `split` derives child streams deterministically, so estimators can hand
/// each worker or each net element its own stream without sharing state.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

  Rng split(std::uint64_t child) const;
  Rng split(std::string_view label) const;

  double uniform();  // [0, 1)
  double normal();
  std::uint64_t bits() { return engine_(); }

  /// Uniform point on S^{n-1} (normalized Gaussian vector).
  Vec sphere(int n);
  /// Haar-distributed m-dimensional subspace of R^n.
  Subspace grassmann(int n, int m);
  Vec gaussian(int n);

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

std::uint64_t splitmix64(std::uint64_t x);
/// FNV-1a, used to turn labels into stream ids.
std::uint64_t hash_label(std::string_view label);

}  // namespace tomo
