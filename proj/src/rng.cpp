#include "tomo/rng.hpp"

namespace tomo {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t hash_label(std::string_view label) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : label) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

namespace {

std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t stream) {
  const std::uint64_t a = splitmix64(seed);
  const std::uint64_t b = splitmix64(a ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
  std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                    static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace

Rng::Rng(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed), stream_(stream), engine_(make_engine(seed, stream)) {}

Rng Rng::split(std::uint64_t child) const {
  return Rng(seed_, splitmix64(stream_ * 0x9e3779b97f4a7c15ULL + splitmix64(child)));
}

Rng Rng::split(std::string_view label) const { return split(hash_label(label)); }

double Rng::uniform() { return uniform_(engine_); }

double Rng::normal() { return normal_(engine_); }

Vec Rng::gaussian(int n) {
  Vec g(n);
  for (int i = 0; i < n; ++i) g[i] = normal();
  return g;
}

Vec Rng::sphere(int n) {
  while (true) {
    Vec g = gaussian(n);
    const double r = g.norm();
    if (r > 1e-300) return g / r;
  }
}

Subspace Rng::grassmann(int n, int m) {
  while (true) {
    Mat g(n, m);
    for (int j = 0; j < m; ++j)
      for (int i = 0; i < n; ++i) g(i, j) = normal();
    Eigen::ColPivHouseholderQR<Mat> check(g);
    if (check.rank() < m) continue;
    return Subspace(linalg::orthonormalize(g));
  }
}

}  // namespace tomo
