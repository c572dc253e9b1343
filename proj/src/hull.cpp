#include "tomo/hull.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

namespace tomo::hull {

namespace {

constexpr int kIndexBits = 10;
constexpr int kMaxPoints = 1 << kIndexBits;

template <int D>
struct WorkingFacet {
  std::array<int, D> vertices;
  std::array<int, D> neighbors;  // neighbors[s] shares every vertex but vertices[s]
  std::array<double, D> normal;
  double offset = 0.0;
  int visible_at = -1;
  int checked_at = -1;
  bool alive = true;
};

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Key of a vertex set given in arbitrary order.
template <int N>
std::uint64_t set_key(std::array<int, N> v) {
  for (int i = 1; i < N; ++i)
    for (int j = i; j > 0 && v[j - 1] > v[j]; --j) std::swap(v[j - 1], v[j]);
  std::uint64_t key = 0;
  for (int x : v) key = (key << kIndexBits) | static_cast<std::uint64_t>(x + 1);
  return key;
}

/// Beneath-beyond insertion starting from `simplex` with facet adjacency;
/// fills the live facets and returns the volume.
template <int D>
double build(const std::vector<Vec>& points, const std::vector<int>& simplex, const Vec& interior_vec, double eps,
             std::vector<SimplexFacet>& facets) {
  using Point = std::array<double, D>;
  using Facet = WorkingFacet<D>;
  std::vector<Point> pts(points.size());
  for (std::size_t i = 0; i < points.size(); ++i)
    for (int c = 0; c < D; ++c) pts[i][c] = points[i][c];
  Point interior;
  for (int c = 0; c < D; ++c) interior[c] = interior_vec[c];
  const double plane_tol = 1e-2 * eps;

  auto height = [](const Facet& f, const Point& p) {
    double h = -f.offset;
    for (int c = 0; c < D; ++c) h += f.normal[c] * p[c];
    return h;
  };
  // Sets offset from the first vertex and orients the normal away from the
  // interior point.
  auto orient = [&](Facet& f) {
    double offset = 0.0, inner = 0.0;
    for (int c = 0; c < D; ++c) {
      offset += f.normal[c] * pts[f.vertices[0]][c];
      inner += f.normal[c] * interior[c];
    }
    if (inner > offset) {
      for (int c = 0; c < D; ++c) f.normal[c] = -f.normal[c];
      offset = -offset;
    }
    f.offset = offset;
  };
  // Orthonormalize the edges (modified Gram-Schmidt), then take the
  // residual of the coordinate axis least covered by them.
  auto gram_schmidt_normal = [&](Facet& f) {
    const Point& base = pts[f.vertices[0]];
    std::array<Point, D - 1> q;
    for (int j = 1; j < D; ++j) {
      Point& v = q[j - 1];
      for (int c = 0; c < D; ++c) v[c] = pts[f.vertices[j]][c] - base[c];
      for (int pass = 0; pass < 2; ++pass) {
        for (int i = 0; i < j - 1; ++i) {
          double dot = 0.0;
          for (int c = 0; c < D; ++c) dot += q[i][c] * v[c];
          for (int c = 0; c < D; ++c) v[c] -= dot * q[i][c];
        }
      }
      double norm = 0.0;
      for (int c = 0; c < D; ++c) norm += v[c] * v[c];
      const double inv = 1.0 / std::sqrt(norm);
      for (int c = 0; c < D; ++c) v[c] *= inv;
    }
    int axis = 0;
    double least = std::numeric_limits<double>::infinity();
    for (int c = 0; c < D; ++c) {
      double covered = 0.0;
      for (int i = 0; i < D - 1; ++i) covered += q[i][c] * q[i][c];
      if (covered < least) {
        least = covered;
        axis = c;
      }
    }
    Point& r = f.normal;
    r.fill(0.0);
    r[axis] = 1.0;
    for (int pass = 0; pass < 2; ++pass) {
      for (int i = 0; i < D - 1; ++i) {
        double dot = 0.0;
        for (int c = 0; c < D; ++c) dot += q[i][c] * r[c];
        for (int c = 0; c < D; ++c) r[c] -= dot * q[i][c];
      }
    }
    double norm = 0.0;
    for (int c = 0; c < D; ++c) norm += r[c] * r[c];
    const double inv = 1.0 / std::sqrt(norm);
    for (int c = 0; c < D; ++c) r[c] *= inv;
    orient(f);
  };

  std::vector<Facet> work;
  work.reserve(1024);
  for (int omit = 0; omit <= D; ++omit) {
    Facet f;
    int count = 0;
    for (int j = 0; j <= D; ++j) {
      if (j == omit) continue;
      f.vertices[count] = simplex[j];
      f.neighbors[count] = j;  // the facet omitting simplex[j]
      ++count;
    }
    gram_schmidt_normal(f);
    work.push_back(f);
  }

  std::vector<char> in_simplex(points.size(), 0);
  for (int i : simplex) in_simplex[i] = 1;

  struct Horizon {
    int facet;
    int slot;
  };
  struct SubRidge {
    std::uint64_t key;
    int facet;
    int slot;
  };
  std::vector<int> visible;
  std::vector<Horizon> horizon;
  std::vector<SubRidge> sub_ridges;
  std::vector<int> remap;
  std::vector<int> table;
  int recent = 0;
  for (int q = 0; q < static_cast<int>(pts.size()); ++q) {
    if (in_simplex[q]) continue;
    const Point& p = pts[q];
    // Walk uphill from a recent facet to one that sees q, then collect the
    // visible region through neighbor links. A stalled walk falls back to
    // scanning every facet.
    int start = recent;
    double h = height(work[start], p);
    while (h <= eps) {
      int best = -1;
      double best_h = h;
      for (int nb : work[start].neighbors) {
        const double hn = height(work[nb], p);
        if (hn > best_h) {
          best_h = hn;
          best = nb;
        }
      }
      if (best < 0) break;
      start = best;
      h = best_h;
    }
    if (h <= eps) {
      start = -1;
      for (int f = 0; f < static_cast<int>(work.size()); ++f) {
        if (work[f].alive && height(work[f], p) > eps) {
          start = f;
          break;
        }
      }
      if (start < 0) continue;
    }
    visible.clear();
    visible.push_back(start);
    work[start].visible_at = q;
    for (std::size_t i = 0; i < visible.size(); ++i) {
      for (int nb : work[visible[i]].neighbors) {
        if (work[nb].visible_at == q || work[nb].checked_at == q) continue;
        if (height(work[nb], p) > eps) {
          work[nb].visible_at = q;
          visible.push_back(nb);
        } else {
          work[nb].checked_at = q;
        }
      }
    }
    if (work.size() > 64 && visible.size() * 4 < work.size()) {
      // Drop dead facets now and then, renumbering neighbor links.
      std::size_t live = 0;
      for (const auto& f : work) live += f.alive;
      if (live * 2 < work.size()) {
        remap.assign(work.size(), -1);
        int next = 0;
        for (std::size_t f = 0; f < work.size(); ++f)
          if (work[f].alive) remap[f] = next++;
        std::erase_if(work, [](const Facet& f) { return !f.alive; });
        for (auto& f : work)
          for (int& nb : f.neighbors) nb = remap[nb];
        for (int& f : visible) f = remap[f];
      }
    }

    horizon.clear();
    for (int f : visible)
      for (int s = 0; s < D; ++s)
        if (work[work[f].neighbors[s]].visible_at != q) horizon.push_back({f, s});

    sub_ridges.clear();
    for (const auto& [f, s] : horizon) {
      const int nb = work[f].neighbors[s];
      Facet g;
      g.vertices = work[f].vertices;
      g.vertices[s] = q;
      g.neighbors = work[f].neighbors;
      g.neighbors[s] = nb;
      // Both old normals are orthogonal to the shared ridge; this combination
      // is also orthogonal to q minus a ridge point.
      const double hf = height(work[f], p), hn = height(work[nb], p);
      double norm = 0.0;
      for (int c = 0; c < D; ++c) {
        g.normal[c] = hn * work[f].normal[c] - hf * work[nb].normal[c];
        norm += g.normal[c] * g.normal[c];
      }
      bool accurate = norm > 1e-20;
      if (accurate) {
        const double inv = 1.0 / std::sqrt(norm);
        for (int c = 0; c < D; ++c) g.normal[c] *= inv;
        orient(g);
        for (int v : g.vertices) {
          if (std::abs(height(g, pts[v])) > plane_tol) {
            accurate = false;
            break;
          }
        }
      }
      if (!accurate) gram_schmidt_normal(g);
      const int index = static_cast<int>(work.size());
      for (int& link : work[nb].neighbors) {
        if (link == f) {
          link = index;
          break;
        }
      }
      for (int t = 0; t < D; ++t) {
        if (t == s) continue;
        std::array<int, D - 1> face;
        int count = 0;
        for (int u = 0; u < D; ++u)
          if (u != t) face[count++] = g.vertices[u];
        sub_ridges.push_back({set_key<D - 1>(face), index, t});
      }
      work.push_back(g);
    }
    for (int f : visible) work[f].alive = false;
    recent = static_cast<int>(work.size()) - 1;

    // Link the new facets to each other across the faces through q: each
    // such face is shared by exactly two of them.
    std::size_t cap = 16;
    while (cap < 2 * sub_ridges.size()) cap <<= 1;
    table.assign(cap, -1);
    for (int i = 0; i < static_cast<int>(sub_ridges.size()); ++i) {
      std::size_t slot = splitmix(sub_ridges[i].key) & (cap - 1);
      while (table[slot] >= 0 && sub_ridges[table[slot]].key != sub_ridges[i].key) slot = (slot + 1) & (cap - 1);
      if (table[slot] < 0) {
        table[slot] = i;
        continue;
      }
      SubRidge& other = sub_ridges[table[slot]];
      if (other.slot < 0) throw std::runtime_error("Hull: inconsistent horizon");
      work[other.facet].neighbors[other.slot] = sub_ridges[i].facet;
      work[sub_ridges[i].facet].neighbors[sub_ridges[i].slot] = other.facet;
      other.slot = -1;
    }
    for (int i : table)
      if (i >= 0 && sub_ridges[i].slot >= 0) throw std::runtime_error("Hull: inconsistent horizon");
  }

  // Volume as a sum of cones from the interior point over the facets.
  double total = 0.0;
  for (const auto& f : work) {
    if (!f.alive) continue;
    std::array<Point, D> m;
    for (int j = 0; j < D; ++j)
      for (int c = 0; c < D; ++c) m[j][c] = pts[f.vertices[j]][c] - interior[c];
    double det = 1.0;
    for (int k = 0; k < D; ++k) {
      int pr = k;
      for (int i = k + 1; i < D; ++i)
        if (std::abs(m[i][k]) > std::abs(m[pr][k])) pr = i;
      if (m[pr][k] == 0.0) {
        det = 0.0;
        break;
      }
      std::swap(m[k], m[pr]);
      det *= m[k][k];
      for (int i = k + 1; i < D; ++i) {
        const double factor = m[i][k] / m[k][k];
        for (int j = k; j < D; ++j) m[i][j] -= factor * m[k][j];
      }
    }
    total += std::abs(det);
    SimplexFacet out;
    out.vertices.assign(f.vertices.begin(), f.vertices.end());
    std::sort(out.vertices.begin(), out.vertices.end());
    out.normal = Eigen::Map<const Vec>(f.normal.data(), D);
    out.offset = f.offset;
    facets.push_back(std::move(out));
  }
  return total / std::exp(linalg::log_factorial(D));
}

}  // namespace

Hull::Hull(std::vector<Vec> points, double relative_tolerance) : points_(std::move(points)) {
  if (points_.empty()) throw std::invalid_argument("Hull: no points");
  dim_ = static_cast<int>(points_.front().size());
  const int d = dim_;
  if (d < 2) throw std::invalid_argument("Hull: dimension must be at least 2");
  if (d > 7) throw std::invalid_argument("Hull: dimension above 7 is not supported");
  if (static_cast<int>(points_.size()) < d + 1) throw std::runtime_error("Hull: too few points");
  if (static_cast<int>(points_.size()) >= kMaxPoints) throw std::invalid_argument("Hull: too many points");

  double scale = 0.0;
  for (const auto& p : points_) scale = std::max(scale, p.cwiseAbs().maxCoeff());
  if (scale == 0.0) throw std::runtime_error("Hull: points are not full-dimensional");
  const double eps = relative_tolerance * scale;

  // Greedy initial simplex: repeatedly take the point farthest from the
  // affine span of those already chosen.
  std::vector<int> simplex;
  {
    int first = 0;
    for (int i = 1; i < static_cast<int>(points_.size()); ++i) {
      if (points_[i][0] < points_[first][0]) first = i;
    }
    simplex.push_back(first);
    Mat basis(d, 0);
    for (int step = 0; step < d; ++step) {
      int best = -1;
      double best_dist = 0.0;
      for (int i = 0; i < static_cast<int>(points_.size()); ++i) {
        Vec r = points_[i] - points_[first];
        if (basis.cols() > 0) r -= basis * (basis.transpose() * r);
        const double dist = r.norm();
        if (dist > best_dist) {
          best_dist = dist;
          best = i;
        }
      }
      if (best < 0 || best_dist <= 1e3 * eps) throw std::runtime_error("Hull: points are not full-dimensional");
      Vec r = points_[best] - points_[first];
      if (basis.cols() > 0) r -= basis * (basis.transpose() * r);
      basis.conservativeResize(Eigen::NoChange, basis.cols() + 1);
      basis.col(basis.cols() - 1) = r / r.norm();
      simplex.push_back(best);
    }
  }

  interior_ = Vec::Zero(d);
  for (int i : simplex) interior_ += points_[i];
  interior_ /= static_cast<double>(simplex.size());

  switch (d) {
    case 2: volume_ = build<2>(points_, simplex, interior_, eps, facets_); break;
    case 3: volume_ = build<3>(points_, simplex, interior_, eps, facets_); break;
    case 4: volume_ = build<4>(points_, simplex, interior_, eps, facets_); break;
    case 5: volume_ = build<5>(points_, simplex, interior_, eps, facets_); break;
    case 6: volume_ = build<6>(points_, simplex, interior_, eps, facets_); break;
    default: volume_ = build<7>(points_, simplex, interior_, eps, facets_); break;
  }
}

double Hull::facet_area(const SimplexFacet& f) const {
  std::vector<Vec> verts;
  verts.reserve(f.vertices.size());
  for (int i : f.vertices) verts.push_back(points_[i]);
  return simplex_measure(verts);
}

std::vector<int> Hull::vertex_indices() const {
  std::vector<char> used(points_.size(), 0);
  for (const auto& f : facets_)
    for (int i : f.vertices) used[i] = 1;
  std::vector<int> out;
  for (std::size_t i = 0; i < used.size(); ++i)
    if (used[i]) out.push_back(static_cast<int>(i));
  return out;
}

double hull_volume(const std::vector<Vec>& points) {
  if (points.empty()) return 0.0;
  if (points.front().size() == 1) {
    double lo = points.front()[0], hi = lo;
    for (const auto& p : points) {
      lo = std::min(lo, p[0]);
      hi = std::max(hi, p[0]);
    }
    return hi - lo;
  }
  try {
    return Hull(points).volume();
  } catch (const std::runtime_error&) {
    return 0.0;
  }
}

double simplex_measure(const std::vector<Vec>& vertices) {
  if (vertices.size() < 2) return 0.0;
  const auto s = static_cast<Eigen::Index>(vertices.size() - 1);
  const auto n = vertices.front().size();
  Mat g(n, s);
  for (Eigen::Index j = 0; j < s; ++j) g.col(j) = vertices[static_cast<std::size_t>(j + 1)] - vertices.front();
  const double det = (g.transpose() * g).determinant();
  return std::sqrt(std::max(det, 0.0)) / std::exp(linalg::log_factorial(static_cast<int>(s)));
}

}  // namespace tomo::hull
