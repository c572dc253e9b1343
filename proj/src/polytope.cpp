#include "tomo/polytope.hpp"

#include "tomo/hull.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace tomo {

namespace {

double coordinate_scale(const std::vector<Vec>& pts) {
  double s = 0.0;
  for (const auto& p : pts) s = std::max(s, p.cwiseAbs().maxCoeff());
  return std::max(s, 1e-300);
}

double binomial(int n, int k) {
  return std::exp(linalg::log_factorial(n) - linalg::log_factorial(k) - linalg::log_factorial(n - k));
}

}  // namespace

ConvexPolytope::ConvexPolytope(std::vector<Vec> vertices, std::vector<Facet> facets)
    : vertices_(std::move(vertices)), facets_(std::move(facets)) {
  if (vertices_.empty() || facets_.empty()) throw std::invalid_argument("ConvexPolytope: empty vertex or facet list");
  dim_ = static_cast<int>(vertices_.front().size());
  if (dim_ < 2) throw std::invalid_argument("ConvexPolytope: dimension must be at least 2");
  const double scale = coordinate_scale(vertices_);

  double total_area = 0.0;
  Vec closure = Vec::Zero(dim_);
  for (const auto& f : facets_) {
    if (!(f.offset > 0.0)) throw std::invalid_argument("ConvexPolytope: origin is not interior (offset <= 0)");
    if (std::abs(f.normal.norm() - 1.0) > 1e-10) throw std::invalid_argument("ConvexPolytope: facet normal not unit");
    const double h = support(f.normal);
    if (std::abs(h - f.offset) > 1e-10 * std::max(1.0, scale)) {
      throw std::invalid_argument("ConvexPolytope: facet offset disagrees with support function");
    }
    total_area += f.area;
    closure += f.area * f.normal;
  }
  if (closure.cwiseAbs().maxCoeff() > 1e-8 * std::max(1.0, total_area)) {
    throw std::invalid_argument("ConvexPolytope: surface area measure is not closed (sum area*normal != 0)");
  }

  for (const auto& f : facets_) volume_ += f.offset * f.area;
  volume_ /= dim_;

  symmetric_ = true;
  for (const auto& v : vertices_) {
    const bool found = std::any_of(vertices_.begin(), vertices_.end(),
                                   [&](const Vec& w) { return (v + w).cwiseAbs().maxCoeff() <= 1e-9 * scale; });
    if (!found) {
      symmetric_ = false;
      break;
    }
  }
  compute_edges();
}

void ConvexPolytope::compute_edges() {
  const double scale = coordinate_scale(vertices_);
  const std::size_t nf = facets_.size();
  const std::size_t words = (nf + 63) / 64;
  std::vector<std::vector<std::uint64_t>> incidence(vertices_.size(), std::vector<std::uint64_t>(words, 0));
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    for (std::size_t f = 0; f < nf; ++f) {
      if (std::abs(facets_[f].normal.dot(vertices_[i]) - facets_[f].offset) <= 1e-9 * std::max(1.0, scale)) {
        incidence[i][f / 64] |= (std::uint64_t{1} << (f % 64));
      }
    }
  }
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    for (std::size_t j = i + 1; j < vertices_.size(); ++j) {
      std::vector<int> common;
      for (std::size_t w = 0; w < words; ++w) {
        std::uint64_t bits = incidence[i][w] & incidence[j][w];
        while (bits) {
          const int b = __builtin_ctzll(bits);
          common.push_back(static_cast<int>(w * 64 + static_cast<std::size_t>(b)));
          bits &= bits - 1;
        }
      }
      if (static_cast<int>(common.size()) < dim_ - 1) continue;
      Mat normals(static_cast<Eigen::Index>(common.size()), dim_);
      for (std::size_t r = 0; r < common.size(); ++r) normals.row(static_cast<Eigen::Index>(r)) = facets_[common[r]].normal.transpose();
      Eigen::FullPivLU<Mat> lu(normals);
      lu.setThreshold(1e-9);
      if (lu.rank() == dim_ - 1) edges_.emplace_back(static_cast<int>(i), static_cast<int>(j));
    }
  }
}

ConvexPolytope ConvexPolytope::from_vertices(const std::vector<Vec>& points) {
  if (points.empty()) throw std::invalid_argument("ConvexPolytope::from_vertices: no points");
  const int n = static_cast<int>(points.front().size());
  if (n < 2 || n > 6) throw std::invalid_argument("ConvexPolytope::from_vertices: dimension must be in [2, 6]");
  hull::Hull h(points);
  const double scale = coordinate_scale(points);

  std::vector<Vec> verts;
  for (int i : h.vertex_indices()) verts.push_back(h.points()[i]);

  std::vector<Facet> facets;
  for (const auto& sf : h.facets()) {
    const double area = h.facet_area(sf);
    auto match = std::find_if(facets.begin(), facets.end(), [&](const Facet& f) {
      return (f.normal - sf.normal).norm() < 1e-8 && std::abs(f.offset - sf.offset) < 1e-8 * std::max(1.0, scale);
    });
    if (match != facets.end()) {
      match->area += area;
    } else {
      facets.push_back(Facet{sf.normal, sf.offset, area});
    }
  }
  for (auto& f : facets) {
    double h_max = -INFINITY;
    for (const auto& v : verts) h_max = std::max(h_max, f.normal.dot(v));
    f.offset = h_max;
  }
  return ConvexPolytope(std::move(verts), std::move(facets));
}

ConvexPolytope ConvexPolytope::cube(int n, double a) {
  if (n < 2 || n > 10) throw std::invalid_argument("ConvexPolytope::cube: dimension must be in [2, 10]");
  if (!(a > 0.0)) throw std::invalid_argument("ConvexPolytope::cube: half side must be positive");
  std::vector<Vec> verts;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    Vec v(n);
    for (int i = 0; i < n; ++i) v[i] = (mask >> i) & 1u ? a : -a;
    verts.push_back(std::move(v));
  }
  std::vector<Facet> facets;
  const double area = std::pow(2.0 * a, n - 1);
  for (int i = 0; i < n; ++i) {
    facets.push_back(Facet{Vec::Unit(n, i), a, area});
    facets.push_back(Facet{-Vec::Unit(n, i), a, area});
  }
  return ConvexPolytope(std::move(verts), std::move(facets));
}

ConvexPolytope ConvexPolytope::cross_polytope(int n, double r) {
  if (n < 2 || n > 10) throw std::invalid_argument("ConvexPolytope::cross_polytope: dimension must be in [2, 10]");
  if (!(r > 0.0)) throw std::invalid_argument("ConvexPolytope::cross_polytope: radius must be positive");
  std::vector<Vec> verts;
  for (int i = 0; i < n; ++i) {
    verts.push_back(r * Vec::Unit(n, i));
    verts.push_back(-r * Vec::Unit(n, i));
  }
  const double sqrt_n = std::sqrt(static_cast<double>(n));
  const double area = std::pow(r, n - 1) * sqrt_n / std::exp(linalg::log_factorial(n - 1));
  std::vector<Facet> facets;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    Vec u(n);
    for (int i = 0; i < n; ++i) u[i] = ((mask >> i) & 1u ? 1.0 : -1.0) / sqrt_n;
    facets.push_back(Facet{std::move(u), r / sqrt_n, area});
  }
  return ConvexPolytope(std::move(verts), std::move(facets));
}

double ConvexPolytope::surface_area() const {
  double s = 0.0;
  for (const auto& f : facets_) s += f.area;
  return s;
}

double ConvexPolytope::support(const Vec& xi) const {
  double h = -INFINITY;
  for (const auto& v : vertices_) h = std::max(h, v.dot(xi));
  return h;
}

Vec ConvexPolytope::support_point(const Vec& xi) const {
  std::size_t best = 0;
  double h = -INFINITY;
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    const double d = vertices_[i].dot(xi);
    if (d > h) {
      h = d;
      best = i;
    }
  }
  return vertices_[best];
}

double ConvexPolytope::radial(const Vec& theta) const {
  double r = INFINITY;
  for (const auto& f : facets_) {
    const double d = f.normal.dot(theta);
    if (d > 0.0) r = std::min(r, f.offset / d);
  }
  return r;
}

bool ConvexPolytope::contains(const Vec& x, double tol) const {
  return std::all_of(facets_.begin(), facets_.end(),
                     [&](const Facet& f) { return f.normal.dot(x) <= f.offset + tol; });
}

ConvexPolytope ConvexPolytope::transformed(const Mat& t) const {
  if (t.rows() != dim_ || t.cols() != dim_) throw std::invalid_argument("ConvexPolytope::transformed: size mismatch");
  Eigen::FullPivLU<Mat> lu(t);
  if (!lu.isInvertible()) throw std::invalid_argument("ConvexPolytope::transformed: singular map");
  const double det = std::abs(lu.determinant());
  const Mat inv_t = lu.inverse().transpose();
  std::vector<Vec> verts;
  verts.reserve(vertices_.size());
  for (const auto& v : vertices_) verts.push_back(t * v);
  std::vector<Facet> facets;
  facets.reserve(facets_.size());
  for (const auto& f : facets_) {
    const Vec w = inv_t * f.normal;
    const double len = w.norm();
    facets.push_back(Facet{w / len, f.offset / len, det * len * f.area});
  }
  return ConvexPolytope(std::move(verts), std::move(facets));
}

ConvexPolytope ConvexPolytope::polar() const {
  std::vector<Vec> pts;
  pts.reserve(facets_.size());
  for (const auto& f : facets_) pts.push_back(f.normal / f.offset);
  return from_vertices(pts);
}

double ConvexPolytope::section_volume(const Subspace& h, std::size_t max_subsets) const {
  if (h.ambient_dim() != dim_) throw std::invalid_argument("section_volume: dimension mismatch");
  const Mat& b = h.basis();
  const int m = h.dim();
  const double scale = coordinate_scale(vertices_);
  std::vector<Vec> pts;

  if (h.codim() == 1) {
    const Vec xi = h.complement_basis().col(0);
    std::vector<double> s(vertices_.size());
    for (std::size_t i = 0; i < vertices_.size(); ++i) s[i] = xi.dot(vertices_[i]);
    const double tol = 1e-12 * scale;
    for (std::size_t i = 0; i < vertices_.size(); ++i)
      if (std::abs(s[i]) <= tol) pts.push_back(b.transpose() * vertices_[i]);
    for (const auto& [i, j] : edges_) {
      if (std::abs(s[i]) <= tol || std::abs(s[j]) <= tol || s[i] * s[j] > 0.0) continue;
      const double t = s[i] / (s[i] - s[j]);
      pts.push_back(b.transpose() * (vertices_[i] + t * (vertices_[j] - vertices_[i])));
    }
  } else {
    const int nf = static_cast<int>(facets_.size());
    if (binomial(nf, m) > static_cast<double>(max_subsets)) {
      throw std::length_error("section_volume: vertex enumeration too large (" + std::to_string(nf) + " facets, dim " +
                              std::to_string(m) + ")");
    }
    Mat a(nf, m);
    Vec rhs(nf);
    for (int f = 0; f < nf; ++f) {
      a.row(f) = (b.transpose() * facets_[f].normal).transpose();
      rhs[f] = facets_[f].offset;
    }
    const double feas_tol = 1e-9 * std::max(1.0, scale);
    Mat sub(m, m);
    Vec sub_rhs(m);
    std::vector<int> idx(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) idx[static_cast<std::size_t>(i)] = i;
    while (true) {
      for (int r = 0; r < m; ++r) {
        sub.row(r) = a.row(idx[static_cast<std::size_t>(r)]);
        sub_rhs[r] = rhs[idx[static_cast<std::size_t>(r)]];
      }
      Eigen::FullPivLU<Mat> lu(sub);
      lu.setThreshold(1e-10);
      if (lu.rank() == m) {
        const Vec y = lu.solve(sub_rhs);
        if (((a * y - rhs).array() <= feas_tol).all()) pts.push_back(y);
      }
      int i = m - 1;
      while (i >= 0 && idx[static_cast<std::size_t>(i)] == nf - m + i) --i;
      if (i < 0) break;
      ++idx[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < m; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
  // Degenerate sections hit the same vertex from many facet subsets.
  std::vector<Vec> unique;
  const double dup_tol = 1e-9 * std::max(1.0, scale);
  for (const auto& q : pts) {
    bool seen = false;
    for (const auto& u : unique)
      if ((u - q).lpNorm<Eigen::Infinity>() <= dup_tol) {
        seen = true;
        break;
      }
    if (!seen) unique.push_back(q);
  }
  if (static_cast<int>(unique.size()) < m + 1) return 0.0;
  return hull::hull_volume(unique);
}

double ConvexPolytope::projection_volume(const Subspace& h) const {
  if (h.ambient_dim() != dim_) throw std::invalid_argument("projection_volume: dimension mismatch");
  std::vector<Vec> pts;
  pts.reserve(vertices_.size());
  for (const auto& v : vertices_) pts.push_back(h.coordinates(v));
  return hull::hull_volume(pts);
}

}  // namespace tomo
