#include "tomo/linalg.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace tomo {

Direction::Direction(const Vec& v) {
  const double norm = v.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw std::invalid_argument("Direction: vector must be nonzero and finite");
  }
  coords_ = v / norm;
}

Direction Direction::axis(int n, int i) {
  if (i < 0 || i >= n) throw std::out_of_range("Direction::axis: index out of range");
  return Direction(Vec::Unit(n, i), Unchecked{});
}

Direction Direction::operator-() const { return Direction(Vec(-coords_), Unchecked{}); }

Subspace::Subspace(Mat basis) : basis_(std::move(basis)) {
  const auto n = basis_.rows();
  const auto m = basis_.cols();
  if (m < 1 || m > n - 1) {
    throw std::invalid_argument("Subspace: dimension must lie in [1, n-1], got " + std::to_string(m) +
                                " in R^" + std::to_string(n));
  }
  const Mat gram = basis_.transpose() * basis_;
  if ((gram - Mat::Identity(m, m)).cwiseAbs().maxCoeff() > 1e-10) {
    throw std::invalid_argument("Subspace: basis columns are not orthonormal");
  }
}

Subspace Subspace::span(const Mat& spanning) { return Subspace(linalg::orthonormalize(spanning)); }

Subspace Subspace::complement(const Mat& vectors) {
  const auto n = vectors.rows();
  const auto k = vectors.cols();
  const Mat q = linalg::orthonormalize(vectors);
  // Full Q of the QR of [q | I] gives a completion; take the trailing n-k columns.
  Eigen::HouseholderQR<Mat> qr(q);
  Mat full = qr.householderQ() * Mat::Identity(n, n);
  return Subspace(Mat(full.rightCols(n - k)));
}

Subspace Subspace::coordinate(int n, const std::vector<int>& axes) {
  Mat b = Mat::Zero(n, static_cast<Eigen::Index>(axes.size()));
  for (std::size_t j = 0; j < axes.size(); ++j) {
    if (axes[j] < 0 || axes[j] >= n) throw std::out_of_range("Subspace::coordinate: bad axis");
    b(axes[j], static_cast<Eigen::Index>(j)) = 1.0;
  }
  return Subspace(std::move(b));
}

Subspace Subspace::hyperplane(const Direction& xi) { return complement(Mat(xi.vec())); }

Mat Subspace::complement_basis() const {
  const auto n = basis_.rows();
  const auto m = basis_.cols();
  Eigen::HouseholderQR<Mat> qr(basis_);
  Mat full = qr.householderQ() * Mat::Identity(n, n);
  return full.rightCols(n - m);
}

namespace linalg {

Mat orthonormalize(const Mat& m) {
  Eigen::ColPivHouseholderQR<Mat> rank_check(m);
  rank_check.setThreshold(1e-12);
  if (rank_check.rank() < m.cols()) {
    throw std::invalid_argument("orthonormalize: columns are linearly dependent");
  }
  Eigen::HouseholderQR<Mat> qr(m);
  Mat q = qr.householderQ() * Mat::Identity(m.rows(), m.cols());
  // Fix signs so that the result is continuous in m (diag of R positive).
  const Mat r = qr.matrixQR().topRows(m.cols()).triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    if (r(j, j) < 0) q.col(j) = -q.col(j);
  }
  return q;
}

bool is_symmetric(const Mat& m, double tol) {
  if (m.rows() != m.cols()) return false;
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  return (m - m.transpose()).cwiseAbs().maxCoeff() <= tol * scale;
}

Mat inverse_sqrt_spd(const Mat& a) {
  Eigen::SelfAdjointEigenSolver<Mat> es(a);
  if (es.info() != Eigen::Success || es.eigenvalues().minCoeff() <= 0.0) {
    throw std::invalid_argument("inverse_sqrt_spd: matrix is not positive definite");
  }
  return es.eigenvectors() * es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
         es.eigenvectors().transpose();
}

Mat sqrt_spd(const Mat& a) {
  Eigen::SelfAdjointEigenSolver<Mat> es(a);
  if (es.info() != Eigen::Success || es.eigenvalues().minCoeff() <= 0.0) {
    throw std::invalid_argument("sqrt_spd: matrix is not positive definite");
  }
  return es.eigenvectors() * es.eigenvalues().cwiseSqrt().asDiagonal() * es.eigenvectors().transpose();
}

double log_factorial(int n) { return std::lgamma(static_cast<double>(n) + 1.0); }

std::vector<std::vector<int>> combinations(int n, int k) {
  std::vector<std::vector<int>> out;
  if (k < 0 || k > n) return out;
  std::vector<int> idx(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
  while (true) {
    out.push_back(idx);
    int i = k - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) break;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

}  // namespace linalg
}  // namespace tomo
