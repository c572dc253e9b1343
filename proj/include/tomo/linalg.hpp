#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <vector>

namespace tomo {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Unit vector in R^n. Construction normalizes; the zero vector is rejected.
class Direction {
 public:
  explicit Direction(const Vec& v);

  static Direction axis(int n, int i);

  int dim() const { return static_cast<int>(coords_.size()); }
  const Vec& vec() const { return coords_; }
  double operator[](int i) const { return coords_[i]; }
  Direction operator-() const;

 private:
  struct Unchecked {};
  Direction(Vec v, Unchecked) : coords_(std::move(v)) {}
  Vec coords_;
};

/// An (n-k)-dimensional linear subspace of R^n, stored as an n x (n-k)
/// matrix with orthonormal columns.
class Subspace {
 public:
  /// Takes an already orthonormal basis; throws if B^T B != I within 1e-10
  /// or if the dimension is outside [1, n-1].
  explicit Subspace(Mat basis);

  /// Orthonormalizes the columns of `spanning` (must have full column rank).
  static Subspace span(const Mat& spanning);
  /// Orthogonal complement of span(vectors).
  static Subspace complement(const Mat& vectors);
  static Subspace coordinate(int n, const std::vector<int>& axes);
  /// Hyperplane xi^perp.
  static Subspace hyperplane(const Direction& xi);

  int ambient_dim() const { return static_cast<int>(basis_.rows()); }
  int dim() const { return static_cast<int>(basis_.cols()); }
  int codim() const { return ambient_dim() - dim(); }
  const Mat& basis() const { return basis_; }

  /// Orthonormal basis of H^perp (n x k).
  Mat complement_basis() const;
  /// Coordinates of x in the basis (B^T x).
  Vec coordinates(const Vec& x) const { return basis_.transpose() * x; }

 private:
  Mat basis_;
};

namespace linalg {

/// Orthonormal basis of the column space via Householder QR; throws when
/// the columns are rank deficient.
Mat orthonormalize(const Mat& m);

bool is_symmetric(const Mat& m, double tol = 1e-12);

/// A^{-1/2} and A^{1/2} for SPD A.
Mat inverse_sqrt_spd(const Mat& a);
Mat sqrt_spd(const Mat& a);

double log_factorial(int n);

/// All k-element subsets of {0..n-1}, lexicographic.
std::vector<std::vector<int>> combinations(int n, int k);

}  // namespace linalg
}  // namespace tomo
