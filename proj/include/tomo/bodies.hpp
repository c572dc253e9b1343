#pragma once

#include "tomo/linalg.hpp"
#include "tomo/polytope.hpp"

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>

namespace tomo {

/// Origin-centered ellipsoid {x : x^T A x <= 1}, A symmetric positive definite.
class Ellipsoid {
 public:
  explicit Ellipsoid(Mat shape);
  static Ellipsoid ball(int n, double radius);

  int dim() const { return static_cast<int>(shape_.rows()); }
  const Mat& shape() const { return shape_; }
  const Mat& inverse_shape() const { return inverse_; }

  /// omega_n / sqrt(det A)
  double volume() const;
  /// sqrt(xi^T A^{-1} xi)
  double support(const Vec& xi) const;
  Vec support_point(const Vec& xi) const;
  /// (theta^T A theta)^{-1/2}
  double radial(const Vec& theta) const;
  bool contains(const Vec& x, double tol = 1e-12) const;

  /// |E cap H| = omega_m / sqrt(det(B^T A B)).
  double section_volume(const Subspace& h) const;
  /// |E | H| = omega_m sqrt(det(B^T A^{-1} B)).
  double projection_volume(const Subspace& h) const;

  Ellipsoid transformed(const Mat& t) const;
  Ellipsoid polar() const { return Ellipsoid(inverse_); }

 private:
  Mat shape_;
  Mat inverse_;
  double log_det_ = 0.0;
};

/// Upper bound on a distance to a class of bodies, with where it came from.
enum class BoundKind { exact_one, loewner_ellipsoid, registered_formula, user_supplied };

struct DistanceBound {
  BoundKind kind = BoundKind::exact_one;
  double value = 1.0;
  std::string provenance;

  bool exact() const { return kind == BoundKind::exact_one; }
};

std::string to_string(BoundKind kind);

/// Class memberships that are invariant under invertible linear maps.
struct BodyTraits {
  bool intersection_body = false;  // in I_n, hence in every BP_k^n
  bool zonotope = false;           // 1-projection body
  bool ellipsoidal = false;        // p-projection body for every p >= 1
};

namespace detail {
class Shape;
}

/// Star body with the origin in its interior, described by its radial
/// function. Bodies that are convex also answer support-function queries;
/// calling those on a non-convex body throws std::logic_error.
///
/// Immutable; copies share the underlying shape.
class StarBody {
 public:
  static StarBody ball(int n, double radius = 1.0);
  /// l_p ball scaled by `scale`; p = infinity gives the cube [-scale, scale]^n.
  static StarBody lp_ball(int n, double p, double scale = 1.0);
  static StarBody cube(int n, double half_side = 1.0);
  static StarBody from_polytope(ConvexPolytope p, std::string tag);
  static StarBody from_ellipsoid(Ellipsoid e, std::string tag);
  /// Generic star body from a radial function on S^{n-1}. Not convex as far
  /// as the library is concerned.
  static StarBody from_radial(int n, std::function<double(const Vec&)> radial, std::string tag,
                              bool symmetric = false);

  int dim() const;
  const std::string& tag() const { return tag_; }

  /// rho_K(theta) for a unit vector theta.
  double radial(const Vec& theta) const;
  double radial(const Direction& theta) const { return radial(theta.vec()); }
  /// Minkowski functional |x|_2 / rho(x / |x|_2); zero at the origin.
  double norm(const Vec& x) const;
  bool contains(const Vec& x) const { return norm(x) <= 1.0; }

  bool is_convex() const;
  bool is_symmetric() const;
  BodyTraits traits() const;

  double support(const Vec& xi) const;
  Vec support_point(const Vec& xi) const;
  StarBody polar() const;

  const ConvexPolytope* polytope() const;
  const Ellipsoid* ellipsoid() const;

  std::optional<double> closed_form_volume() const;

  const std::map<int, DistanceBound>& dovr_registry() const { return dovr_registry_; }
  std::optional<DistanceBound> registered_dovr(int k) const;
  StarBody with_dovr_registry(std::map<int, DistanceBound> registry) const;
  StarBody with_tag(std::string tag) const;

  /// Image under an invertible linear map. Shape-specific structure
  /// (polytope, ellipsoid, l_p scaling) is preserved where possible;
  /// distance registries carry over since d_ovr is linearly invariant.
  StarBody linear_image(const Mat& t) const;

 private:
  StarBody(std::shared_ptr<const detail::Shape> shape, std::string tag);

  std::shared_ptr<const detail::Shape> shape_;
  std::string tag_;
  std::map<int, DistanceBound> dovr_registry_;
};

double minkowski_norm(const StarBody& body, const Vec& x);
/// Support function h_K(xi); throws std::logic_error for bodies without
/// convex structure.
double support(const StarBody& body, const Direction& xi);
StarBody linear_image(const StarBody& body, const Mat& t);
StarBody scaled(const StarBody& body, double lambda);
/// lambda K with |lambda K| = target; requires a closed-form volume.
StarBody with_volume(const StarBody& body, double target = 1.0);

/// Non-negative function on a body.
struct Density {
  std::string name;
  std::function<double(const Vec&)> eval;
  std::optional<double> sup_norm;
  bool continuous = true;
  /// When set, eval is identically `constant_value` and radial integrals are
  /// done in closed form.
  std::optional<double> constant_value;
  /// When set, eval vanishes on {<x, u> < 0}.
  std::optional<Vec> halfspace;
  /// When set, eval(x) == radial_profile(|x|).
  std::function<double(double)> radial_profile;

  double operator()(const Vec& x) const { return eval(x); }
  bool is_constant() const { return constant_value.has_value(); }

  static Density constant(double c = 1.0);
  /// exp(-|x|^2); g(0) = sup g = 1.
  static Density gaussian();
  /// Indicator of {<x, u> >= 0}; constant along rays from the origin.
  static Density halfspace_indicator(const Vec& u);
};

}  // namespace tomo
