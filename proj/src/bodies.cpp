#include "tomo/bodies.hpp"

#include "tomo/constants.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace tomo {

// ---------------------------------------------------------------- Ellipsoid

Ellipsoid::Ellipsoid(Mat shape) : shape_(std::move(shape)) {
  if (shape_.rows() != shape_.cols() || shape_.rows() < 1) throw std::invalid_argument("Ellipsoid: shape must be square");
  if (!linalg::is_symmetric(shape_, 1e-10)) throw std::invalid_argument("Ellipsoid: shape matrix is not symmetric");
  shape_ = 0.5 * (shape_ + shape_.transpose());
  Eigen::LLT<Mat> llt(shape_);
  if (llt.info() != Eigen::Success) throw std::invalid_argument("Ellipsoid: shape matrix is not positive definite");
  const Mat l = llt.matrixL();
  for (Eigen::Index i = 0; i < l.rows(); ++i) {
    if (!(l(i, i) > 0.0)) throw std::invalid_argument("Ellipsoid: shape matrix is not positive definite");
    log_det_ += 2.0 * std::log(l(i, i));
  }
  inverse_ = llt.solve(Mat::Identity(shape_.rows(), shape_.cols()));
  inverse_ = 0.5 * (inverse_ + inverse_.transpose());
}

Ellipsoid Ellipsoid::ball(int n, double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("Ellipsoid::ball: radius must be positive");
  return Ellipsoid(Mat::Identity(n, n) / (radius * radius));
}

double Ellipsoid::volume() const { return std::exp(constants::log_omega(dim()) - 0.5 * log_det_); }

double Ellipsoid::support(const Vec& xi) const { return std::sqrt(xi.dot(inverse_ * xi)); }

Vec Ellipsoid::support_point(const Vec& xi) const {
  const Vec y = inverse_ * xi;
  return y / std::sqrt(xi.dot(y));
}

double Ellipsoid::radial(const Vec& theta) const { return 1.0 / std::sqrt(theta.dot(shape_ * theta)); }

bool Ellipsoid::contains(const Vec& x, double tol) const { return x.dot(shape_ * x) <= 1.0 + tol; }

double Ellipsoid::section_volume(const Subspace& h) const {
  const Mat m = h.basis().transpose() * shape_ * h.basis();
  return constants::omega(h.dim()) / std::sqrt(m.determinant());
}

double Ellipsoid::projection_volume(const Subspace& h) const {
  const Mat m = h.basis().transpose() * inverse_ * h.basis();
  return constants::omega(h.dim()) * std::sqrt(m.determinant());
}

Ellipsoid Ellipsoid::transformed(const Mat& t) const {
  Eigen::FullPivLU<Mat> lu(t);
  if (!lu.isInvertible()) throw std::invalid_argument("Ellipsoid::transformed: singular map");
  const Mat tinv = lu.inverse();
  return Ellipsoid(tinv.transpose() * shape_ * tinv);
}

std::string to_string(BoundKind kind) {
  switch (kind) {
    case BoundKind::exact_one: return "exact-one";
    case BoundKind::loewner_ellipsoid: return "loewner-ellipsoid";
    case BoundKind::registered_formula: return "registered-formula";
    case BoundKind::user_supplied: return "user-supplied";
  }
  return "unknown";
}

// ------------------------------------------------------------------- shapes

namespace detail {

class Shape {
 public:
  explicit Shape(int n, BodyTraits traits) : n_(n), traits_(traits) {}
  virtual ~Shape() = default;

  int dim() const { return n_; }
  const BodyTraits& traits() const { return traits_; }

  virtual double radial(const Vec& theta) const = 0;
  virtual bool convex() const = 0;
  virtual bool symmetric() const = 0;
  virtual double support(const Vec&) const { throw std::logic_error("support: body has no convex structure"); }
  virtual Vec support_point(const Vec&) const { throw std::logic_error("support_point: body has no convex structure"); }
  virtual std::shared_ptr<const Shape> polar() const { throw std::logic_error("polar: body has no convex structure"); }
  /// nullptr means "no specialized image"; the caller wraps generically.
  virtual std::shared_ptr<const Shape> transformed(const Mat&) const { return nullptr; }
  virtual std::optional<double> volume() const { return std::nullopt; }
  virtual const ConvexPolytope* polytope() const { return nullptr; }
  virtual const Ellipsoid* ellipsoid() const { return nullptr; }

 private:
  int n_;
  BodyTraits traits_;
};

}  // namespace detail

namespace {

using detail::Shape;
using ShapePtr = std::shared_ptr<const Shape>;

std::optional<double> uniform_scale(const Mat& t) {
  const double lambda = t(0, 0);
  const double tol = 1e-15 * std::abs(lambda);
  for (Eigen::Index i = 0; i < t.rows(); ++i)
    for (Eigen::Index j = 0; j < t.cols(); ++j)
      if (std::abs(t(i, j) - (i == j ? lambda : 0.0)) > tol) return std::nullopt;
  return lambda;
}

constexpr BodyTraits kEllipsoidal{true, false, true};

class EllipsoidShape final : public Shape {
 public:
  explicit EllipsoidShape(Ellipsoid e) : Shape(e.dim(), kEllipsoidal), e_(std::move(e)) {}
  double radial(const Vec& theta) const override { return e_.radial(theta); }
  bool convex() const override { return true; }
  bool symmetric() const override { return true; }
  double support(const Vec& xi) const override { return e_.support(xi); }
  Vec support_point(const Vec& xi) const override { return e_.support_point(xi); }
  ShapePtr polar() const override { return std::make_shared<EllipsoidShape>(e_.polar()); }
  ShapePtr transformed(const Mat& t) const override { return std::make_shared<EllipsoidShape>(e_.transformed(t)); }
  std::optional<double> volume() const override { return e_.volume(); }
  const Ellipsoid* ellipsoid() const override { return &e_; }

 private:
  Ellipsoid e_;
};

class BallShape final : public Shape {
 public:
  BallShape(int n, double r) : Shape(n, kEllipsoidal), r_(r), e_(Ellipsoid::ball(n, r)) {}
  double radial(const Vec&) const override { return r_; }
  bool convex() const override { return true; }
  bool symmetric() const override { return true; }
  double support(const Vec& xi) const override { return r_ * xi.norm(); }
  Vec support_point(const Vec& xi) const override { return r_ * xi / xi.norm(); }
  ShapePtr polar() const override { return std::make_shared<BallShape>(dim(), 1.0 / r_); }
  ShapePtr transformed(const Mat& t) const override {
    if (auto lambda = uniform_scale(t)) return std::make_shared<BallShape>(dim(), std::abs(*lambda) * r_);
    return std::make_shared<EllipsoidShape>(e_.transformed(t));
  }
  std::optional<double> volume() const override { return constants::omega(dim()) * std::pow(r_, dim()); }
  const Ellipsoid* ellipsoid() const override { return &e_; }

 private:
  double r_;
  Ellipsoid e_;
};

class PolytopeShape final : public Shape {
 public:
  PolytopeShape(ConvexPolytope p, BodyTraits traits) : Shape(p.dim(), traits), p_(std::move(p)) {}
  double radial(const Vec& theta) const override { return p_.radial(theta); }
  bool convex() const override { return true; }
  bool symmetric() const override { return p_.is_symmetric(); }
  double support(const Vec& xi) const override { return p_.support(xi); }
  Vec support_point(const Vec& xi) const override { return p_.support_point(xi); }
  ShapePtr polar() const override { return std::make_shared<PolytopeShape>(p_.polar(), BodyTraits{}); }
  ShapePtr transformed(const Mat& t) const override {
    return std::make_shared<PolytopeShape>(p_.transformed(t), traits());
  }
  std::optional<double> volume() const override { return p_.volume(); }
  const ConvexPolytope* polytope() const override { return &p_; }

 private:
  ConvexPolytope p_;
};

double dual_exponent(double p) {
  if (std::isinf(p)) return 1.0;
  if (p == 1.0) return std::numeric_limits<double>::infinity();
  return p / (p - 1.0);
}

double lp_norm(const Vec& x, double p) {
  if (std::isinf(p)) return x.cwiseAbs().maxCoeff();
  if (p == 1.0) return x.cwiseAbs().sum();
  if (p == 2.0) return x.norm();
  double s = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) s += std::pow(std::abs(x[i]), p);
  return std::pow(s, 1.0 / p);
}

BodyTraits lp_traits(double p) { return BodyTraits{p <= 2.0, std::isinf(p), p == 2.0}; }

class LpShape final : public Shape {
 public:
  LpShape(int n, double p, double scale) : Shape(n, lp_traits(p)), p_(p), scale_(scale) {
    if (std::isinf(p) && n <= 10) poly_.emplace(ConvexPolytope::cube(n, scale));
    if (p == 1.0 && n <= 10) poly_.emplace(ConvexPolytope::cross_polytope(n, scale));
  }
  double radial(const Vec& theta) const override { return scale_ / lp_norm(theta, p_); }
  bool convex() const override { return p_ >= 1.0; }
  bool symmetric() const override { return true; }
  double support(const Vec& xi) const override {
    require_convex();
    return scale_ * lp_norm(xi, dual_exponent(p_));
  }
  Vec support_point(const Vec& xi) const override {
    require_convex();
    const int n = dim();
    Vec x = Vec::Zero(n);
    if (std::isinf(p_)) {
      for (int i = 0; i < n; ++i) x[i] = xi[i] >= 0.0 ? scale_ : -scale_;
    } else if (p_ == 1.0) {
      Eigen::Index j = 0;
      xi.cwiseAbs().maxCoeff(&j);
      x[j] = xi[j] >= 0.0 ? scale_ : -scale_;
    } else {
      const double q = dual_exponent(p_);
      const double norm_q = lp_norm(xi, q);
      for (int i = 0; i < n; ++i) {
        const double a = std::pow(std::abs(xi[i]) / norm_q, q - 1.0);
        x[i] = scale_ * (xi[i] >= 0.0 ? a : -a);
      }
    }
    return x;
  }
  ShapePtr polar() const override {
    require_convex();
    return std::make_shared<LpShape>(dim(), dual_exponent(p_), 1.0 / scale_);
  }
  ShapePtr transformed(const Mat& t) const override {
    if (auto lambda = uniform_scale(t)) return std::make_shared<LpShape>(dim(), p_, std::abs(*lambda) * scale_);
    if (poly_) return std::make_shared<PolytopeShape>(poly_->transformed(t), traits());
    return nullptr;
  }
  std::optional<double> volume() const override {
    const int n = dim();
    if (std::isinf(p_)) return std::pow(2.0 * scale_, n);
    const double log_v = n * std::log(2.0 * scale_) + n * std::lgamma(1.0 + 1.0 / p_) - std::lgamma(1.0 + n / p_);
    return std::exp(log_v);
  }
  const ConvexPolytope* polytope() const override { return poly_ ? &*poly_ : nullptr; }

 private:
  void require_convex() const {
    if (p_ < 1.0) throw std::logic_error("l_p ball with p < 1 is not convex");
  }
  double p_;
  double scale_;
  std::optional<ConvexPolytope> poly_;
};

class RadialShape final : public Shape {
 public:
  RadialShape(int n, std::function<double(const Vec&)> f, bool symmetric)
      : Shape(n, BodyTraits{}), f_(std::move(f)), symmetric_(symmetric) {}
  double radial(const Vec& theta) const override { return f_(theta); }
  bool convex() const override { return false; }
  bool symmetric() const override { return symmetric_; }

 private:
  std::function<double(const Vec&)> f_;
  bool symmetric_;
};

class LinearImageShape final : public Shape {
 public:
  LinearImageShape(ShapePtr base, Mat t)
      : Shape(base->dim(), base->traits()), base_(std::move(base)), t_(std::move(t)) {
    Eigen::FullPivLU<Mat> lu(t_);
    if (!lu.isInvertible()) throw std::invalid_argument("linear_image: singular map");
    tinv_ = lu.inverse();
    abs_det_ = std::abs(lu.determinant());
  }
  double radial(const Vec& theta) const override {
    const Vec y = tinv_ * theta;
    const double len = y.norm();
    return base_->radial(y / len) / len;
  }
  bool convex() const override { return base_->convex(); }
  bool symmetric() const override { return base_->symmetric(); }
  double support(const Vec& xi) const override { return base_->support(t_.transpose() * xi); }
  Vec support_point(const Vec& xi) const override { return t_ * base_->support_point(t_.transpose() * xi); }
  ShapePtr polar() const override {
    return std::make_shared<LinearImageShape>(base_->polar(), Mat(tinv_.transpose()));
  }
  ShapePtr transformed(const Mat& t) const override { return std::make_shared<LinearImageShape>(base_, Mat(t * t_)); }
  std::optional<double> volume() const override {
    if (auto v = base_->volume()) return abs_det_ * *v;
    return std::nullopt;
  }

 private:
  ShapePtr base_;
  Mat t_;
  Mat tinv_;
  double abs_det_ = 1.0;
};

std::string format_number(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

}  // namespace

// ----------------------------------------------------------------- StarBody

StarBody::StarBody(std::shared_ptr<const detail::Shape> shape, std::string tag)
    : shape_(std::move(shape)), tag_(std::move(tag)) {}

StarBody StarBody::ball(int n, double radius) {
  if (n < 1) throw std::invalid_argument("ball: dimension must be positive");
  if (!(radius > 0.0)) throw std::invalid_argument("ball: radius must be positive");
  return StarBody(std::make_shared<BallShape>(n, radius), "ball(" + std::to_string(n) + "," + format_number(radius) + ")");
}

StarBody StarBody::lp_ball(int n, double p, double scale) {
  if (n < 1) throw std::invalid_argument("lp_ball: dimension must be positive");
  if (!(p > 0.0)) throw std::invalid_argument("lp_ball: p must be positive");
  if (!(scale > 0.0)) throw std::invalid_argument("lp_ball: scale must be positive");
  std::string tag = "lp_ball(" + std::to_string(n) + "," + (std::isinf(p) ? std::string("inf") : format_number(p)) + ")";
  if (scale != 1.0) tag = "scaled(" + tag + "," + format_number(scale) + ")";
  return StarBody(std::make_shared<LpShape>(n, p, scale), std::move(tag));
}

StarBody StarBody::cube(int n, double half_side) {
  if (!(half_side > 0.0)) throw std::invalid_argument("cube: half side must be positive");
  return lp_ball(n, std::numeric_limits<double>::infinity(), half_side)
      .with_tag("cube(" + std::to_string(n) + "," + format_number(half_side) + ")");
}

StarBody StarBody::from_polytope(ConvexPolytope p, std::string tag) {
  return StarBody(std::make_shared<PolytopeShape>(std::move(p), BodyTraits{}), std::move(tag));
}

StarBody StarBody::from_ellipsoid(Ellipsoid e, std::string tag) {
  return StarBody(std::make_shared<EllipsoidShape>(std::move(e)), std::move(tag));
}

StarBody StarBody::from_radial(int n, std::function<double(const Vec&)> radial, std::string tag, bool symmetric) {
  return StarBody(std::make_shared<RadialShape>(n, std::move(radial), symmetric), std::move(tag));
}

int StarBody::dim() const { return shape_->dim(); }

double StarBody::radial(const Vec& theta) const { return shape_->radial(theta); }

double StarBody::norm(const Vec& x) const {
  const double len = x.norm();
  if (len == 0.0) return 0.0;
  return len / shape_->radial(x / len);
}

bool StarBody::is_convex() const { return shape_->convex(); }
bool StarBody::is_symmetric() const { return shape_->symmetric(); }
BodyTraits StarBody::traits() const { return shape_->traits(); }

double StarBody::support(const Vec& xi) const {
  if (!shape_->convex()) throw std::logic_error("support: '" + tag_ + "' has no convex structure");
  return shape_->support(xi);
}

Vec StarBody::support_point(const Vec& xi) const {
  if (!shape_->convex()) throw std::logic_error("support_point: '" + tag_ + "' has no convex structure");
  return shape_->support_point(xi);
}

StarBody StarBody::polar() const {
  if (!shape_->convex()) throw std::logic_error("polar: '" + tag_ + "' has no convex structure");
  return StarBody(shape_->polar(), "polar(" + tag_ + ")");
}

const ConvexPolytope* StarBody::polytope() const { return shape_->polytope(); }
const Ellipsoid* StarBody::ellipsoid() const { return shape_->ellipsoid(); }
std::optional<double> StarBody::closed_form_volume() const { return shape_->volume(); }

std::optional<DistanceBound> StarBody::registered_dovr(int k) const {
  auto it = dovr_registry_.find(k);
  if (it == dovr_registry_.end()) return std::nullopt;
  return it->second;
}

StarBody StarBody::with_dovr_registry(std::map<int, DistanceBound> registry) const {
  StarBody out = *this;
  out.dovr_registry_ = std::move(registry);
  return out;
}

StarBody StarBody::with_tag(std::string tag) const {
  StarBody out = *this;
  out.tag_ = std::move(tag);
  return out;
}

StarBody StarBody::linear_image(const Mat& t) const {
  if (t.rows() != dim() || t.cols() != dim()) throw std::invalid_argument("linear_image: matrix size mismatch");
  Eigen::FullPivLU<Mat> lu(t);
  if (!lu.isInvertible()) throw std::invalid_argument("linear_image: singular map");
  ShapePtr image = shape_->transformed(t);
  if (!image) image = std::make_shared<LinearImageShape>(shape_, t);
  StarBody out(std::move(image), "linear_image(" + tag_ + ")");
  out.dovr_registry_ = dovr_registry_;
  return out;
}

double minkowski_norm(const StarBody& body, const Vec& x) { return body.norm(x); }

double support(const StarBody& body, const Direction& xi) { return body.support(xi.vec()); }

StarBody linear_image(const StarBody& body, const Mat& t) { return body.linear_image(t); }

StarBody scaled(const StarBody& body, double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("scaled: factor must be positive");
  return body.linear_image(lambda * Mat::Identity(body.dim(), body.dim()))
      .with_tag("scaled(" + body.tag() + "," + format_number(lambda) + ")");
}

StarBody with_volume(const StarBody& body, double target) {
  const auto v = body.closed_form_volume();
  if (!v) throw std::invalid_argument("with_volume: '" + body.tag() + "' has no closed-form volume");
  if (!(target > 0.0)) throw std::invalid_argument("with_volume: target must be positive");
  const double lambda = std::pow(target / *v, 1.0 / body.dim());
  return body.linear_image(lambda * Mat::Identity(body.dim(), body.dim()))
      .with_tag("volume(" + body.tag() + "," + format_number(target) + ")");
}

// ------------------------------------------------------------------ Density

Density Density::constant(double c) {
  if (!(c >= 0.0)) throw std::invalid_argument("Density::constant: value must be nonnegative");
  Density d;
  d.name = c == 1.0 ? "const" : "const(" + format_number(c) + ")";
  d.eval = [c](const Vec&) { return c; };
  d.sup_norm = c;
  d.constant_value = c;
  return d;
}

Density Density::gaussian() {
  Density d;
  d.name = "gaussian";
  d.eval = [](const Vec& x) { return std::exp(-x.squaredNorm()); };
  d.radial_profile = [](double t) { return std::exp(-t * t); };
  d.sup_norm = 1.0;
  return d;
}

Density Density::halfspace_indicator(const Vec& u) {
  if (!(u.norm() > 0.0)) throw std::invalid_argument("Density::halfspace_indicator: normal must be nonzero");
  Density d;
  std::ostringstream os;
  os << "halfspace(";
  for (Eigen::Index i = 0; i < u.size(); ++i) os << (i ? "," : "") << format_number(u[i]);
  os << ")";
  d.name = os.str();
  const Vec normal = u / u.norm();
  d.eval = [normal](const Vec& x) { return normal.dot(x) >= 0.0 ? 1.0 : 0.0; };
  d.sup_norm = 1.0;
  d.continuous = false;
  d.halfspace = normal;
  return d;
}

}  // namespace tomo
