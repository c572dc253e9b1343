#include "tomo/catalog.hpp"

#include "tomo/rng.hpp"

#include <cctype>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace tomo {

namespace {

struct Node {
  enum class Kind { number, call, list } kind = Kind::number;
  std::string name;
  double number = 0.0;
  std::vector<Node> children;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Node parse() {
    Node n = value();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return n;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("body descriptor '" + std::string(text_) + "': " + what + " at offset " +
                                std::to_string(pos_));
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  std::vector<Node> items(char close) {
    std::vector<Node> out;
    if (accept(close)) return out;
    do {
      out.push_back(value());
    } while (accept(','));
    expect(close);
    return out;
  }

  Node value() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end");
    Node n;
    if (accept('[')) {
      n.kind = Node::Kind::list;
      n.children = items(']');
      return n;
    }
    const char c = text_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
      n.name = std::string(text_.substr(start, pos_ - start));
      if (n.name == "inf") {
        n.number = std::numeric_limits<double>::infinity();
        return n;
      }
      n.kind = Node::Kind::call;
      expect('(');
      n.children = items(')');
      return n;
    }
    const std::string rest(text_.substr(pos_));
    std::size_t used = 0;
    try {
      n.number = std::stod(rest, &used);
    } catch (const std::exception&) {
      fail("expected a number");
    }
    pos_ += used;
    return n;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

std::string render(const Node& n) {
  switch (n.kind) {
    case Node::Kind::number: {
      if (std::isinf(n.number)) return "inf";
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", n.number);
      return buf;
    }
    case Node::Kind::list:
    case Node::Kind::call: {
      std::string s = n.kind == Node::Kind::call ? n.name + "(" : "[";
      for (std::size_t i = 0; i < n.children.size(); ++i) s += (i ? "," : "") + render(n.children[i]);
      return s + (n.kind == Node::Kind::call ? ")" : "]");
    }
  }
  return {};
}

double number_arg(const Node& call, std::size_t i, std::optional<double> fallback = std::nullopt) {
  if (i >= call.children.size()) {
    if (fallback) return *fallback;
    throw std::invalid_argument(call.name + ": missing argument " + std::to_string(i + 1));
  }
  const Node& a = call.children[i];
  if (a.kind != Node::Kind::number) throw std::invalid_argument(call.name + ": argument " + std::to_string(i + 1) + " must be a number");
  return a.number;
}

int dim_arg(const Node& call, std::size_t i, int max_dim) {
  const double v = number_arg(call, i);
  if (v != std::floor(v) || v < 2 || v > max_dim)
    throw std::invalid_argument(call.name + ": dimension must be an integer in [2, " + std::to_string(max_dim) + "]");
  return static_cast<int>(v);
}

void arity(const Node& call, std::size_t lo, std::size_t hi) {
  if (call.children.size() < lo || call.children.size() > hi)
    throw std::invalid_argument(call.name + ": wrong number of arguments");
}

StarBody build(const Node& node, const LoewnerOptions& opts);

StarBody build_ellipsoid(const Node& call) {
  if (call.children.empty()) throw std::invalid_argument("ellipsoid: missing shape");
  Mat a;
  if (call.children.size() == 1 && call.children[0].kind == Node::Kind::list) {
    const auto& rows = call.children[0].children;
    const auto n = static_cast<Eigen::Index>(rows.size());
    a.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const Node& row = rows[static_cast<std::size_t>(i)];
      if (row.kind != Node::Kind::list || static_cast<Eigen::Index>(row.children.size()) != n)
        throw std::invalid_argument("ellipsoid: shape must be a square matrix");
      for (Eigen::Index j = 0; j < n; ++j) {
        const Node& v = row.children[static_cast<std::size_t>(j)];
        if (v.kind != Node::Kind::number) throw std::invalid_argument("ellipsoid: matrix entries must be numbers");
        a(i, j) = v.number;
      }
    }
  } else {
    const auto n = static_cast<Eigen::Index>(call.children.size());
    a = Mat::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) a(i, i) = number_arg(call, static_cast<std::size_t>(i));
  }
  if (a.rows() < 2 || a.rows() > 10) throw std::invalid_argument("ellipsoid: dimension must be in [2, 10]");
  return StarBody::from_ellipsoid(Ellipsoid(a), "ellipsoid");
}

StarBody build(const Node& node, const LoewnerOptions& opts) {
  if (node.kind != Node::Kind::call) throw std::invalid_argument("expected a body, got '" + render(node) + "'");
  const std::string& name = node.name;
  if (name == "ball") {
    arity(node, 1, 2);
    const double r = number_arg(node, 1, 1.0);
    if (!(r > 0.0)) throw std::invalid_argument("ball: radius must be positive");
    return StarBody::ball(dim_arg(node, 0, 10), r);
  }
  if (name == "cube") {
    arity(node, 1, 2);
    const double a = number_arg(node, 1, 1.0);
    if (!(a > 0.0)) throw std::invalid_argument("cube: half side must be positive");
    return StarBody::cube(dim_arg(node, 0, 10), a);
  }
  if (name == "lp_ball") {
    arity(node, 2, 2);
    const double p = number_arg(node, 1);
    if (!(p > 0.0)) throw std::invalid_argument("lp_ball: p must be positive");
    return StarBody::lp_ball(dim_arg(node, 0, 10), p);
  }
  if (name == "simplex") {
    arity(node, 1, 1);
    return regular_simplex(dim_arg(node, 0, 6));
  }
  if (name == "ellipsoid") return build_ellipsoid(node);
  if (name == "random_polytope") {
    arity(node, 3, 3);
    const int n = dim_arg(node, 0, 6);
    const double m = number_arg(node, 1);
    const double seed = number_arg(node, 2);
    if (m != std::floor(m) || m < n || m > 200) throw std::invalid_argument("random_polytope: point count must be an integer in [n, 200]");
    if (seed != std::floor(seed) || seed < 0) throw std::invalid_argument("random_polytope: seed must be a nonnegative integer");
    return random_polytope(n, static_cast<int>(m), static_cast<std::uint64_t>(seed));
  }
  if (name == "normalized") {
    arity(node, 1, 1);
    return with_volume(build(node.children[0], opts), 1.0);
  }
  if (name == "scaled") {
    arity(node, 2, 2);
    const double lambda = number_arg(node, 1);
    if (!(lambda > 0.0)) throw std::invalid_argument("scaled: factor must be positive");
    return scaled(build(node.children[0], opts), lambda);
  }
  throw std::invalid_argument("unknown body '" + name + "'");
}

}  // namespace

StarBody regular_simplex(int n) {
  if (n < 2 || n > 6) throw std::invalid_argument("simplex: dimension must be in [2, 6]");
  // e_1..e_{n+1} minus their centroid, written in an orthonormal basis of
  // the hyperplane sum x_i = 0.
  const Mat basis = Subspace::complement(Mat::Ones(n + 1, 1)).basis();
  std::vector<Vec> vertices;
  for (int i = 0; i <= n; ++i) {
    Vec e = Vec::Constant(n + 1, -1.0 / (n + 1));
    e[i] += 1.0;
    const Vec v = basis.transpose() * e;
    vertices.push_back(v / v.norm());
  }
  return StarBody::from_polytope(ConvexPolytope::from_vertices(vertices), "simplex(" + std::to_string(n) + ")");
}

StarBody random_polytope(int n, int m, std::uint64_t seed) {
  if (n < 2 || n > 6) throw std::invalid_argument("random_polytope: dimension must be in [2, 6]");
  Rng rng(seed, hash_label("random_polytope"));
  std::vector<Vec> points;
  for (int i = 0; i < m; ++i) {
    const Vec v = rng.sphere(n);
    points.push_back(v);
    points.push_back(-v);
  }
  return StarBody::from_polytope(ConvexPolytope::from_vertices(points),
                                 "random_polytope(" + std::to_string(n) + "," + std::to_string(m) + "," +
                                     std::to_string(seed) + ")");
}

StarBody make_catalog_body(std::string_view descriptor, const LoewnerOptions& opts) {
  const Node root = Parser(descriptor).parse();
  StarBody body = build(root, opts).with_tag(render(root));
  const int n = body.dim();
  std::map<int, DistanceBound> registry;
  if (body.traits().intersection_body) {
    for (int k = 1; k < n; ++k)
      registry[k] = DistanceBound{BoundKind::exact_one, 1.0,
                                  "intersection body (ellipsoid or unit ball of a subspace of L_p, 0<p<=2); "
                                  "I_n is contained in BP_k^n"};
  } else if (body.is_convex() && body.is_symmetric()) {
    const DistanceBound bound = ovr(body, opts);
    for (int k = 1; k < n; ++k) registry[k] = bound;
  }
  return body.with_dovr_registry(std::move(registry));
}

std::vector<std::string> catalog_help() {
  return {
      "ball(n[, r])                 Euclidean ball of radius r (default 1)",
      "cube(n[, a])                 [-a, a]^n (default a = 1)",
      "lp_ball(n, p)                unit ball of l_p^n, p in (0, inf]; p < 1 is a non-convex star body",
      "simplex(n)                   regular simplex, circumradius 1, centroid at the origin (n <= 6)",
      "ellipsoid(a_1, ..., a_n)     {x : sum a_i x_i^2 <= 1}",
      "ellipsoid([[..], ..])        {x : x^T A x <= 1} for symmetric positive definite A",
      "random_polytope(n, m, seed)  hull of m uniform sphere points and their negatives (n <= 6)",
      "normalized(body)             body scaled to volume 1 (needs a closed-form volume)",
      "scaled(body, lambda)         lambda * body",
  };
}

}  // namespace tomo
