#include "plsurj/geometry.hpp"

#include <ostream>

#include "plsurj/error.hpp"

namespace plsurj {

Point& Point::operator+=(const Point& o) {
  require_same_dim(*this, o);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

Point& Point::operator-=(const Point& o) {
  require_same_dim(*this, o);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

Point& Point::operator*=(const Rational& s) {
  for (auto& v : c_) v *= s;
  return *this;
}

std::ostream& operator<<(std::ostream& os, const Point& p) {
  os << '(';
  for (std::size_t i = 0; i < p.dim(); ++i) os << (i ? ", " : "") << p[i];
  return os << ')';
}

void require_same_dim(const Point& a, const Point& b) {
  if (a.dim() != b.dim())
    throw Error(ErrorCode::DimensionMismatch,
                "points of dimension " + std::to_string(a.dim()) + " and " + std::to_string(b.dim()));
}

Rational dot(const Point& a, const Point& b) {
  require_same_dim(a, b);
  Rational s;
  for (std::size_t i = 0; i < a.dim(); ++i) s += a[i] * b[i];
  return s;
}

Rational squared_norm(const Point& a) { return dot(a, a); }

Rational squared_distance(const Point& a, const Point& b) { return squared_norm(a - b); }

Point barycentre(std::span<const Point> points) {
  if (points.empty()) throw Error(ErrorCode::InvalidInput, "barycentre of no points");
  Point s(points[0].dim());
  for (const auto& p : points) s += p;
  return s * Rational(1, static_cast<long long>(points.size()));
}

Point combination(std::span<const Point> points, std::span<const Rational> weights) {
  if (points.empty() || points.size() != weights.size())
    throw Error(ErrorCode::DimensionMismatch, "combination needs one weight per point");
  Point s(points[0].dim());
  for (std::size_t i = 0; i < points.size(); ++i)
    if (!weights[i].is_zero()) s += points[i] * weights[i];
  return s;
}

Rational AffineForm::operator()(const Point& x) const {
  if (x.dim() != gradient.size()) throw Error(ErrorCode::DimensionMismatch, "affine form argument");
  Rational v = offset;
  for (std::size_t i = 0; i < gradient.size(); ++i)
    if (!gradient[i].is_zero()) v += gradient[i] * x[i];
  return v;
}

bool affine_independent(std::span<const Point> points) {
  if (points.empty()) return false;
  Matrix diffs;
  for (std::size_t i = 1; i < points.size(); ++i) {
    require_same_dim(points[0], points[i]);
    diffs.push_back((points[i] - points[0]).coords());
  }
  return rank(diffs) == diffs.size();
}

SimplexFrame::SimplexFrame(std::vector<Point> vertices) : verts_(std::move(vertices)) {
  if (verts_.empty()) throw Error(ErrorCode::DegenerateSimplex, "simplex without vertices");
  const std::size_t d = verts_.size() - 1;
  for (const auto& v : verts_) require_same_dim(verts_[0], v);
  for (std::size_t i = 1; i <= d; ++i) edges_.push_back((verts_[i] - verts_[0]).coords());
  if (d == 0) return;
  const Matrix gram = multiply(edges_, transpose(edges_));
  auto inv = inverse(gram);
  if (!inv) throw Error(ErrorCode::DegenerateSimplex, "affinely dependent vertices");
  coord_rows_ = multiply(*inv, edges_);
}

std::vector<Rational> SimplexFrame::projected_coordinates(const Point& x) const {
  require_same_dim(verts_[0], x);
  std::vector<Rational> lambda(verts_.size());
  if (dim() == 0) {
    lambda[0] = 1;
    return lambda;
  }
  const auto mu = multiply(coord_rows_, (x - verts_[0]).coords());
  Rational rest = 1;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    lambda[i + 1] = mu[i];
    rest -= mu[i];
  }
  lambda[0] = rest;
  return lambda;
}

Point SimplexFrame::point_at(std::span<const Rational> weights) const {
  return combination(verts_, weights);
}

std::optional<std::vector<Rational>> SimplexFrame::affine_coordinates(const Point& x) const {
  auto lambda = projected_coordinates(x);
  if (point_at(lambda) != x) return std::nullopt;
  return lambda;
}

std::optional<std::vector<Rational>> SimplexFrame::barycentric(const Point& x) const {
  auto lambda = projected_coordinates(x);
  for (const auto& l : lambda)
    if (l.sign() < 0) return std::nullopt;
  if (point_at(lambda) != x) return std::nullopt;
  return lambda;
}

std::vector<AffineForm> SimplexFrame::coordinate_forms() const {
  const std::size_t n = ambient_dim();
  std::vector<AffineForm> forms(verts_.size());
  forms[0].gradient.assign(n, Rational(0));
  forms[0].offset = 1;
  for (std::size_t i = 0; i < dim(); ++i) {
    AffineForm& f = forms[i + 1];
    f.gradient = coord_rows_[i];
    f.offset = 0;
    for (std::size_t j = 0; j < n; ++j) f.offset -= f.gradient[j] * verts_[0][j];
    for (std::size_t j = 0; j < n; ++j) forms[0].gradient[j] -= f.gradient[j];
    forms[0].offset -= f.offset;
  }
  return forms;
}

std::optional<std::vector<Rational>> barycentric_coordinates(const Point& x,
                                                             std::span<const Point> vertices) {
  SimplexFrame frame(std::vector<Point>(vertices.begin(), vertices.end()));
  return frame.barycentric(x);
}

namespace {

void check_enumerable(std::span<const Point> vertices) {
  if (vertices.empty()) throw Error(ErrorCode::DegenerateSimplex, "simplex without vertices");
  if (vertices.size() - 1 > kMaxEnumeratedDim)
    throw Error(ErrorCode::UnsupportedDimension,
                "simplex dimension " + std::to_string(vertices.size() - 1) + " exceeds " +
                    std::to_string(kMaxEnumeratedDim));
  if (!affine_independent(vertices)) throw Error(ErrorCode::DegenerateSimplex, "affinely dependent vertices");
}

std::vector<Point> subset(std::span<const Point> pts, unsigned mask) {
  std::vector<Point> out;
  for (std::size_t i = 0; i < pts.size(); ++i)
    if (mask & (1u << i)) out.push_back(pts[i]);
  return out;
}

}  // namespace

Rational squared_distance_point_simplex(const Point& x, std::span<const Point> vertices) {
  check_enumerable(vertices);
  require_same_dim(x, vertices[0]);
  std::optional<Rational> best;
  const unsigned faces = 1u << vertices.size();
  for (unsigned mask = 1; mask < faces; ++mask) {
    SimplexFrame face(subset(vertices, mask));
    auto lambda = face.projected_coordinates(x);
    bool inside = true;
    for (const auto& l : lambda) inside = inside && l.sign() >= 0;
    if (!inside) continue;
    Rational d = squared_distance(x, face.point_at(lambda));
    if (!best || d < *best) best = d;
  }
  return *best;
}

Rational squared_distance_simplex_simplex(std::span<const Point> a, std::span<const Point> b) {
  check_enumerable(a);
  check_enumerable(b);
  require_same_dim(a[0], b[0]);
  std::optional<Rational> best;
  const unsigned fa = 1u << a.size();
  const unsigned fb = 1u << b.size();
  for (unsigned ma = 1; ma < fa; ++ma) {
    const auto pa = subset(a, ma);
    for (unsigned mb = 1; mb < fb; ++mb) {
      const auto pb = subset(b, mb);
      // y - z = c + M w with w = (s, t) over the edge vectors of both faces.
      const Point c = pa[0] - pb[0];
      Matrix cols;
      for (std::size_t i = 1; i < pa.size(); ++i) cols.push_back((pa[i] - pa[0]).coords());
      for (std::size_t j = 1; j < pb.size(); ++j) cols.push_back((pb[0] - pb[j]).coords());
      std::vector<Rational> w;
      if (!cols.empty()) {
        const Matrix normal = multiply(cols, transpose(cols));
        auto rhs = multiply(cols, c.coords());
        for (auto& v : rhs) v = -v;
        auto sol = solve(normal, rhs);
        if (!sol) continue;
        w = std::move(*sol);
      }
      Rational sa = 0;
      Rational sb = 0;
      bool feasible = true;
      for (std::size_t i = 0; i < w.size(); ++i) {
        feasible = feasible && w[i].sign() >= 0;
        (i + 1 < pa.size() ? sa : sb) += w[i];
      }
      if (!feasible || sa > Rational(1) || sb > Rational(1)) continue;
      Point diff = c;
      for (std::size_t i = 0; i < w.size(); ++i) diff += Point(cols[i]) * w[i];
      Rational d = squared_norm(diff);
      if (!best || d < *best) best = d;
    }
  }
  return *best;
}

Rational squared_diameter(std::span<const Point> points) {
  Rational best;
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j) best = max(best, squared_distance(points[i], points[j]));
  return best;
}

Rational ray_exit_factor(const Point& z, const Point& x, std::span<const AffineForm> facet_forms) {
  std::optional<Rational> inv_lambda;
  for (const auto& h : facet_forms) {
    const Rational hz = h(z);
    if (hz.sign() <= 0) throw Error(ErrorCode::CenterOnBoundary, "centre has h_i(z) <= 0");
    const Rational ratio = (hz - h(x)) / hz;
    if (!inv_lambda || ratio > *inv_lambda) inv_lambda = ratio;
  }
  if (!inv_lambda || inv_lambda->sign() <= 0)
    throw Error(ErrorCode::RayDoesNotExit, "ray from the centre never reaches a facet");
  return Rational(1) / *inv_lambda;
}

}  // namespace plsurj
