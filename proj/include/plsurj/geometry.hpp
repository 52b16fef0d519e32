#pragma once

#include <optional>
#include <span>
#include <vector>

#include "plsurj/linalg.hpp"
#include "plsurj/point.hpp"

namespace plsurj {

/// Largest simplex dimension accepted by face-enumerating routines.
inline constexpr std::size_t kMaxEnumeratedDim = 8;

/// True iff the difference vectors p_i - p_0 have full rank.
bool affine_independent(std::span<const Point> points);

/// Precomputed affine frame of a nondegenerate simplex: vertices v_0..v_d and
/// the pseudo-inverse rows of the edge vectors e_i = v_i - v_0.
class SimplexFrame {
 public:
  /// Throws DegenerateSimplex or DimensionMismatch.
  explicit SimplexFrame(std::vector<Point> vertices);

  std::size_t dim() const { return verts_.size() - 1; }
  std::size_t ambient_dim() const { return verts_[0].dim(); }
  const std::vector<Point>& vertices() const { return verts_; }

  /// Barycentric coordinates of the orthogonal projection of x onto the hull.
  std::vector<Rational> projected_coordinates(const Point& x) const;
  /// Affine coordinates of x, or nullopt when x is off the affine hull.
  std::optional<std::vector<Rational>> affine_coordinates(const Point& x) const;
  /// Barycentric coordinates of x, or nullopt when x is outside the simplex.
  std::optional<std::vector<Rational>> barycentric(const Point& x) const;
  bool contains(const Point& x) const { return barycentric(x).has_value(); }

  Point point_at(std::span<const Rational> weights) const;
  /// Barycentric coordinate functions lambda_i extended to R^n by
  /// orthogonal projection onto the affine hull.
  std::vector<AffineForm> coordinate_forms() const;

 private:
  std::vector<Point> verts_;
  Matrix edges_;     // (d) x n, row i = v_{i+1} - v_0
  Matrix coord_rows_;  // d x n, G^{-1} E for the Gram matrix G = E E^T
};

/// Barycentric coordinates of x in conv(vertices), or nullopt when outside.
std::optional<std::vector<Rational>> barycentric_coordinates(const Point& x,
                                                             std::span<const Point> vertices);

/// min over y in conv(vertices) of |x - y|^2.
Rational squared_distance_point_simplex(const Point& x, std::span<const Point> vertices);

/// min over y in conv(a), z in conv(b) of |y - z|^2.
Rational squared_distance_simplex_simplex(std::span<const Point> a, std::span<const Point> b);

/// Largest squared distance between two of the points.
Rational squared_diameter(std::span<const Point> points);

/// lambda > 0 with z + lambda (x - z) on the boundary of {h_i >= 0}.
Rational ray_exit_factor(const Point& z, const Point& x, std::span<const AffineForm> facet_forms);

}  // namespace plsurj
