#pragma once

#include <initializer_list>
#include <iosfwd>
#include <span>
#include <vector>

#include "plsurj/rational.hpp"

namespace plsurj {

/// Exact point (or vector) of R^n.
class Point {
 public:
  Point() = default;
  explicit Point(std::size_t dim) : c_(dim) {}
  Point(std::initializer_list<Rational> coords) : c_(coords) {}
  explicit Point(std::vector<Rational> coords) : c_(std::move(coords)) {}

  std::size_t dim() const { return c_.size(); }
  const Rational& operator[](std::size_t i) const { return c_[i]; }
  Rational& operator[](std::size_t i) { return c_[i]; }
  const std::vector<Rational>& coords() const { return c_; }

  Point& operator+=(const Point& o);
  Point& operator-=(const Point& o);
  Point& operator*=(const Rational& s);

  friend Point operator+(Point a, const Point& b) { return a += b; }
  friend Point operator-(Point a, const Point& b) { return a -= b; }
  friend Point operator*(Point a, const Rational& s) { return a *= s; }
  friend Point operator*(const Rational& s, Point a) { return a *= s; }

  friend bool operator==(const Point& a, const Point& b) = default;
  /// Lexicographic order on coordinates.
  friend bool operator<(const Point& a, const Point& b) { return a.c_ < b.c_; }

 private:
  std::vector<Rational> c_;
};

std::ostream& operator<<(std::ostream& os, const Point& p);

/// Throws DimensionMismatch unless the two dimensions agree.
void require_same_dim(const Point& a, const Point& b);

Rational dot(const Point& a, const Point& b);
Rational squared_norm(const Point& a);
Rational squared_distance(const Point& a, const Point& b);
Point barycentre(std::span<const Point> points);
/// Sum of weights[i] * points[i].
Point combination(std::span<const Point> points, std::span<const Rational> weights);

/// value(x) = gradient . x + offset
struct AffineForm {
  std::vector<Rational> gradient;
  Rational offset;

  Rational operator()(const Point& x) const;
};

}  // namespace plsurj
