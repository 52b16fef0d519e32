#pragma once

#include <map>
#include <optional>
#include <vector>

#include "plsurj/complex.hpp"

namespace plsurj {

/// One affine form per facet of the simplex, positive inside and zero on the
/// facet's hull: the barycentric coordinates extended by orthogonal
/// projection onto the affine hull. Throws DegenerateSimplex.
std::vector<AffineForm> facet_functionals(std::span<const Point> simplex);

/// Point where the ray from z through x leaves the simplex. Identity on the
/// boundary. Throws CenterOnBoundary or RayDoesNotExit.
Point radial_retraction(std::span<const Point> simplex, const Point& z, const Point& x);

/// b + r (x - b) for the barycentre b.
Point homothety(std::span<const Point> simplex, const Rational& r, const Point& x);

/// Inverse homothety on the shrunken copy, radial retraction from the
/// barycentre elsewhere. Throws OutsideSimplex.
Point pi_tau(std::span<const Point> simplex, const Rational& r, const Point& x);

/// Squared distance from the barycentre to the boundary.
Rational squared_inradius_at_barycentre(std::span<const Point> simplex);

/// Composition of pi_tau over the maximal simplices of dimension >= 1 of L,
/// each acting on its own simplex and as the identity elsewhere.
class SqueezeMap {
 public:
  /// Same ratio for every maximal simplex. Throws EpsilonTooLarge unless 0 < r < 1.
  SqueezeMap(ComplexPtr l, const Rational& r);
  /// Ratio per maximal simplex; every one of dimension >= 1 must be present.
  SqueezeMap(ComplexPtr l, std::map<SimplexIndex, Rational> ratios);

  const ComplexPtr& complex() const { return l_; }
  /// Maximal simplices of dimension >= 1, ascending.
  const std::vector<SimplexIndex>& factors() const { return factors_; }
  const Rational& ratio(SimplexIndex tau) const { return ratios_.at(tau); }

  /// Throws OutsideDomain.
  Point evaluate(const Point& x) const;
  /// The single factor for tau.
  Point apply_factor(SimplexIndex tau, const Point& x) const;
  /// Applies the factors one after another in the given order.
  Point evaluate_in_order(const Point& x, const std::vector<SimplexIndex>& order) const;

 private:
  void check();

  ComplexPtr l_;
  std::vector<SimplexIndex> factors_;
  std::map<SimplexIndex, Rational> ratios_;
};

struct SimplexBudget {
  SimplexIndex tau;
  Rational squared_delta;
  Rational squared_diameter;
  /// (delta^2 / (2 diam))^2
  Rational squared_eps_star;
  /// Squared distance from tau to the boundary of the star of its vertices;
  /// nullopt when that boundary is empty.
  std::optional<Rational> squared_eps1;
};

struct EpsilonBudget {
  std::vector<SimplexBudget> simplices;
  Rational squared_eps1;
  Rational squared_eps3;
  Rational squared_mesh_cap;
  Rational squared_delta_min;
  /// min(eps1^2, eps3^2, mesh cap)
  Rational recommended;
  /// Name of the constant attaining the minimum: "eps1", "eps3" or "mesh".
  std::string binding;
};

/// Throws ZeroDimensionalL when L has no maximal simplex of dimension >= 1.
EpsilonBudget epsilon_budget(const Complex& l);

/// Largest dyadic (or exact) r with r^2 delta^2 <= squared_eps, for each factor.
std::map<SimplexIndex, Rational> squeeze_ratios(const Complex& l, const EpsilonBudget& budget);

/// Retraction of U = {x in |L| : dist(x, tau) < eps1} onto tau by dropping the
/// barycentric weights of vertices outside tau and renormalizing.
class StarRetraction {
 public:
  StarRetraction(ComplexPtr l, SimplexIndex tau, Rational squared_eps1);

  /// Throws OutsideU.
  Point evaluate(const Point& x) const;
  /// Same without the distance test; nullopt outside the open star.
  std::optional<Point> renormalize(const Point& x) const;

 private:
  ComplexPtr l_;
  SimplexIndex tau_;
  Rational squared_eps1_;
};

}  // namespace plsurj
