#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "plsurj/complex.hpp"

namespace plsurj {

/// Piecewise-affine map given by vertex images, extended barycentrically.
class PlMap {
 public:
  /// Throws OutsideDomain when a vertex image is not in |codomain|.
  PlMap(ComplexPtr domain, ComplexPtr codomain, std::vector<Point> images);

  const ComplexPtr& domain() const { return domain_; }
  const ComplexPtr& codomain() const { return codomain_; }
  const Point& image(VertexIndex v) const { return images_[v]; }
  const std::vector<Point>& images() const { return images_; }

  /// Throws OutsideDomain.
  Point evaluate(const Point& x) const;
  /// Images of `pts` when all of them lie in one closed maximal simplex of
  /// the domain, so the map is affine on their hull.
  std::optional<std::vector<Point>> affine_images(std::span<const Point> pts) const;

  /// Max over maximal simplices of tr(G^{-1} W W^T), a squared Frobenius
  /// bound on the affine part (G: Gram matrix of edges, W: image edges).
  const Rational& squared_lipschitz() const { return squared_lipschitz_; }

 private:
  ComplexPtr domain_;
  ComplexPtr codomain_;
  std::vector<Point> images_;
  Rational squared_lipschitz_;
};

/// Squared Frobenius bound of the affine map sending `from` to `to`.
Rational squared_affine_lipschitz(std::span<const Point> from, std::span<const Point> to);

/// Strict total order on the vertices of one complex.
class VertexOrder {
 public:
  /// Lexicographic on (coordinates, id).
  static VertexOrder lexicographic(const Complex& l);
  /// Order given by a full list of vertex ids, smallest first.
  static VertexOrder from_ids(const Complex& l, const std::vector<std::string>& ids);

  bool less(VertexIndex a, VertexIndex b) const { return rank_[a] < rank_[b]; }
  std::size_t rank(VertexIndex v) const { return rank_[v]; }
  std::vector<VertexIndex> sorted(std::vector<VertexIndex> vs) const;

 private:
  std::vector<std::size_t> rank_;
};

/// A PL map whose vertex images are vertices of the codomain and whose
/// simplices map onto simplices.
class SimplicialMap {
 public:
  /// Throws NotSimplicial naming the first offending simplex.
  static SimplicialMap from_targets(ComplexPtr domain, ComplexPtr codomain, std::vector<VertexIndex> targets);

  const PlMap& pl() const { return *pl_; }
  std::shared_ptr<const PlMap> pl_ptr() const { return pl_; }
  const ComplexPtr& domain() const { return pl_->domain(); }
  const ComplexPtr& codomain() const { return pl_->codomain(); }
  VertexIndex target(VertexIndex v) const { return targets_[v]; }
  const std::vector<VertexIndex>& targets() const { return targets_; }
  Point evaluate(const Point& x) const { return pl_->evaluate(x); }

  /// Codomain simplex spanned by the images of the vertices of s.
  SimplexIndex image_of_simplex(SimplexIndex s) const;

 private:
  std::shared_ptr<const PlMap> pl_;
  std::vector<VertexIndex> targets_;
};

/// Upgrades m or throws NotSimplicial.
SimplicialMap check_simplicial(const PlMap& m);

struct SurjectivityReport {
  bool surjective = false;
  /// (codomain maximal simplex, a domain simplex mapping onto it)
  std::vector<std::pair<SimplexIndex, SimplexIndex>> witnesses;
  std::vector<SimplexIndex> uncovered;
};

SurjectivityReport is_surjective(const SimplicialMap& h);

/// A continuous map presented as an exact evaluator with a squared
/// Lipschitz certificate. Chains of PL maps (applied left to right) also
/// expose their affine pieces.
class MapOracle {
 public:
  using Evaluator = std::function<Point(const Point&)>;

  /// Uses the product of the members' Lipschitz bounds unless one is given.
  static MapOracle from_chain(std::vector<std::shared_ptr<const PlMap>> chain,
                              std::optional<Rational> squared_lipschitz = std::nullopt);
  static MapOracle from_pl(const PlMap& m);
  static MapOracle from_simplicial(const SimplicialMap& h);
  static MapOracle from_function(ComplexPtr domain, ComplexPtr codomain, Evaluator eval,
                                 Rational squared_lipschitz);

  const ComplexPtr& domain() const { return domain_; }
  const ComplexPtr& codomain() const { return codomain_; }
  /// Same map viewed into another triangulation of the same polyhedron.
  MapOracle with_codomain(ComplexPtr codomain) const;
  const Rational& squared_lipschitz() const { return squared_lipschitz_; }
  bool lipschitz_supplied() const { return supplied_; }
  const std::vector<std::shared_ptr<const PlMap>>& chain() const { return chain_; }

  /// Throws OracleDomainError for inputs outside |domain| or values outside |codomain|.
  Point evaluate(const Point& x) const;
  /// Images of `pts` when the oracle is certified affine on their hull.
  std::optional<std::vector<Point>> affine_images(std::span<const Point> pts) const;

 private:
  ComplexPtr domain_;
  ComplexPtr codomain_;
  Evaluator eval_;
  std::vector<std::shared_ptr<const PlMap>> chain_;
  Rational squared_lipschitz_;
  bool supplied_ = false;
};

/// Checks |f(x) - f(y)|^2 <= L^2 |x - y|^2 on seeded pairs drawn inside
/// maximal simplices; throws LipschitzViolation.
void spot_check_lipschitz(const MapOracle& f, std::size_t pairs_per_simplex, std::uint64_t seed);

}  // namespace plsurj
