#pragma once

#include <optional>
#include <vector>

#include "plsurj/pl_map.hpp"
#include "plsurj/subdivision.hpp"
#include "plsurj/sup_distance.hpp"

namespace plsurj {

/// One certified instance of f(st(v, K)) inside st(w, L).
struct StarEntry {
  VertexIndex vertex;
  VertexIndex target;
  /// Positive slack of the certificate (squared units); nullopt when every
  /// simplex of L contains the target, so nothing can leave its star.
  std::optional<Rational> margin;
  /// True when settled exactly on the affine pieces of f rather than
  /// through the Lipschitz bound.
  bool exact = false;
};

struct StarCertificate {
  std::vector<StarEntry> entries;  // one per domain vertex, by vertex index
};

/// Tries to certify f(st(v, k)) within st(w, l). Exact when f is affine on
/// every maximal coface of v; otherwise needs f(v) in st(w) and
/// Lambda^2 diam^2(closed star of v) below the squared distance from f(v)
/// to the simplices of l missing w. Throws OracleDomainError.
std::optional<StarEntry> star_condition(const MapOracle& f, const Complex& k, VertexIndex v, const Complex& l,
                                        VertexIndex w);

/// Squared distance from p to the union of the simplices of l that miss w;
/// nullopt when there are none.
std::optional<Rational> squared_distance_to_antistar(const Complex& l, VertexIndex w, const Point& p);

struct Approximation {
  int kappa = 0;
  ComplexPtr domain;  // sd^kappa(K)
  SimplicialMap h;
  StarCertificate certificate;
};

/// Smallest kappa in [kappa_floor, kappa_max] at which every vertex of
/// sd^kappa(K) certifies the star condition. Vertex candidates are the
/// carrier vertices of f(v), heaviest first, ties by `order`.
/// Throws BudgetExceeded.
Approximation simplicial_approximation(const MapOracle& f, const ComplexPtr& k, const ComplexPtr& l, int kappa_max,
                                       const VertexOrder& order, int kappa_floor = 0,
                                       std::size_t budget = kDefaultSimplexBudget);

/// Least ell with squared_mesh(sd^ell(L)) < squared_threshold, with that complex.
std::pair<int, ComplexPtr> fine_codomain(const ComplexPtr& l, const Rational& squared_threshold,
                                         std::size_t budget = kDefaultSimplexBudget, int max_levels = 32);

/// h*(v) = the order-least h-image among the vertices of v's minimal carrier in K.
/// Throws NotARefinement.
SimplicialMap descend_map(const SimplicialMap& h, const ComplexPtr& k_star, const VertexOrder& order);

struct Witness {
  SimplexIndex tau;    // maximal simplex of L
  SimplexIndex sigma;  // maximal simplex of K
  Point x;             // in the open cell of sigma, f(x) in the open cell of tau
};

/// For each maximal simplex of L, the highest-dimensional maximal simplex of
/// K (least index on ties) having a sampled barycentre of depth <= `depth`
/// mapped into the open simplex. Throws WitnessNotFound.
std::vector<Witness> find_witnesses(const MapOracle& f, const Complex& k, const Complex& l, unsigned depth);

/// Pairwise distinct top cells of sd^kappa(K), cell k containing witness k
/// and lying in its sigma; nullopt when no such matching exists.
std::optional<std::vector<SimplexIndex>> match_witness_cells(const Complex& k_kappa,
                                                             const std::vector<Witness>& ws);

/// Level at which the balls around the witnesses (half their mutual
/// distances, and no farther than the boundary of their sigma) contain the
/// subdivided cells through them.
int predicted_separation_level(const Complex& k, const std::vector<Witness>& ws);

struct Separation {
  int kappa = 0;
  ComplexPtr complex;
  std::vector<SimplexIndex> cells;
};

/// Least kappa >= kappa_floor with a distinct matching. Throws BudgetExceeded.
Separation separate_witnesses(const std::vector<Witness>& ws, const ComplexPtr& k, int kappa_floor,
                              std::size_t budget = kDefaultSimplexBudget);

}  // namespace plsurj
