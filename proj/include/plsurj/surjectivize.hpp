#pragma once

#include <optional>
#include <vector>

#include "plsurj/approximation.hpp"

namespace plsurj {

struct ApproxBudgets {
  int kappa_max = 6;
  unsigned witness_depth = 3;
  std::size_t simplices = kDefaultSimplexBudget;
  SupBudget sup;
};

/// Why f(st(v)) stays inside the second star of h(v): the carrier vertex
/// `via` of v in the working complex has h0(via) = h*(v), and h*(v) is
/// h(v) or spans an edge with it.
struct SecondStarEntry {
  VertexIndex vertex;
  VertexIndex via;
  VertexIndex star_center;  // h*(vertex)
};

struct WitnessCells {
  Witness witness;
  SimplexIndex sigma;        // distinct cell of the working complex through the witness
  VertexIndex barycentre;    // its barycentre, a vertex of the final domain
  SimplexIndex sigma_prime;  // reassigned cell of the final domain
};

struct SurjectiveApproxResult {
  int kappa_star = 0;
  int kappa = 0;  // kappa_star + 2
  int ell = 0;
  ComplexPtr working;  // sd^kappa_star(K)
  ComplexPtr domain;   // sd^kappa(K)
  ComplexPtr codomain; // sd^ell(L)
  SimplicialMap h0;
  SimplicialMap h_star;
  SimplicialMap h;
  StarCertificate certificate;
  std::vector<WitnessCells> witnesses;
  std::vector<SecondStarEntry> second_star;
  /// The descended map before reassignment was not surjective.
  bool descended_was_not_surjective = false;
  std::optional<SupInterval> sup;
};

/// Surjective simplicial map close to f: approximate on sd^kappa_star(K),
/// descend to the second subdivision, then reassign one small simplex near
/// each witness onto its target simplex. Every claimed property is
/// re-verified; a failed check throws InternalCheckFailed.
SurjectiveApproxResult surjectivize(const MapOracle& f, const ComplexPtr& k, const ComplexPtr& l,
                                    const VertexOrder& order, const ApproxBudgets& budgets = {});

/// surjectivize against sd^ell(L) with squared mesh below eps2 / 9, then a
/// certified sup bound below eps2. Throws SupBoundNotMet.
SurjectiveApproxResult surjective_simplicial_approximation(const MapOracle& f, const ComplexPtr& k,
                                                           const ComplexPtr& l, const Rational& eps2,
                                                           const ApproxBudgets& budgets = {});

}  // namespace plsurj
