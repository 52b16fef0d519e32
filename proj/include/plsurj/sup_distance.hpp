#pragma once

#include <optional>

#include "plsurj/pl_map.hpp"

namespace plsurj {

struct SupBudget {
  /// Stop refining a cell once its bound is within this of the running lower bound.
  Rational squared_gap = 0;
  /// Also stop once a cell's bound is below this.
  std::optional<Rational> target2;
  unsigned max_depth = 6;
  std::size_t max_cells = 2'000'000;
};

/// lo2 <= sup |f - g|^2 <= hi2.
struct SupInterval {
  Rational lo2;
  Rational hi2;
  /// False when the depth or cell cap stopped refinement early.
  bool converged = true;
  std::size_t cells = 0;
};

/// Certified bounds on the squared sup distance between two maps on the same
/// polyhedron. Cells where both maps are affine are settled exactly at their
/// vertices; elsewhere the Lipschitz certificates bound the excess, and the
/// cell is subdivided while that bound is too loose. Throws
/// LipschitzViolation when sampled values contradict a certificate.
SupInterval certified_sup_distance(const MapOracle& f, const MapOracle& g, const SupBudget& budget = {});

}  // namespace plsurj
