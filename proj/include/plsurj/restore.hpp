#pragma once

#include <optional>
#include <string>
#include <vector>

#include "plsurj/pl_map.hpp"
#include "plsurj/squeezing.hpp"
#include "plsurj/sup_distance.hpp"

namespace plsurj {

struct HypothesisCheck {
  std::string name;
  bool passed = false;
  /// Certified left-hand side and the bound it must stay under (squared).
  Rational value;
  Rational bound;
  std::string detail;
};

struct DensityReport {
  unsigned resolution = 0;
  unsigned depth = 0;
  std::size_t samples = 0;
  std::size_t targets = 0;
  std::size_t covered = 0;
  bool passed() const { return covered == targets; }
};

struct RestoreOptions {
  SupBudget sup;
  /// Subdivision depth cap for the boundary check of each witness face.
  unsigned boundary_depth = 12;
  std::size_t boundary_cells = 200000;
  /// Density check: top cells of sd^resolution(L) against the domain's top
  /// cells refined up to `depth` levels. Skipped when depth is unset.
  unsigned density_resolution = 1;
  std::optional<unsigned> density_depth;
};

/// pi o g as an evaluator.
class SqueezedMap {
 public:
  SqueezedMap(MapOracle g, SqueezeMap pi) : g_(std::move(g)), pi_(std::move(pi)) {}
  Point evaluate(const Point& x) const { return pi_.evaluate(g_.evaluate(x)); }
  const MapOracle& inner() const { return g_; }
  const SqueezeMap& squeeze() const { return pi_; }

 private:
  MapOracle g_;
  SqueezeMap pi_;
};

struct RestoreResult {
  EpsilonBudget budget;
  SupInterval h_vs_g;
  std::vector<HypothesisCheck> checks;
  /// Squared bound on |h - pi o g|, below 4 max diam^2.
  Rational h_vs_result_hi2;
  std::optional<DensityReport> density;
  SqueezedMap result;
};

/// Certifies that pi o g is onto |L| for the squeezing map pi of L = codomain
/// of h, by checking every hypothesis of the image-restoring argument on the
/// concrete g. Throws HypothesisNotCertified naming the first failed check.
RestoreResult restore_surjectivity(const SimplicialMap& h, const MapOracle& g, const RestoreOptions& opts = {});

/// Density check on its own. A target counts as covered when pi o g reaches
/// its interior: exactly on cells where g is affine, by the barycentre of
/// each refined cell elsewhere.
DensityReport density_check(const SimplicialMap& h, const SqueezedMap& m, unsigned resolution, unsigned depth);

}  // namespace plsurj
