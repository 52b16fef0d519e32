#include "plsurj/sup_distance.hpp"

#include <deque>

#include "plsurj/sampling.hpp"

namespace plsurj {

namespace {

struct Pending {
  std::vector<Point> pts;
  unsigned depth;
};

void check_lipschitz(const MapOracle& m, const std::vector<Point>& pts, const std::vector<Point>& vals) {
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      if (squared_distance(vals[i], vals[j]) > m.squared_lipschitz() * squared_distance(pts[i], pts[j]))
        throw Error(ErrorCode::LipschitzViolation, "sampled values exceed the supplied Lipschitz bound");
}

}  // namespace

SupInterval certified_sup_distance(const MapOracle& f, const MapOracle& g, const SupBudget& budget) {
  if (f.domain()->ambient_dim() != g.domain()->ambient_dim() ||
      f.codomain()->ambient_dim() != g.codomain()->ambient_dim())
    throw Error(ErrorCode::DimensionMismatch, "maps do not share domain and codomain dimensions");
  const Complex& start = f.domain()->simplex_count() >= g.domain()->simplex_count() ? *f.domain() : *g.domain();
  const Rational lf = sqrt_upper(f.squared_lipschitz());
  const Rational lg = sqrt_upper(g.squared_lipschitz());

  SupInterval out;
  std::deque<Pending> work;
  for (auto m : start.maximal_simplices()) work.push_back({start.points_of(m), 0});
  std::vector<Rational> slack_bounds;

  while (!work.empty()) {
    Pending cell = std::move(work.front());
    work.pop_front();
    ++out.cells;
    auto fa = f.affine_images(cell.pts);
    auto ga = g.affine_images(cell.pts);
    const bool affine = fa && ga;
    if (!fa) {
      fa.emplace();
      for (const auto& p : cell.pts) fa->push_back(f.evaluate(p));
      check_lipschitz(f, cell.pts, *fa);
    }
    if (!ga) {
      ga.emplace();
      for (const auto& p : cell.pts) ga->push_back(g.evaluate(p));
      check_lipschitz(g, cell.pts, *ga);
    }
    Rational dmax, dmin;
    for (std::size_t i = 0; i < cell.pts.size(); ++i) {
      const Rational d = squared_distance((*fa)[i], (*ga)[i]);
      if (i == 0 || d > dmax) dmax = d;
      if (i == 0 || d < dmin) dmin = d;
    }
    out.lo2 = max(out.lo2, dmax);
    if (affine) {
      // |f - g|^2 is convex on the cell, so its maximum sits at a vertex.
      out.hi2 = max(out.hi2, dmax);
      continue;
    }
    const Rational reach = (lf + lg) * sqrt_upper(squared_diameter(cell.pts));
    const Rational root = sqrt_upper(dmin) + reach;
    const Rational bound = root * root;
    const bool tight = bound <= out.lo2 + budget.squared_gap || (budget.target2 && bound < *budget.target2);
    if (tight || cell.depth >= budget.max_depth || out.cells + work.size() >= budget.max_cells) {
      if (!tight) out.converged = false;
      slack_bounds.push_back(bound);
      continue;
    }
    for (auto& c : subdivide_points(cell.pts)) work.push_back({std::move(c), cell.depth + 1});
  }
  for (const auto& b : slack_bounds) out.hi2 = max(out.hi2, b);
  out.hi2 = max(out.hi2, out.lo2);
  return out;
}

}  // namespace plsurj
