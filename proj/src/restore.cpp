#include "plsurj/restore.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <numeric>

#include "plsurj/lp.hpp"
#include "plsurj/sampling.hpp"
#include "plsurj/subdivision.hpp"

namespace plsurj {

namespace {

bool connected(const Complex& l) {
  std::vector<VertexIndex> parent(l.vertex_count());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<VertexIndex(VertexIndex)> find = [&](VertexIndex v) {
    return parent[v] == v ? v : parent[v] = find(parent[v]);
  };
  for (SimplexIndex s = 0; s < l.simplex_count(); ++s)
    for (auto v : l.simplex(s)) parent[find(v)] = find(l.simplex(s)[0]);
  for (VertexIndex v = 0; v < l.vertex_count(); ++v)
    if (find(v) != find(0)) return false;
  return true;
}

/// Min of the summed weights of `keep` over conv(q) within conv(cell).
std::optional<Rational> min_weight(std::span<const Point> q, std::span<const Point> cell, const std::vector<bool>& keep) {
  const std::size_t n = q[0].dim();
  const std::size_t vars = q.size() + cell.size();
  Matrix a(n + 2, std::vector<Rational>(vars));
  std::vector<Rational> b(n + 2);
  for (std::size_t i = 0; i < q.size(); ++i) {
    for (std::size_t k = 0; k < n; ++k) a[k][i] = q[i][k];
    a[n][i] = 1;
  }
  for (std::size_t j = 0; j < cell.size(); ++j) {
    for (std::size_t k = 0; k < n; ++k) a[k][q.size() + j] = -cell[j][k];
    a[n + 1][q.size() + j] = 1;
  }
  b[n] = 1;
  b[n + 1] = 1;
  std::vector<Rational> c(vars);
  for (std::size_t j = 0; j < cell.size(); ++j)
    if (keep[j]) c[q.size() + j] = -1;
  const auto r = lp_maximize(a, b, c);
  if (r.status != LpStatus::Optimal) return std::nullopt;
  return -r.value;
}

struct BoundaryOutcome {
  bool ok = true;
  Rational value;
  std::string detail;
};

/// Certified sup over the simplex `pts` of |h(x) - rho(g(x))|^2, refined
/// until it drops below `bound` or the caps are hit.
BoundaryOutcome boundary_sup(const SimplicialMap& h, const MapOracle& g, const Complex& l, SimplexIndex tau,
                             const StarRetraction& rho, std::vector<Point> pts, const Rational& bound,
                             unsigned max_depth, std::size_t max_cells) {
  BoundaryOutcome out;
  const auto& tv = l.simplex(tau);
  const auto& tframe = l.frame(tau);
  std::deque<std::pair<std::vector<Point>, unsigned>> work;
  work.emplace_back(std::move(pts), 0);
  std::size_t cells = 0;
  auto fail = [&](std::string why) {
    out.ok = false;
    out.detail = std::move(why);
    return out;
  };
  while (!work.empty()) {
    auto [cell, depth] = std::move(work.front());
    work.pop_front();
    ++cells;
    const auto hv = h.pl().affine_images(cell);
    if (!hv) return fail("h is not affine on a face of its own domain");
    const auto gv = g.affine_images(cell);
    auto refine = [&]() -> bool {
      if (depth >= max_depth || cells + work.size() >= max_cells) return false;
      for (auto& c : subdivide_points(cell)) work.emplace_back(std::move(c), depth + 1);
      return true;
    };
    if (!gv) {
      if (!refine()) return fail("g is not affine on any boundary cell at the depth cap");
      continue;
    }
    if (std::all_of(gv->begin(), gv->end(), [&](const Point& p) { return tframe.contains(p); })) {
      // rho is the identity on tau, and |h - g|^2 is convex on the cell.
      for (std::size_t i = 0; i < cell.size(); ++i) out.value = max(out.value, squared_distance((*hv)[i], (*gv)[i]));
      if (!(out.value < bound)) return fail("boundary displacement reaches the bound at a vertex");
      continue;
    }
    std::vector<Rational> d(cell.size());
    for (std::size_t i = 0; i < cell.size(); ++i) {
      Point r;
      try {
        r = rho.evaluate((*gv)[i]);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::OutsideU) throw;
        return fail(std::string("g leaves U: ") + e.what());
      }
      d[i] = squared_distance((*hv)[i], r);
    }
    const Rational dmax = *std::max_element(d.begin(), d.end());
    if (!(dmax < bound)) return fail("boundary displacement reaches the bound at a sample");

    Rational lip_rho;
    auto [lo, hi] = double_box(*gv);
    for (auto c : l.locator().near_box(lo, hi)) {
      const auto cpts = l.points_of(c);
      if (!hulls_meet(*gv, cpts)) continue;
      const auto& cv = l.simplex(c);
      std::vector<bool> keep(cv.size());
      std::vector<Point> face;
      for (std::size_t j = 0; j < cv.size(); ++j)
        if ((keep[j] = std::binary_search(tv.begin(), tv.end(), cv[j]))) face.push_back(cpts[j]);
      if (face.empty()) return fail("g maps a boundary point outside the open star of " + l.simplex_name(tau));
      if (c == tau) {
        lip_rho = max(lip_rho, Rational(1));
        continue;
      }
      const auto s_min = min_weight(*gv, cpts, keep);
      if (!s_min || s_min->sign() <= 0)
        return fail("g maps a boundary point outside the open star of " + l.simplex_name(tau));
      const auto forms = l.frame(c).coordinate_forms();
      Rational grad_sum;
      for (std::size_t j = 0; j < cv.size(); ++j)
        if (keep[j]) grad_sum += sqrt_upper(squared_norm(Point(forms[j].gradient)));
      lip_rho = max(lip_rho, sqrt_upper(squared_diameter(face)) * grad_sum / *s_min);
    }
    const Rational lip_h = sqrt_upper(squared_affine_lipschitz(cell, *hv));
    const Rational lip_g = sqrt_upper(squared_affine_lipschitz(cell, *gv));
    const Rational root =
        sqrt_upper(*std::min_element(d.begin(), d.end())) + (lip_h + lip_rho * lip_g) * sqrt_upper(squared_diameter(cell));
    const Rational cell_bound = root * root;
    if (cell_bound < bound) {
      out.value = max(out.value, cell_bound);
      continue;
    }
    if (!refine()) {
      out.value = max(out.value, cell_bound);
      return fail("Lipschitz bound " + cell_bound.str() + " does not close at the depth cap");
    }
  }
  return out;
}

std::pair<std::vector<double>, std::vector<double>> image_box(const MapOracle& g, std::span<const Point> pts) {
  if (auto imgs = g.affine_images(pts)) return double_box(*imgs);
  std::vector<Point> vals;
  for (const auto& p : pts) vals.push_back(g.evaluate(p));
  auto [lo, hi] = double_box(vals);
  const double reach = sqrt_upper(g.squared_lipschitz()).to_double() * sqrt_upper(squared_diameter(pts)).to_double();
  for (auto& v : lo) v -= reach;
  for (auto& v : hi) v += reach;
  return {lo, hi};
}

bool boxes_meet(const std::pair<std::vector<double>, std::vector<double>>& a,
                const std::pair<std::vector<double>, std::vector<double>>& b) {
  for (std::size_t i = 0; i < a.first.size(); ++i)
    if (a.second[i] < b.first[i] || b.second[i] < a.first[i]) return false;
  return true;
}

}  // namespace

DensityReport density_check(const SimplicialMap& h, const SqueezedMap& m, unsigned resolution, unsigned depth) {
  const ComplexPtr& l = h.codomain();
  const ComplexPtr fine = sd_k(l, static_cast<int>(resolution));
  const SqueezeMap& pi = m.squeeze();
  DensityReport rep;
  rep.resolution = resolution;
  rep.depth = depth;

  // Each target top cell, pulled back into the shrunken copy of its ancestor.
  struct Target {
    SimplexIndex cell;
    std::vector<Point> core;
    std::pair<std::vector<double>, std::vector<double>> box;
    bool hit = false;
  };
  std::vector<Target> targets;
  std::vector<std::optional<std::size_t>> slot(fine->simplex_count());
  for (auto c : fine->maximal_simplices()) {
    const auto anc = ancestor_carrier(*fine, c, *l);
    if (!anc) throw Error(ErrorCode::InternalCheckFailed, "lost subdivision provenance");
    const auto outer = l->points_of(*anc);
    std::vector<Point> core;
    for (const auto& p : fine->points_of(c))
      core.push_back(l->simplex_dim(*anc) == 0 ? p : homothety(outer, pi.ratio(*anc), p));
    slot[c] = targets.size();
    auto box = double_box(core);
    targets.push_back({c, std::move(core), std::move(box)});
  }
  rep.targets = targets.size();
  std::size_t open = targets.size();
  auto mark = [&](std::size_t i) {
    if (!targets[i].hit) --open;
    targets[i].hit = true;
  };

  std::function<void(const std::vector<Point>&, unsigned)> visit = [&](const std::vector<Point>& cell, unsigned d) {
    if (open == 0) return;
    ++rep.samples;
    const auto box = image_box(m.inner(), cell);
    std::vector<std::size_t> live;
    for (auto c : fine->locator().near_box(box.first, box.second)) {
      const std::size_t i = *slot[c];
      if (!targets[i].hit && boxes_meet(box, targets[i].box)) live.push_back(i);
    }
    if (live.empty()) return;
    if (auto imgs = m.inner().affine_images(cell)) {
      // Affine on the cell: its image is the hull of the vertex images.
      for (auto i : live) {
        const auto& t = targets[i];
        const bool meets = t.core.size() == 1 ? hulls_meet(*imgs, t.core) : relint_hull_meets_hull(t.core, *imgs);
        if (meets) mark(i);
      }
      return;
    }
    const auto c = fine->locator().carrier(m.evaluate(barycentre(cell)));
    if (c && slot[c->cell]) mark(*slot[c->cell]);
    if (d < depth)
      for (const auto& child : subdivide_points(cell)) visit(child, d + 1);
  };
  const Complex& dom = *h.domain();
  for (auto c : dom.maximal_simplices()) visit(dom.points_of(c), 0);
  rep.covered = rep.targets - open;
  return rep;
}

RestoreResult restore_surjectivity(const SimplicialMap& h, const MapOracle& g, const RestoreOptions& opts) {
  const ComplexPtr& l = h.codomain();
  if (g.codomain()->ambient_dim() != l->ambient_dim() || g.domain()->ambient_dim() != h.domain()->ambient_dim())
    throw Error(ErrorCode::DimensionMismatch, "g and h disagree on dimensions");
  EpsilonBudget budget = epsilon_budget(*l);
  std::vector<HypothesisCheck> checks;
  auto require = [&](HypothesisCheck c) {
    checks.push_back(c);
    if (!c.passed) throw Error(ErrorCode::HypothesisNotCertified, c.name + ": " + c.detail);
  };

  require({"L connected", connected(*l), 0, 0, "|L| is disconnected; treat each component separately"});
  const auto surj = is_surjective(h);
  require({"h surjective", surj.surjective, 0, 0,
           std::to_string(surj.uncovered.size()) + " maximal simplices of L are not covered by h"});

  SupBudget sb = opts.sup;
  sb.target2 = budget.recommended;
  const SupInterval sup = certified_sup_distance(MapOracle::from_simplicial(h), g, sb);
  require({"sup|h-g|^2 < " + budget.binding + "^2", sup.hi2 < budget.recommended, sup.hi2, budget.recommended,
           "certified bound " + sup.hi2.str() + " is not below " + budget.binding + "^2 = " +
               budget.recommended.str() + " (excess " + (sup.hi2 - budget.recommended).str() + ")"});

  const Rational half_delta2 = budget.squared_delta_min / 4;
  for (const auto& row : budget.simplices) {
    const SimplexIndex tau = row.tau;
    const auto it = std::find_if(surj.witnesses.begin(), surj.witnesses.end(),
                                 [&](const auto& w) { return w.first == tau; });
    const Complex& dom = *h.domain();
    Simplex face;
    for (auto t : l->simplex(tau))
      for (auto v : dom.simplex(it->second))
        if (h.target(v) == t) {
          face.push_back(v);
          break;
        }
    std::sort(face.begin(), face.end());
    const StarRetraction rho(l, tau, budget.squared_eps1);
    HypothesisCheck c{"boundary of " + l->simplex_name(tau), true, 0, half_delta2, ""};
    for (std::size_t skip = 0; skip < face.size() && c.passed; ++skip) {
      Simplex facet;
      for (std::size_t j = 0; j < face.size(); ++j)
        if (j != skip) facet.push_back(face[j]);
      auto r = boundary_sup(h, g, *l, tau, rho, dom.points_of(facet), half_delta2, opts.boundary_depth,
                            opts.boundary_cells);
      c.value = max(c.value, r.value);
      if (!r.ok) {
        c.passed = false;
        c.detail = r.detail;
      }
    }
    if (!c.passed) c.detail = "|id - rho g h^-1|^2 on the boundary is not below delta_L^2/4 = " + half_delta2.str() +
                              ": " + c.detail;
    require(c);
  }

  require({"eps below delta_L", budget.recommended < budget.squared_delta_min, budget.recommended,
           budget.squared_delta_min, "recommended epsilon does not stay below delta_L"});
  const auto ratios = squeeze_ratios(*l, budget);

  const Rational mesh2 = budget.squared_mesh_cap;
  const Rational root = sqrt_upper(sup.hi2) + sqrt_upper(mesh2);
  const Rational moved = root * root;
  require({"|h - pi g|^2 < 4 max diam^2", moved < mesh2 * 4, moved, mesh2 * 4,
           "bound " + moved.str() + " reaches " + (mesh2 * 4).str()});

  RestoreResult r{std::move(budget), sup, std::move(checks), moved, std::nullopt,
                  SqueezedMap(g, SqueezeMap(l, ratios))};
  if (opts.density_depth) r.density = density_check(h, r.result, opts.density_resolution, *opts.density_depth);
  return r;
}

}  // namespace plsurj
