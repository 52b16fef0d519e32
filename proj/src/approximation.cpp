#include "plsurj/approximation.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "plsurj/lp.hpp"
#include "plsurj/sampling.hpp"
#include "plsurj/stars.hpp"

namespace plsurj {

namespace {

/// Vertices of maximal cell m other than w; empty when m is the vertex w.
std::vector<VertexIndex> antistar_part(const Complex& l, SimplexIndex m, VertexIndex w) {
  std::vector<VertexIndex> out;
  for (auto v : l.simplex(m))
    if (v != w) out.push_back(v);
  return out;
}

bool contains_vertex(const Simplex& s, VertexIndex v) { return std::binary_search(s.begin(), s.end(), v); }

std::pair<std::vector<double>, std::vector<double>> box_around(const Point& p, double r) {
  std::vector<double> lo(p.dim()), hi(p.dim());
  for (std::size_t i = 0; i < p.dim(); ++i) {
    const double c = p[i].to_double();
    lo[i] = c - r - 1e-9 * (1 + std::abs(c));
    hi[i] = c + r + 1e-9 * (1 + std::abs(c));
  }
  return {lo, hi};
}

}  // namespace

std::optional<Rational> squared_distance_to_antistar(const Complex& l, VertexIndex w, const Point& p) {
  const std::size_t total = l.maximal_simplices().size();
  Rational radius(1, 1024);
  while (true) {
    auto [lo, hi] = box_around(p, radius.to_double());
    const auto near = l.locator().near_box(lo, hi);
    std::optional<Rational> best;
    for (auto m : near) {
      const auto part = antistar_part(l, m, w);
      if (part.empty()) continue;
      const Rational d = squared_distance_point_simplex(p, l.points_of(part));
      if (!best || d < *best) best = d;
    }
    if (near.size() == total) {
      if (best) return best;
      for (auto m : l.maximal_simplices())
        if (!antistar_part(l, m, w).empty()) throw Error(ErrorCode::InternalCheckFailed, "locator missed a cell");
      return std::nullopt;
    }
    if (best && *best <= radius * radius) return best;
    radius *= 2;
  }
}

std::optional<StarEntry> star_condition(const MapOracle& f, const Complex& k, VertexIndex v, const Complex& l,
                                        VertexIndex w) {
  if (v >= k.vertex_count() || w >= l.vertex_count()) throw Error(ErrorCode::UnknownVertex, "vertex out of range");
  const Point fv = f.evaluate(k.point(v));

  std::vector<std::pair<SimplexIndex, std::vector<Point>>> pieces;
  bool exact = true;
  for (auto c : k.cofaces(v)) {
    if (!k.is_maximal(c)) continue;
    auto imgs = f.affine_images(k.points_of(c));
    if (!imgs) {
      exact = false;
      break;
    }
    pieces.emplace_back(c, std::move(*imgs));
  }

  if (exact) {
    for (const auto& [c, q] : pieces) {
      const auto& verts = k.simplex(c);
      const std::size_t idx = std::find(verts.begin(), verts.end(), v) - verts.begin();
      bool settled = false;
      for (auto m : l.locator().containing_maximal(barycentre(q))) {
        if (!contains_vertex(l.simplex(m), w)) continue;
        const auto& frame = l.frame(m);
        if (!std::all_of(q.begin(), q.end(), [&](const Point& p) { return frame.contains(p); })) continue;
        // Inside a closed simplex containing w, the open star is where the
        // w-coordinate is positive; that coordinate is affine along q.
        const auto lambda = frame.barycentric(q[idx]);
        const auto& mv = l.simplex(m);
        const std::size_t wi = std::find(mv.begin(), mv.end(), w) - mv.begin();
        if ((*lambda)[wi].sign() <= 0) return std::nullopt;
        settled = true;
        break;
      }
      if (settled) continue;
      auto [lo, hi] = double_box(q);
      for (auto m : l.locator().near_box(lo, hi)) {
        const auto part = antistar_part(l, m, w);
        if (part.empty()) continue;
        const auto weight = max_weight_meeting(q, idx, l.points_of(part));
        if (weight && weight->sign() > 0) return std::nullopt;
      }
    }
    return StarEntry{v, w, squared_distance_to_antistar(l, w, fv), true};
  }

  const auto carrier = l.locator().carrier(fv);
  if (!carrier || !contains_vertex(l.simplex(carrier->cell), w)) return std::nullopt;
  const auto dist = squared_distance_to_antistar(l, w, fv);
  if (!dist) return StarEntry{v, w, std::nullopt, false};
  const auto star_pts = k.points_of(vertices_of(k, closed_star(k, v)));
  const Rational margin = *dist - f.squared_lipschitz() * squared_diameter(star_pts);
  if (margin.sign() <= 0) return std::nullopt;
  return StarEntry{v, w, margin, false};
}

Approximation simplicial_approximation(const MapOracle& f, const ComplexPtr& k, const ComplexPtr& l, int kappa_max,
                                       const VertexOrder& order, int kappa_floor, std::size_t budget) {
  if (kappa_floor < 0 || kappa_max < kappa_floor)
    throw Error(ErrorCode::BudgetExceeded, "kappa_max " + std::to_string(kappa_max) + " is below the required floor " +
                                               std::to_string(kappa_floor));
  ComplexPtr cur = sd_k(k, kappa_floor, budget);
  for (int kappa = kappa_floor;; ++kappa) {
    StarCertificate cert;
    bool ok = true;
    for (VertexIndex v = 0; v < cur->vertex_count() && ok; ++v) {
      const Point fv = f.evaluate(cur->point(v));
      const auto carrier = l->locator().carrier(fv);
      if (!carrier) throw Error(ErrorCode::OracleDomainError, "f(" + cur->vertex_id(v) + ") lies outside |L|");
      const auto& cv = l->simplex(carrier->cell);
      std::vector<std::size_t> pos(cv.size());
      for (std::size_t i = 0; i < pos.size(); ++i) pos[i] = i;
      std::sort(pos.begin(), pos.end(), [&](std::size_t a, std::size_t b) {
        if (carrier->weights[a] != carrier->weights[b]) return carrier->weights[a] > carrier->weights[b];
        return order.less(cv[a], cv[b]);
      });
      std::optional<StarEntry> entry;
      for (auto i : pos)
        if ((entry = star_condition(f, *cur, v, *l, cv[i]))) break;
      if (!entry) ok = false;
      else cert.entries.push_back(std::move(*entry));
    }
    if (ok) {
      std::vector<VertexIndex> targets;
      for (const auto& e : cert.entries) targets.push_back(e.target);
      try {
        auto h = SimplicialMap::from_targets(cur, l, std::move(targets));
        return Approximation{kappa, cur, std::move(h), std::move(cert)};
      } catch (const Error& e) {
        if (e.code() != ErrorCode::NotSimplicial) throw;
        throw Error(ErrorCode::InternalCheckFailed, std::string("certified vertex map is not simplicial: ") + e.what());
      }
    }
    if (kappa >= kappa_max) break;
    cur = barycentric_subdivision(cur, budget);
  }
  throw Error(ErrorCode::BudgetExceeded,
              "no certified simplicial approximation up to kappa_max = " + std::to_string(kappa_max));
}

std::pair<int, ComplexPtr> fine_codomain(const ComplexPtr& l, const Rational& squared_threshold, std::size_t budget,
                                         int max_levels) {
  if (squared_threshold.sign() <= 0) throw Error(ErrorCode::InvalidInput, "mesh threshold must be positive");
  ComplexPtr cur = l;
  for (int ell = 0; ell <= max_levels; ++ell) {
    if (squared_mesh(*cur) < squared_threshold) return {ell, cur};
    if (ell < max_levels) cur = barycentric_subdivision(cur, budget);
  }
  throw Error(ErrorCode::BudgetExceeded, "mesh stays above the threshold after " + std::to_string(max_levels) +
                                             " subdivisions");
}

SimplicialMap descend_map(const SimplicialMap& h, const ComplexPtr& k_star, const VertexOrder& order) {
  const Complex& k = *h.domain();
  if (!is_refinement(*k_star, k)) throw Error(ErrorCode::NotARefinement, "target complex does not refine the domain");
  std::vector<VertexIndex> targets(k_star->vertex_count());
  for (VertexIndex v = 0; v < k_star->vertex_count(); ++v) {
    const SimplexIndex c = minimal_carrier(*k_star, v, k);
    VertexIndex best = h.target(k.simplex(c)[0]);
    for (auto u : k.simplex(c))
      if (order.less(h.target(u), best)) best = h.target(u);
    targets[v] = best;
  }
  try {
    return SimplicialMap::from_targets(k_star, h.codomain(), std::move(targets));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NotSimplicial) throw;
    throw Error(ErrorCode::InternalCheckFailed, std::string("descended map is not simplicial: ") + e.what());
  }
}

std::vector<Witness> find_witnesses(const MapOracle& f, const Complex& k, const Complex& l, unsigned depth) {
  std::vector<SimplexIndex> sigmas = k.maximal_simplices();
  std::stable_sort(sigmas.begin(), sigmas.end(),
                   [&](SimplexIndex a, SimplexIndex b) { return k.simplex_dim(a) > k.simplex_dim(b); });
  std::vector<std::optional<Witness>> found(l.simplex_count());
  std::size_t missing = l.maximal_simplices().size();
  for (auto s : sigmas) {
    if (missing == 0) break;
    const Cell cell = cell_of(k, s);
    for (unsigned j = 0; j <= depth && missing > 0; ++j) {
      for (const auto& x : barycentre_sample(cell, j)) {
        const auto c = l.locator().carrier(f.evaluate(x));
        if (!c || !l.is_maximal(c->cell) || found[c->cell]) continue;
        found[c->cell] = Witness{c->cell, s, x};
        if (--missing == 0) break;
      }
    }
  }
  std::vector<Witness> out;
  for (auto t : l.maximal_simplices()) {
    if (!found[t])
      throw Error(ErrorCode::WitnessNotFound, "no sampled point up to depth " + std::to_string(depth) +
                                                  " maps into the open simplex " + l.simplex_name(t) +
                                                  "; f may miss it or the depth is too small");
    if (k.simplex_dim(found[t]->sigma) < l.simplex_dim(t))
      throw Error(ErrorCode::WitnessNotFound, "open simplex " + l.simplex_name(t) + " is reached only from " +
                                                  k.simplex_name(found[t]->sigma) + " of lower dimension");
    out.push_back(std::move(*found[t]));
  }
  return out;
}

std::optional<std::vector<SimplexIndex>> match_witness_cells(const Complex& k_kappa, const std::vector<Witness>& ws) {
  std::vector<std::vector<SimplexIndex>> options;
  for (const auto& w : ws) options.push_back(k_kappa.locator().containing_maximal(w.x));
  std::vector<std::optional<std::size_t>> owner(k_kappa.simplex_count());
  std::vector<SimplexIndex> cell(ws.size());
  for (std::size_t i = 0; i < ws.size(); ++i) {
    std::vector<bool> seen(k_kappa.simplex_count(), false);
    std::function<bool(std::size_t)> augment = [&](std::size_t a) {
      for (auto c : options[a]) {
        if (seen[c]) continue;
        seen[c] = true;
        if (!owner[c] || augment(*owner[c])) {
          owner[c] = a;
          cell[a] = c;
          return true;
        }
      }
      return false;
    };
    if (!augment(i)) return std::nullopt;
  }
  return cell;
}

int predicted_separation_level(const Complex& k, const std::vector<Witness>& ws) {
  int level = 0;
  for (std::size_t i = 0; i < ws.size(); ++i) {
    const auto& s = k.simplex(ws[i].sigma);
    const std::size_t d = s.size() - 1;
    if (d == 0) continue;
    std::optional<Rational> r2;
    for (std::size_t skip = 0; skip < s.size(); ++skip) {
      Simplex facet;
      for (std::size_t j = 0; j < s.size(); ++j)
        if (j != skip) facet.push_back(s[j]);
      const Rational dist = squared_distance_point_simplex(ws[i].x, k.points_of(facet));
      if (!r2 || dist < *r2) r2 = dist;
    }
    for (std::size_t j = 0; j < ws.size(); ++j) {
      if (j == i) continue;
      const Rational half = squared_distance(ws[i].x, ws[j].x) / 4;
      if (half < *r2) r2 = half;
    }
    const Rational ratio2 = Rational(static_cast<long long>(d * d), static_cast<long long>((d + 1) * (d + 1)));
    Rational mesh2 = squared_diameter(k.points_of(ws[i].sigma));
    int kappa = 0;
    while (!(mesh2 < *r2)) {
      mesh2 *= ratio2;
      ++kappa;
    }
    level = std::max(level, kappa);
  }
  return level;
}

Separation separate_witnesses(const std::vector<Witness>& ws, const ComplexPtr& k, int kappa_floor,
                              std::size_t budget) {
  const int cap = std::max(kappa_floor, predicted_separation_level(*k, ws));
  ComplexPtr cur = sd_k(k, kappa_floor, budget);
  for (int kappa = kappa_floor; kappa <= cap; ++kappa) {
    if (auto cells = match_witness_cells(*cur, ws)) return Separation{kappa, cur, std::move(*cells)};
    if (kappa < cap) cur = barycentric_subdivision(cur, budget);
  }
  throw Error(ErrorCode::InternalCheckFailed, "witness cells still coincide at the predicted level");
}

}  // namespace plsurj
