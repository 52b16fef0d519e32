#include "plsurj/subdivision.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace plsurj {

std::string barycentre_id(std::vector<std::string> ids) {
  if (ids.size() == 1) return ids[0];
  std::sort(ids.begin(), ids.end());
  std::string out = "b(";
  for (std::size_t i = 0; i < ids.size(); ++i) out += (i ? "." : "") + ids[i];
  return out + ")";
}

namespace {

// Chains of faces ending at a d-simplex, i.e. simplices of sd contributed by it.
std::size_t chains_ending_at(std::size_t d) {
  static std::vector<std::size_t> memo{1};
  while (memo.size() <= d) {
    const std::size_t e = memo.size();
    std::size_t total = 1;
    std::size_t binom = e + 1;  // C(e+1, j+1)
    for (std::size_t j = 0; j < e; ++j) {
      total += binom * memo[j];
      binom = binom * (e - j) / (j + 2);
    }
    memo.push_back(total);
  }
  return memo[d];
}

}  // namespace

std::size_t subdivision_size(const Complex& k) {
  std::size_t total = 0;
  for (SimplexIndex s = 0; s < k.simplex_count(); ++s) total += chains_ending_at(k.simplex_dim(s));
  return total;
}

ComplexPtr barycentric_subdivision(const ComplexPtr& k, std::size_t budget) {
  const std::size_t count = subdivision_size(*k);
  if (count > budget)
    throw Error(ErrorCode::BudgetExceeded, "subdivision would have " + std::to_string(count) +
                                               " simplices, budget is " + std::to_string(budget));
  std::vector<std::string> ids;
  std::vector<Point> points;
  ids.reserve(k->simplex_count());
  points.reserve(k->simplex_count());
  for (SimplexIndex s = 0; s < k->simplex_count(); ++s) {
    ids.push_back(barycentre_id(k->ids_of(s)));
    const auto pts = k->points_of(s);
    points.push_back(pts.size() == 1 ? pts[0] : barycentre(pts));
  }

  std::vector<Simplex> simplices;
  simplices.reserve(count);
  for (SimplexIndex s = 0; s < k->simplex_count(); ++s) {
    const Simplex& full = k->simplex(s);
    const unsigned n = static_cast<unsigned>(full.size());
    const unsigned top = (1u << n) - 1;
    std::vector<SimplexIndex> face_of(top + 1);
    for (unsigned mask = 1; mask <= top; ++mask) {
      Simplex f;
      for (unsigned i = 0; i < n; ++i)
        if (mask & (1u << i)) f.push_back(full[i]);
      face_of[mask] = k->simplex_index(f);
    }
    // Every chain whose largest face is s; new vertex index = old simplex index.
    Simplex chain;
    std::function<void(unsigned)> extend = [&](unsigned mask) {
      chain.push_back(face_of[mask]);
      simplices.push_back(chain);
      for (unsigned sub = (mask - 1) & mask; sub; sub = (sub - 1) & mask) extend(sub);
      chain.pop_back();
    };
    extend(top);
  }
  std::vector<SimplexIndex> source(k->simplex_count());
  std::iota(source.begin(), source.end(), 0);
  return Complex::assemble(k->ambient_dim(), std::move(ids), std::move(points), std::move(simplices),
                           Provenance{k, std::move(source)});
}

ComplexPtr sd_k(const ComplexPtr& k, int kappa, std::size_t budget) {
  if (kappa < 0) throw Error(ErrorCode::InvalidInput, "negative subdivision depth");
  ComplexPtr cur = k;
  for (int i = 0; i < kappa; ++i) cur = barycentric_subdivision(cur, budget);
  return cur;
}

Rational squared_mesh(const Complex& k) {
  Rational best;
  for (SimplexIndex s = 0; s < k.simplex_count(); ++s) {
    if (k.simplex_dim(s) != 1) continue;
    const auto& e = k.simplex(s);
    best = max(best, squared_distance(k.point(e[0]), k.point(e[1])));
  }
  return best;
}

std::optional<SimplexIndex> ancestor_carrier(const Complex& fine, SimplexIndex cell, const Complex& ancestor) {
  const Complex* cur = &fine;
  SimplexIndex c = cell;
  while (cur != &ancestor) {
    const auto& prov = cur->provenance();
    if (!prov) return std::nullopt;
    SimplexIndex best = prov->vertex_source[cur->simplex(c)[0]];
    for (auto v : cur->simplex(c)) {
      const SimplexIndex src = prov->vertex_source[v];
      if (prov->parent->simplex_dim(src) > prov->parent->simplex_dim(best)) best = src;
    }
    c = best;
    cur = prov->parent.get();
  }
  return c;
}

SimplexIndex minimal_carrier(const Complex& fine, VertexIndex v, const Complex& coarse) {
  if (auto c = ancestor_carrier(fine, fine.vertex_simplex(v), coarse)) return *c;
  auto c = coarse.locator().carrier(fine.point(v));
  if (!c) throw Error(ErrorCode::CarrierNotFound, "vertex '" + fine.vertex_id(v) + "' lies outside the complex");
  return c->cell;
}

bool is_refinement(const Complex& fine, const Complex& coarse) {
  if (fine.ambient_dim() != coarse.ambient_dim()) return false;
  std::vector<Rational> covered(coarse.simplex_count());
  for (auto m : fine.maximal_simplices()) {
    const auto pts = fine.points_of(m);
    const Point centre = barycentre(pts);
    std::optional<SimplexIndex> home;
    for (auto big : coarse.locator().containing_maximal(centre)) {
      const auto& frame = coarse.frame(big);
      bool inside = true;
      for (const auto& p : pts) inside = inside && frame.contains(p);
      if (!inside) continue;
      home = big;
      if (coarse.simplex_dim(big) == fine.simplex_dim(m)) {
        // Volume ratio = |det| of the barycentric coordinate matrix.
        Matrix coords;
        for (const auto& p : pts) coords.push_back(*frame.barycentric(p));
        covered[big] += abs(determinant(coords));
      }
      break;
    }
    if (!home) return false;
  }
  for (auto big : coarse.maximal_simplices())
    if (covered[big] != Rational(1)) return false;
  return true;
}

std::vector<Cell> subdivide_cell(const Cell& cell) {
  const std::size_t n = cell.ids.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<Cell> out;
  do {
    Cell child;
    std::vector<std::string> prefix_ids;
    std::vector<Point> prefix_pts;
    for (auto i : perm) {
      prefix_ids.push_back(cell.ids[i]);
      prefix_pts.push_back(cell.points[i]);
      child.ids.push_back(barycentre_id(prefix_ids));
      child.points.push_back(prefix_pts.size() == 1 ? prefix_pts[0] : barycentre(prefix_pts));
    }
    out.push_back(std::move(child));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

Cell cell_of(const Complex& k, SimplexIndex s) { return Cell{k.ids_of(s), k.points_of(s)}; }

}  // namespace plsurj
