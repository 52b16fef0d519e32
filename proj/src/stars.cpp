#include "plsurj/stars.hpp"

#include <algorithm>

namespace plsurj {

bool StarSet::has_cell(SimplexIndex s) const {
  return std::binary_search(open_cells.begin(), open_cells.end(), s);
}

StarSet open_star(const Complex& k, VertexIndex v) {
  if (v >= k.vertex_count()) throw Error(ErrorCode::UnknownVertex, "vertex index out of range");
  return StarSet{k.vertex_id(v), k.cofaces(v)};
}

std::vector<SimplexIndex> closed_star(const Complex& k, VertexIndex v) {
  if (v >= k.vertex_count()) throw Error(ErrorCode::UnknownVertex, "vertex index out of range");
  std::vector<SimplexIndex> out;
  for (auto s : k.cofaces(v))
    if (k.is_maximal(s))
      for (auto f : k.faces(s)) out.push_back(f);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<VertexIndex> vertices_of(const Complex& k, const std::vector<SimplexIndex>& cells) {
  std::vector<VertexIndex> out;
  for (auto s : cells)
    for (auto v : k.simplex(s)) out.push_back(v);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

StarSet star_of_subcomplex(const Complex& k, const std::vector<SimplexIndex>& cells, std::string center) {
  StarSet out{std::move(center), {}};
  for (auto v : vertices_of(k, cells))
    for (auto s : k.cofaces(v)) out.open_cells.push_back(s);
  std::sort(out.open_cells.begin(), out.open_cells.end());
  out.open_cells.erase(std::unique(out.open_cells.begin(), out.open_cells.end()), out.open_cells.end());
  return out;
}

StarSet second_star(const Complex& k, VertexIndex v) {
  return star_of_subcomplex(k, closed_star(k, v), "st2(" + k.vertex_id(v) + ")");
}

bool star_contains(const Complex& k, const StarSet& star, const Point& p) {
  auto c = k.locator().carrier(p);
  return c && star.has_cell(c->cell);
}

}  // namespace plsurj
