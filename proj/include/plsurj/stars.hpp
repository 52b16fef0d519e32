#pragma once

#include <string>
#include <vector>

#include "plsurj/complex.hpp"

namespace plsurj {

/// A star as a list of open cells; their relative interiors form the set.
struct StarSet {
  std::string center;
  std::vector<SimplexIndex> open_cells;  // ascending

  bool has_cell(SimplexIndex s) const;
};

/// Relative interiors of all simplices having v as a vertex.
StarSet open_star(const Complex& k, VertexIndex v);
/// Every face of every simplex containing v, ascending.
std::vector<SimplexIndex> closed_star(const Complex& k, VertexIndex v);
/// Union of the open stars of the vertices of the subcomplex `cells`.
StarSet star_of_subcomplex(const Complex& k, const std::vector<SimplexIndex>& cells, std::string center);
/// Star of the closed star of v.
StarSet second_star(const Complex& k, VertexIndex v);

/// Exact membership through the carrier of p.
bool star_contains(const Complex& k, const StarSet& star, const Point& p);

/// Vertices of the subcomplex, ascending.
std::vector<VertexIndex> vertices_of(const Complex& k, const std::vector<SimplexIndex>& cells);

}  // namespace plsurj
