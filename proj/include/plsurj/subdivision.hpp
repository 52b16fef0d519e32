#pragma once

#include <optional>
#include <string>
#include <vector>

#include "plsurj/complex.hpp"

namespace plsurj {

inline constexpr std::size_t kDefaultSimplexBudget = 200000;

/// Canonical id of the barycentre of the face with these vertex ids:
/// the id itself for a single vertex, otherwise "b(" + sorted ids joined by "." + ")".
std::string barycentre_id(std::vector<std::string> ids);

/// Number of simplices sd(k) would have.
std::size_t subdivision_size(const Complex& k);

/// Barycentric subdivision; throws BudgetExceeded when the simplex count
/// would exceed `budget`.
ComplexPtr barycentric_subdivision(const ComplexPtr& k, std::size_t budget = kDefaultSimplexBudget);
ComplexPtr sd_k(const ComplexPtr& k, int kappa, std::size_t budget = kDefaultSimplexBudget);

/// Max over simplices of the squared diameter.
Rational squared_mesh(const Complex& k);

/// |fine| = |coarse| and every simplex of `fine` lies in one of `coarse`.
bool is_refinement(const Complex& fine, const Complex& coarse);

/// Simplex of `ancestor` whose relative interior contains the relative
/// interior of `cell`, when `ancestor` is reachable through subdivision
/// provenance (or is `fine` itself).
std::optional<SimplexIndex> ancestor_carrier(const Complex& fine, SimplexIndex cell, const Complex& ancestor);

/// Minimal-dimensional simplex of `coarse` containing vertex v of `fine`.
/// Throws CarrierNotFound.
SimplexIndex minimal_carrier(const Complex& fine, VertexIndex v, const Complex& coarse);

/// A simplex carried outside any complex, with canonical vertex ids.
struct Cell {
  std::vector<std::string> ids;
  std::vector<Point> points;
};

/// The (d+1)! top-dimensional simplices of the barycentric subdivision of a
/// d-cell, with the same vertex ids barycentric_subdivision would assign.
std::vector<Cell> subdivide_cell(const Cell& cell);

/// Cell view of a simplex of k.
Cell cell_of(const Complex& k, SimplexIndex s);

}  // namespace plsurj
