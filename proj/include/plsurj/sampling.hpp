#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "plsurj/subdivision.hpp"

namespace plsurj {

/// All points sum_i (k_i / n) v_i with nonnegative integers k_i summing to n.
std::vector<Point> lattice_points(std::span<const Point> vertices, unsigned n);

/// Rational points of conv(vertices) drawn from a seeded generator.
std::vector<Point> random_points(std::span<const Point> vertices, std::size_t count, std::uint64_t seed);

/// Barycentres of the top cells of the depth-fold subdivision of `cell`.
std::vector<Point> barycentre_sample(const Cell& cell, unsigned depth);

/// Vertex lists of the (d+1)! top cells of the barycentric subdivision of a
/// d-simplex, without ids.
std::vector<std::vector<Point>> subdivide_points(std::span<const Point> simplex);

/// Top cells of the depth-fold subdivision of `cell`.
std::vector<Cell> subdivide_cell_k(const Cell& cell, unsigned depth);

}  // namespace plsurj
