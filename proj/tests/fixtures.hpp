#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "plsurj/complex.hpp"
#include "plsurj/pl_map.hpp"

namespace fixtures {

using namespace plsurj;

/// Square [0, 2s]^2 split along the diagonal w0 w2; w0 = origin, counterclockwise.
ComplexPtr fig1(const Rational& s = 1);
/// (0,0), (1,0), (0,1).
ComplexPtr standard_triangle();
/// Origin and the unit vectors of R^d.
ComplexPtr standard_simplex(std::size_t d);
/// [0, n] split at the integers, in R^1.
ComplexPtr interval(unsigned n);
/// Unit square with four triangles around its centre.
ComplexPtr fan_square();
/// Single vertex at the origin of R^2.
ComplexPtr point_complex();
ComplexPtr empty_complex();

ComplexPtr make(std::size_t dim, std::vector<std::pair<std::string, Point>> vertices,
                std::vector<std::vector<std::string>> simplices);

MapOracle identity(const ComplexPtr& k);
/// PL map from vertex images given by id.
PlMap pl_map(const ComplexPtr& dom, const ComplexPtr& cod, const std::vector<std::pair<std::string, Point>>& images);

/// Rectangle [0, 4s] x [0, 2s] folded over x = 2s onto fig1(s); the right
/// half is the mirror image of the left, so each triangle lands on one of L.
ComplexPtr fold_domain(const Rational& s);
MapOracle fold_map(const ComplexPtr& dom, const ComplexPtr& fig);

/// Triangle (0,0), (4,0), (0,4) cut at m = (0,2) into n0 n1 m and n1 n2 m,
/// mapped affinely on each piece with n_i -> w_i and m -> w3 of fig1(1).
ComplexPtr wedge_domain();
MapOracle wedge_map(const ComplexPtr& dom, const ComplexPtr& fig);

/// Fresh directory under the system temp directory.
std::filesystem::path temp_dir(const std::string& name);

}  // namespace fixtures
