#pragma once

#include <optional>
#include <vector>

#include "plsurj/rational.hpp"

namespace plsurj {

/// Dense row-major rational matrix.
using Matrix = std::vector<std::vector<Rational>>;

Matrix transpose(const Matrix& a);
Matrix multiply(const Matrix& a, const Matrix& b);
std::vector<Rational> multiply(const Matrix& a, const std::vector<Rational>& x);

std::size_t rank(Matrix a);
Rational determinant(Matrix a);
/// Inverse of a square matrix, or nullopt when singular.
std::optional<Matrix> inverse(const Matrix& a);
/// Solution of a square system, or nullopt when singular.
std::optional<std::vector<Rational>> solve(Matrix a, std::vector<Rational> b);

}  // namespace plsurj
