#include "plsurj/linalg.hpp"

#include "plsurj/error.hpp"

namespace plsurj {

Matrix transpose(const Matrix& a) {
  if (a.empty()) return {};
  Matrix t(a[0].size(), std::vector<Rational>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) t[j][i] = a[i][j];
  return t;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  const std::size_t inner = b.size();
  const std::size_t cols = inner == 0 ? 0 : b[0].size();
  Matrix out(a.size(), std::vector<Rational>(cols));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != inner) throw Error(ErrorCode::DimensionMismatch, "matrix product");
    for (std::size_t k = 0; k < inner; ++k) {
      if (a[i][k].is_zero()) continue;
      for (std::size_t j = 0; j < cols; ++j) out[i][j] += a[i][k] * b[k][j];
    }
  }
  return out;
}

std::vector<Rational> multiply(const Matrix& a, const std::vector<Rational>& x) {
  std::vector<Rational> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != x.size()) throw Error(ErrorCode::DimensionMismatch, "matrix-vector product");
    for (std::size_t j = 0; j < x.size(); ++j)
      if (!a[i][j].is_zero()) out[i] += a[i][j] * x[j];
  }
  return out;
}

namespace {

// Reduces `a` in place to row echelon form; returns the rank and the
// determinant sign/scale bookkeeping through `det` when requested.
std::size_t eliminate(Matrix& a, Rational* det) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows == 0 ? 0 : a[0].size();
  std::size_t r = 0;
  if (det) *det = 1;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t pivot = r;
    while (pivot < rows && a[pivot][c].is_zero()) ++pivot;
    if (pivot == rows) {
      if (det) *det = 0;
      continue;
    }
    if (pivot != r) {
      std::swap(a[pivot], a[r]);
      if (det) *det = -*det;
    }
    if (det) *det *= a[r][c];
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (a[i][c].is_zero()) continue;
      const Rational f = a[i][c] / a[r][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    ++r;
  }
  return r;
}

}  // namespace

std::size_t rank(Matrix a) { return eliminate(a, nullptr); }

Rational determinant(Matrix a) {
  if (!a.empty() && a[0].size() != a.size())
    throw Error(ErrorCode::DimensionMismatch, "determinant of a non-square matrix");
  Rational det;
  const std::size_t r = eliminate(a, &det);
  return r == a.size() ? det : Rational(0);
}

std::optional<Matrix> inverse(const Matrix& a) {
  const std::size_t n = a.size();
  Matrix aug(n, std::vector<Rational>(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].size() != n) throw Error(ErrorCode::DimensionMismatch, "inverse of a non-square matrix");
    for (std::size_t j = 0; j < n; ++j) aug[i][j] = a[i][j];
    aug[i][n + i] = 1;
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = c;
    while (pivot < n && aug[pivot][c].is_zero()) ++pivot;
    if (pivot == n) return std::nullopt;
    std::swap(aug[pivot], aug[c]);
    const Rational inv = Rational(1) / aug[c][c];
    for (std::size_t j = c; j < 2 * n; ++j) aug[c][j] *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || aug[i][c].is_zero()) continue;
      const Rational f = aug[i][c];
      for (std::size_t j = c; j < 2 * n; ++j) aug[i][j] -= f * aug[c][j];
    }
  }
  Matrix out(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out[i][j] = aug[i][n + j];
  return out;
}

std::optional<std::vector<Rational>> solve(Matrix a, std::vector<Rational> b) {
  const std::size_t n = a.size();
  if (b.size() != n) throw Error(ErrorCode::DimensionMismatch, "linear solve");
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].size() != n) throw Error(ErrorCode::DimensionMismatch, "linear solve");
    a[i].push_back(b[i]);
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = c;
    while (pivot < n && a[pivot][c].is_zero()) ++pivot;
    if (pivot == n) return std::nullopt;
    std::swap(a[pivot], a[c]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a[i][c].is_zero()) continue;
      const Rational f = a[i][c] / a[c][c];
      for (std::size_t j = c; j <= n; ++j) a[i][j] -= f * a[c][j];
    }
  }
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = a[i][n] / a[i][i];
  return x;
}

}  // namespace plsurj
