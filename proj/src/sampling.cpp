#include "plsurj/sampling.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>

namespace plsurj {

std::vector<Point> lattice_points(std::span<const Point> vertices, unsigned n) {
  std::vector<Point> out;
  if (vertices.empty()) return out;
  if (n == 0) {
    out.push_back(vertices[0]);
    return out;
  }
  std::vector<Rational> weights(vertices.size());
  std::function<void(std::size_t, unsigned)> rec = [&](std::size_t i, unsigned left) {
    if (i + 1 == vertices.size()) {
      weights[i] = Rational(left, n);
      out.push_back(combination(vertices, weights));
      return;
    }
    for (unsigned k = 0; k <= left; ++k) {
      weights[i] = Rational(k, n);
      rec(i + 1, left - k);
    }
  };
  rec(0, n);
  return out;
}

std::vector<Point> random_points(std::span<const Point> vertices, std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long long> dist(0, 1000);
  std::vector<Point> out;
  out.reserve(count);
  std::vector<Rational> w(vertices.size());
  for (std::size_t c = 0; c < count; ++c) {
    long long total = 0;
    std::vector<long long> raw(vertices.size());
    for (auto& r : raw) total += (r = dist(rng));
    if (total == 0) {
      raw[0] = 1;
      total = 1;
    }
    for (std::size_t i = 0; i < raw.size(); ++i) w[i] = Rational(raw[i], total);
    out.push_back(combination(vertices, w));
  }
  return out;
}

std::vector<std::vector<Point>> subdivide_points(std::span<const Point> simplex) {
  std::vector<std::size_t> perm(simplex.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::vector<Point>> out;
  do {
    std::vector<Point> child;
    Point sum(simplex[0].dim());
    for (std::size_t j = 0; j < perm.size(); ++j) {
      sum += simplex[perm[j]];
      child.push_back(sum * Rational(1, static_cast<long long>(j + 1)));
    }
    out.push_back(std::move(child));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

std::vector<Cell> subdivide_cell_k(const Cell& cell, unsigned depth) {
  std::vector<Cell> cur{cell};
  for (unsigned d = 0; d < depth; ++d) {
    std::vector<Cell> next;
    for (const auto& c : cur)
      for (auto& child : subdivide_cell(c)) next.push_back(std::move(child));
    cur = std::move(next);
  }
  return cur;
}

std::vector<Point> barycentre_sample(const Cell& cell, unsigned depth) {
  std::vector<std::vector<Point>> cur{cell.points};
  for (unsigned d = 0; d < depth; ++d) {
    std::vector<std::vector<Point>> next;
    for (const auto& c : cur)
      for (auto& child : subdivide_points(c)) next.push_back(std::move(child));
    cur = std::move(next);
  }
  std::vector<Point> out;
  out.reserve(cur.size());
  for (const auto& c : cur) out.push_back(barycentre(c));
  return out;
}

}  // namespace plsurj
