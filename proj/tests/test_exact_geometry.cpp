#include <doctest.h>

#include <cmath>
#include <random>

#include "plsurj/error.hpp"
#include "plsurj/geometry.hpp"
#include "plsurj/lp.hpp"
#include "plsurj/sampling.hpp"
#include "plsurj/squeezing.hpp"

using namespace plsurj;

namespace {

const std::vector<Point> kTriangle{{0, 0}, {1, 0}, {0, 1}};

Rational random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<long long> num(-1000, 1000), den(1, 97);
  return Rational(num(rng), den(rng));
}

// Cramer's rule in the plane, independent of SimplexFrame.
std::vector<Rational> cramer_barycentric(const Point& x, const std::vector<Point>& t) {
  auto det = [](const Point& u, const Point& v) { return u[0] * v[1] - u[1] * v[0]; };
  const Rational d = det(t[1] - t[0], t[2] - t[0]);
  const Rational l1 = det(x - t[0], t[2] - t[0]) / d;
  const Rational l2 = det(t[1] - t[0], x - t[0]) / d;
  return {1 - l1 - l2, l1, l2};
}

// Smallest t > 0 where p + t d meets the boundary of the triangle, found by
// intersecting the ray with each edge line.
Rational ray_edge_oracle(const Point& p, const Point& d, const std::vector<Point>& t) {
  std::optional<Rational> best;
  for (int i = 0; i < 3; ++i) {
    const Point a = t[i], b = t[(i + 1) % 3];
    const Point e = b - a;
    const Rational den = d[0] * e[1] - d[1] * e[0];
    if (den.is_zero()) continue;
    const Point w = a - p;
    const Rational s = (w[0] * e[1] - w[1] * e[0]) / den;
    const Rational u = (w[0] * d[1] - w[1] * d[0]) / den;
    if (s > 0 && u >= 0 && u <= 1 && (!best || s < *best)) best = s;
  }
  REQUIRE(best);
  return *best;
}

}  // namespace

TEST_CASE("rationals stay in lowest terms with a positive denominator") {
  const Rational r(6, -4);
  CHECK(r.str() == "-3/2");
  CHECK(r.denominator() > 0);
  CHECK(Rational::parse("-0.125") == Rational(-1, 8));
  CHECK(Rational::parse("10/4").str() == "5/2");
  CHECK(Rational(7).str() == "7");
}

TEST_CASE("rational arithmetic is exact on random values") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 500; ++i) {
    const Rational a = random_rational(rng), b = random_rational(rng);
    CHECK((a + b) - b == a);
    if (!b.is_zero()) CHECK((a * b) / b == a);
    CHECK(a * (a + b) == a * a + a * b);
  }
}

TEST_CASE("square root bounds bracket and are exact on squares") {
  CHECK(sqrt_upper(Rational(9, 4)) == Rational(3, 2));
  CHECK(sqrt_lower(Rational(9, 4)) == Rational(3, 2));
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    const Rational q = abs(random_rational(rng));
    const Rational hi = sqrt_upper(q), lo = sqrt_lower(q);
    CHECK(lo * lo <= q);
    CHECK(hi * hi >= q);
  }
}

TEST_CASE("points of different dimension are rejected") {
  CHECK_THROWS_AS(squared_distance(Point{0, 0}, Point{0, 0, 0}), Error);
  try {
    (void)(Point{1} + Point{1, 2});
    FAIL("expected DimensionMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DimensionMismatch);
  }
}

TEST_CASE("affine forms evaluate linearly") {
  const AffineForm h{{2, -3}, Rational(1, 2)};
  const Point x{1, 1}, y{Rational(1, 3), 4};
  CHECK(h(x) == Rational(-1, 2));
  const Rational t(2, 7);
  CHECK(h(x * t + y * (1 - t)) == t * h(x) + (1 - t) * h(y));
}

TEST_CASE("squared distance from a point to a simplex") {
  const std::vector<Point> tri{{0, 0}, {2, 0}, {2, 2}};
  CHECK(squared_distance_point_simplex(Point{0, 2}, tri) == 2);
  const Point third{Rational(1, 3), Rational(1, 3)};
  CHECK(squared_distance_point_simplex(third, kTriangle).is_zero());
  const std::vector<Point> hyp{{1, 0}, {0, 1}};
  CHECK(squared_distance_point_simplex(third, hyp) == Rational(1, 18));
  CHECK(squared_distance_point_simplex(Point{3, -1}, tri) == 2);
  CHECK_THROWS_AS(squared_distance_point_simplex(Point{0, 0}, std::vector<Point>{{0, 0}, {1, 1}, {2, 2}}), Error);
}

TEST_CASE("squared distance agrees with a grid minimisation") {
  const std::vector<std::vector<Point>> simplices{
      kTriangle,
      {{0, 0}, {2, 0}, {2, 2}},
      {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}},
      {{1, 1, 1}, {2, 1, 0}},
  };
  std::mt19937_64 rng(11);
  for (const auto& s : simplices) {
    const unsigned n = 24;
    const auto grid = lattice_points(s, n);
    const double diam = std::sqrt(squared_diameter(s).to_double());
    for (int i = 0; i < 15; ++i) {
      Point x(s[0].dim());
      for (std::size_t c = 0; c < x.dim(); ++c) x[c] = random_rational(rng) / 300;
      const Rational exact = squared_distance_point_simplex(x, s);
      Rational grid_min = squared_distance(x, grid.front());
      for (const auto& y : grid) grid_min = min(grid_min, squared_distance(x, y));
      CHECK(exact <= grid_min);
      CHECK(std::sqrt(grid_min.to_double()) - std::sqrt(exact.to_double()) <= diam / n + 1e-12);
    }
  }
}

TEST_CASE("distance zero exactly when barycentric coordinates exist") {
  std::mt19937_64 rng(5);
  const std::vector<Point> tri{{0, 0}, {3, 1}, {1, 2}};
  for (int i = 0; i < 300; ++i) {
    const Point x{random_rational(rng) / 250, random_rational(rng) / 250};
    const bool inside = barycentric_coordinates(x, tri).has_value();
    CHECK(inside == squared_distance_point_simplex(x, tri).is_zero());
  }
}

TEST_CASE("barycentric coordinates") {
  const auto b = barycentric_coordinates(barycentre(kTriangle), kTriangle);
  REQUIRE(b);
  CHECK(*b == std::vector<Rational>{Rational(1, 3), Rational(1, 3), Rational(1, 3)});
  CHECK(*barycentric_coordinates(kTriangle[0], kTriangle) == std::vector<Rational>{1, 0, 0});
  CHECK(*barycentric_coordinates(Point{Rational(1, 2), Rational(1, 4)}, kTriangle) ==
        std::vector<Rational>{Rational(1, 4), Rational(1, 2), Rational(1, 4)});
  CHECK_FALSE(barycentric_coordinates(Point{1, 1}, kTriangle));
  const std::vector<Point> seg{{0, 0}, {2, 2}};
  CHECK_FALSE(barycentric_coordinates(Point{1, 0}, seg));
  CHECK(*barycentric_coordinates(Point{Rational(1, 2), Rational(1, 2)}, seg) ==
        std::vector<Rational>{Rational(3, 4), Rational(1, 4)});
}

TEST_CASE("barycentric coordinates round-trip and match Cramer's rule") {
  std::mt19937_64 rng(9);
  const std::vector<Point> tri{{Rational(-1, 2), 0}, {3, Rational(1, 3)}, {1, 5}};
  for (const auto& x : random_points(tri, 200, 17)) {
    const auto b = barycentric_coordinates(x, tri);
    REQUIRE(b);
    CHECK(*b == cramer_barycentric(x, tri));
    CHECK(combination(tri, *b) == x);
    Rational sum = 0;
    for (const auto& l : *b) sum += l;
    CHECK(sum == 1);
  }
}

TEST_CASE("affine independence") {
  CHECK(affine_independent(kTriangle));
  CHECK_FALSE(affine_independent(std::vector<Point>{{0, 0}, {1, 1}, {2, 2}}));
  CHECK_FALSE(affine_independent(std::vector<Point>{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0}}));
  CHECK(affine_independent(std::vector<Point>{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}}));
  CHECK(affine_independent(std::vector<Point>{{5, 5}}));
}

TEST_CASE("ray exit factor") {
  const auto forms = facet_functionals(kTriangle);
  const Point z{Rational(1, 3), Rational(1, 3)};
  const Point x1{Rational(1, 6), Rational(1, 6)};
  CHECK(ray_exit_factor(z, x1, forms) == 2);
  CHECK(z + (x1 - z) * 2 == Point{0, 0});
  const Point x2{Rational(1, 2), Rational(1, 4)};
  CHECK(ray_exit_factor(z, x2, forms) == 4);
  CHECK(z + (x2 - z) * 4 == Point{1, 0});
  CHECK(ray_exit_factor(z, Point{Rational(1, 2), Rational(1, 2)}, forms) == 1);
  CHECK_THROWS_AS(ray_exit_factor(Point{0, Rational(1, 2)}, x1, forms), Error);
}

TEST_CASE("ray exit points land on the boundary and match an edge-intersection oracle") {
  const std::vector<Point> tri{{0, 0}, {4, 1}, {1, 3}};
  const auto forms = facet_functionals(tri);
  const Point z = barycentre(tri);
  std::mt19937_64 rng(21);
  for (int i = 0; i < 200; ++i) {
    const Point x{random_rational(rng) / 100, random_rational(rng) / 100};
    if (x == z) continue;
    const Rational lambda = ray_exit_factor(z, x, forms);
    CHECK(lambda == ray_edge_oracle(z, x - z, tri));
    const Point exit = z + (x - z) * lambda;
    Rational least = forms[0](exit);
    for (const auto& h : forms) {
      CHECK(h(exit) >= 0);
      least = min(least, h(exit));
    }
    CHECK(least.is_zero());
  }
}

TEST_CASE("hull intersection predicates") {
  const std::vector<Point> seg{{0, 0}, {1, 0}};
  CHECK(hulls_meet(seg, kTriangle));
  CHECK_FALSE(relint_hull_meets_hull(std::vector<Point>{{1, 0}, {2, 0}}, kTriangle));
  CHECK(relint_hull_meets_hull(std::vector<Point>{{Rational(1, 2), 0}, {2, 0}}, kTriangle));
  CHECK_FALSE(hulls_meet(std::vector<Point>{{2, 2}}, kTriangle));
}
