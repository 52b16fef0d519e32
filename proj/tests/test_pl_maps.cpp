#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "plsurj/approximation.hpp"
#include "plsurj/sampling.hpp"
#include "plsurj/sup_distance.hpp"

using namespace fixtures;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::InvalidInput;
}

// The map of fig1 sending w1 to w0 and w3 to w2; every image lies on the diagonal.
SimplicialMap diagonal_collapse(const ComplexPtr& l) {
  std::vector<VertexIndex> t(l->vertex_count());
  for (VertexIndex v = 0; v < l->vertex_count(); ++v) {
    const auto& id = l->vertex_id(v);
    t[v] = l->vertex_index(id == "w1" ? "w0" : id == "w3" ? "w2" : id);
  }
  return SimplicialMap::from_targets(l, l, t);
}

}  // namespace

TEST_CASE("identity evaluates to the input") {
  const auto l = fig1();
  const auto f = identity(l);
  for (auto m : l->maximal_simplices())
    for (const auto& x : random_points(l->points_of(m), 30, m)) CHECK(f.evaluate(x) == x);
}

TEST_CASE("doubling map on an edge") {
  const auto k = make(1, {{"a", {0}}, {"b", {1}}}, {{"a", "b"}});
  const auto l = make(1, {{"c", {0}}, {"d", {2}}}, {{"c", "d"}});
  const PlMap m = pl_map(k, l, {{"a", {0}}, {"b", {2}}});
  CHECK(m.evaluate(Point{Rational(1, 3)}) == Point{Rational(2, 3)});
  CHECK(m.squared_lipschitz() == 4);
  CHECK(code_of([&] { m.evaluate(Point{2}); }) == ErrorCode::OutsideDomain);
}

TEST_CASE("vertex images must lie in the codomain") {
  const auto l = fig1();
  CHECK(code_of([&] { pl_map(l, l, {{"w0", {0, 0}}, {"w1", {3, 0}}, {"w2", {2, 2}}, {"w3", {0, 2}}}); }) ==
        ErrorCode::OutsideDomain);
}

TEST_CASE("diagonal collapse evaluates to a point of the diagonal") {
  const auto l = fig1();
  const auto h = diagonal_collapse(l);
  // Barycentre of w0 w1 w2 has weights 1/3 each; images w0, w0, w2.
  const Point x{Rational(4, 3), Rational(2, 3)};
  const Point expected = l->point(l->vertex_index("w0")) * Rational(2, 3) + l->point(l->vertex_index("w2")) * Rational(1, 3);
  CHECK(h.evaluate(x) == expected);
  CHECK(expected == Point{Rational(2, 3), Rational(2, 3)});
}

TEST_CASE("evaluation agrees across shared faces") {
  const auto l = fig1();
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<long long> num(0, 64);
  std::vector<Point> imgs;
  for (VertexIndex v = 0; v < l->vertex_count(); ++v) imgs.push_back(Point{Rational(num(rng), 32), Rational(num(rng), 32)});
  const PlMap m(l, l, imgs);
  const auto w = [&](const char* id) { return l->vertex_index(id); };
  for (int i = 0; i <= 12; ++i) {
    const Rational t(i, 12);
    const Point x = l->point(w("w0")) * (1 - t) + l->point(w("w2")) * t;
    for (auto tri : l->maximal_simplices()) {
      const auto& s = l->simplex(tri);
      const auto b = barycentric_coordinates(x, l->points_of(tri));
      REQUIRE(b);
      Point y(2);
      for (std::size_t j = 0; j < s.size(); ++j) y += imgs[s[j]] * (*b)[j];
      CHECK(y == m.evaluate(x));
    }
  }
}

TEST_CASE("PL Lipschitz certificates hold on sampled pairs") {
  const auto k = fold_domain(1);
  const auto f = fold_map(k, fig1());
  const auto& m = *f.chain().front();
  for (auto tri : k->maximal_simplices()) {
    const auto pts = random_points(k->points_of(tri), 20, tri);
    for (std::size_t i = 1; i < pts.size(); ++i)
      CHECK(squared_distance(m.evaluate(pts[i]), m.evaluate(pts[i - 1])) <=
            m.squared_lipschitz() * squared_distance(pts[i], pts[i - 1]));
  }
  CHECK_NOTHROW(spot_check_lipschitz(f, 16, 1));
}

TEST_CASE("understated Lipschitz bounds are a hard error") {
  const auto k = interval(1);
  const auto f = MapOracle::from_function(
      k, k, [](const Point& x) { return Point{x[0] * x[0]}; }, Rational(1, 4));
  CHECK(code_of([&] { spot_check_lipschitz(f, 32, 2); }) == ErrorCode::LipschitzViolation);
}

TEST_CASE("oracle values outside the codomain are rejected") {
  const auto k = interval(1);
  const auto f = MapOracle::from_function(k, k, [](const Point& x) { return Point{x[0] + 1}; }, 1);
  CHECK(code_of([&] { f.evaluate(Point{Rational(1, 2)}); }) == ErrorCode::OracleDomainError);
  CHECK(code_of([&] { f.evaluate(Point{3}); }) == ErrorCode::OracleDomainError);
}

TEST_CASE("simpliciality checks") {
  const auto l = fig1();
  CHECK_NOTHROW(check_simplicial(*identity(l).chain().front()));

  const auto e = interval(1);
  const auto collapse = check_simplicial(pl_map(e, l, {{"x0", {2, 0}}, {"x1", {2, 0}}}));
  CHECK(l->simplex_dim(collapse.image_of_simplex(e->maximal_simplices().front())) == 0);

  CHECK(code_of([&] { check_simplicial(pl_map(e, l, {{"x0", {2, 0}}, {"x1", {0, 2}}})); }) ==
        ErrorCode::NotSimplicial);
  CHECK(code_of([&] { check_simplicial(pl_map(e, l, {{"x0", {1, 0}}, {"x1", {2, 0}}})); }) ==
        ErrorCode::NotSimplicial);
}

TEST_CASE("images of simplices") {
  const auto l = fig1();
  const auto id = check_simplicial(*identity(l).chain().front());
  for (SimplexIndex s = 0; s < l->simplex_count(); ++s) CHECK(id.image_of_simplex(s) == s);

  const auto h = diagonal_collapse(l);
  const SimplexIndex diag = l->simplex_index({l->vertex_index("w0"), l->vertex_index("w2")});
  for (SimplexIndex s = 0; s < l->simplex_count(); ++s) {
    const auto img = h.image_of_simplex(s);
    CHECK(l->simplex_dim(img) <= 1);
    CHECK(l->is_face(img, diag));
  }
}

TEST_CASE("surjectivity reports") {
  const auto l = fig1();
  const auto id = is_surjective(check_simplicial(*identity(l).chain().front()));
  CHECK(id.surjective);
  CHECK(id.witnesses.size() == 2);
  for (const auto& [tau, sigma] : id.witnesses) CHECK(tau == sigma);

  const auto collapsed = is_surjective(diagonal_collapse(l));
  CHECK_FALSE(collapsed.surjective);
  CHECK(collapsed.uncovered == l->maximal_simplices());
}

TEST_CASE("vertex orders") {
  const auto l = fig1();
  const auto lex = VertexOrder::lexicographic(*l);
  const auto w = [&](const char* id) { return l->vertex_index(id); };
  CHECK(lex.sorted({w("w2"), w("w1"), w("w3"), w("w0")}) ==
        std::vector<VertexIndex>{w("w0"), w("w3"), w("w1"), w("w2")});
  const auto custom = VertexOrder::from_ids(*l, {"w2", "w0", "w3", "w1"});
  CHECK(custom.less(w("w2"), w("w0")));
  CHECK_FALSE(custom.less(w("w0"), w("w0")));
  CHECK(custom.rank(w("w1")) == 3);
  CHECK_THROWS_AS(VertexOrder::from_ids(*l, {"w2", "w0"}), Error);
}

TEST_CASE("sup distance of a map to itself is zero") {
  const auto k = fold_domain(1);
  const auto f = fold_map(k, fig1());
  const auto s = certified_sup_distance(f, f);
  CHECK(s.lo2 == 0);
  CHECK(s.hi2 == 0);
}

TEST_CASE("sup distance to a perturbed identity is exact") {
  const auto k = make(1, {{"a", {0}}, {"m", {Rational(1, 2)}}, {"b", {1}}}, {{"a", "m"}, {"m", "b"}});
  const auto f = identity(k);
  const auto g = MapOracle::from_pl(pl_map(k, k, {{"a", {0}}, {"m", {Rational(5, 8)}}, {"b", {1}}}));
  const auto s = certified_sup_distance(f, g);
  CHECK(s.lo2 == Rational(1, 64));
  CHECK(s.hi2 == Rational(1, 64));
  CHECK(s.converged);
}

TEST_CASE("sup distance to a non-affine oracle brackets the true value") {
  const auto k = interval(1);
  const auto square = MapOracle::from_function(k, k, [](const Point& x) { return Point{x[0] * x[0]}; }, 4);
  const auto id = identity(k);
  SupBudget budget;
  budget.max_depth = 10;
  const auto s = certified_sup_distance(square, id, budget);
  // max over [0,1] of (x - x^2)^2 is 1/16 at x = 1/2.
  CHECK(s.lo2 <= Rational(1, 16));
  CHECK(s.hi2 >= Rational(1, 16));
  CHECK(s.lo2 == Rational(1, 16));
  CHECK(s.hi2 < Rational(1, 10));
}

TEST_CASE("classical approximation stays within the largest simplex diameter") {
  const auto l = fig1();
  const auto k = wedge_domain();
  const auto f = wedge_map(k, l);
  const auto a = simplicial_approximation(f, k, l, 6, VertexOrder::lexicographic(*l));
  const auto s = certified_sup_distance(f, MapOracle::from_simplicial(a.h));
  CHECK(s.lo2 <= s.hi2);
  CHECK(s.hi2 < squared_mesh(*l));
}
