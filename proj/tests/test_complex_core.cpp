#include <doctest.h>

#include <set>

#include "fixtures.hpp"
#include "plsurj/sampling.hpp"
#include "plsurj/stars.hpp"
#include "plsurj/subdivision.hpp"

using namespace fixtures;

namespace {

std::vector<std::size_t> counts_by_dim(const Complex& k) {
  std::vector<std::size_t> n(k.dim() + 1);
  for (SimplexIndex s = 0; s < k.simplex_count(); ++s) ++n[k.simplex_dim(s)];
  return n;
}

std::set<std::string> names(const Complex& k, const std::vector<SimplexIndex>& cells) {
  std::set<std::string> out;
  for (auto c : cells) out.insert(k.simplex_name(c));
  return out;
}

std::set<std::string> all_names(const Complex& k) {
  std::set<std::string> out;
  for (SimplexIndex s = 0; s < k.simplex_count(); ++s) out.insert(k.simplex_name(s));
  return out;
}

std::vector<ComplexPtr> suite() {
  return {fig1(), standard_triangle(), standard_simplex(3), interval(3), fan_square(), point_complex(),
          fold_domain(1), wedge_domain()};
}

}  // namespace

TEST_CASE("validation of the square split along its diagonal") {
  const auto l = fig1();
  CHECK(l->vertex_count() == 4);
  CHECK(counts_by_dim(*l) == std::vector<std::size_t>{4, 5, 2});
  CHECK(names(*l, l->maximal_simplices()) == std::set<std::string>{"w0.w1.w2", "w0.w2.w3"});
}

TEST_CASE("overlapping triangles are rejected") {
  RawComplex raw;
  raw.ambient_dim = 2;
  raw.vertices = {{"w0", {0, 0}}, {"w1", {2, 0}}, {"w2", {2, 2}}, {"w3", {0, 2}}};
  raw.simplices = {{"w0", "w1", "w2"}, {"w0", "w2", "w3"}, {"w0", "w1", "w3"}};
  const auto report = Complex::check(raw);
  REQUIRE_FALSE(report.ok());
  bool bad = false;
  for (const auto& i : report.issues) bad |= i.code == ErrorCode::BadIntersection;
  CHECK(bad);
  try {
    Complex::validate(raw);
    FAIL("expected BadIntersection");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BadIntersection);
  }
}

TEST_CASE("other validation failures") {
  RawComplex raw;
  raw.ambient_dim = 2;
  raw.vertices = {{"a", {0, 0}}, {"b", {1, 1}}, {"c", {2, 2}}};
  raw.simplices = {{"a", "b", "c"}};
  CHECK_THROWS_AS(Complex::validate(raw), Error);

  raw.vertices = {{"a", {0, 0}}, {"b", {1, 0}}, {"c", {0, 1}}};
  raw.close_under_faces = false;
  const auto report = Complex::check(raw);
  REQUIRE_FALSE(report.ok());
  CHECK(report.issues.front().code == ErrorCode::NotFaceClosed);

  raw.close_under_faces = true;
  raw.simplices = {{"a", "b", "z"}};
  CHECK_FALSE(Complex::check(raw).ok());

  // An edge crossing a triangle's interior without sharing a face.
  raw.vertices = {{"a", {0, 0}}, {"b", {2, 0}}, {"c", {0, 2}}, {"p", {-1, 1}}, {"q", {1, 1}}};
  raw.simplices = {{"a", "b", "c"}, {"p", "q"}};
  CHECK_FALSE(Complex::check(raw).ok());
}

TEST_CASE("single vertex and empty complexes") {
  const auto p = point_complex();
  CHECK(p->simplex_count() == 1);
  CHECK(p->maximal_simplices().size() == 1);
  CHECK(squared_mesh(*p) == 0);
  CHECK(empty_complex()->empty());
}

TEST_CASE("maximal simplices") {
  const auto s3 = standard_simplex(3);
  REQUIRE(s3->maximal_simplices().size() == 1);
  CHECK(s3->simplex_dim(s3->maximal_simplices().front()) == 3);
  CHECK(s3->simplex_count() == 15);
  const auto sd = barycentric_subdivision(standard_triangle());
  CHECK(sd->maximal_simplices().size() == 6);
  for (auto m : sd->maximal_simplices()) CHECK(sd->simplex_dim(m) == 2);
}

TEST_CASE("open, closed and second stars") {
  const auto e = interval(1);
  CHECK(names(*e, open_star(*e, e->vertex_index("x0")).open_cells) == std::set<std::string>{"x0", "x0.x1"});

  const auto l = fig1();
  const auto w = [&](const char* id) { return l->vertex_index(id); };
  auto everything = all_names(*l);

  auto expected = everything;
  expected.erase("w3");
  CHECK(names(*l, second_star(*l, w("w1")).open_cells) == expected);

  const SimplexIndex diag = l->simplex_index({w("w0"), w("w2")});
  expected = everything;
  expected.erase("w1");
  expected.erase("w3");
  CHECK(names(*l, star_of_subcomplex(*l, l->faces(diag), "w0.w2").open_cells) == expected);

  const auto closed = closed_star(*l, w("w1"));
  CHECK(names(*l, closed) ==
        std::set<std::string>{"w0", "w1", "w2", "w0.w1", "w0.w2", "w1.w2", "w0.w1.w2"});
  CHECK(vertices_of(*l, closed).size() == 3);
  CHECK_THROWS_AS(l->vertex_index("nope"), Error);
}

TEST_CASE("star membership through carriers") {
  const auto l = fig1();
  const auto st = open_star(*l, l->vertex_index("w1"));
  CHECK(star_contains(*l, st, Point{Rational(3, 2), Rational(1, 2)}));
  CHECK(star_contains(*l, st, Point{1, 0}));
  CHECK_FALSE(star_contains(*l, st, Point{1, 1}));
  CHECK_FALSE(star_contains(*l, st, Point{Rational(1, 2), 1}));
}

TEST_CASE("open stars of the vertices cover the polyhedron") {
  for (const auto& k : suite()) {
    for (auto m : k->maximal_simplices()) {
      for (const auto& x : random_points(k->points_of(m), 25, m + 1)) {
        const auto c = k->locator().carrier(x);
        REQUIRE(c);
        for (auto v : k->simplex(c->cell)) CHECK(star_contains(*k, open_star(*k, v), x));
      }
    }
  }
}

TEST_CASE("barycentric subdivision counts") {
  const auto sd = barycentric_subdivision(standard_triangle());
  CHECK(counts_by_dim(*sd) == std::vector<std::size_t>{7, 12, 6});
  CHECK(sd->simplex_count() == 25);
  CHECK(subdivision_size(*standard_triangle()) == 25);
  CHECK(sd->find_vertex("b(a.b.c)"));
  CHECK(sd->find_vertex("b(a.c)"));

  const auto e = barycentric_subdivision(interval(1));
  CHECK(counts_by_dim(*e) == std::vector<std::size_t>{3, 2});
  CHECK(e->point(e->vertex_index("b(x0.x1)")) == Point{Rational(1, 2)});

  const auto l = fig1();
  CHECK(sd_k(l, 0) == l);
  CHECK(sd_k(standard_triangle(), 2)->maximal_simplices().size() == 36);
  CHECK_THROWS_AS(sd_k(standard_triangle(), 3, 100), Error);
}

TEST_CASE("subdivision ids are canonical") {
  CHECK(barycentre_id({"c", "a"}) == "b(a.c)");
  CHECK(barycentre_id({"v"}) == "v");
  const auto a = sd_k(fig1(), 2), b = sd_k(fig1(), 2);
  REQUIRE(a->vertex_count() == b->vertex_count());
  for (VertexIndex v = 0; v < a->vertex_count(); ++v) {
    CHECK(a->vertex_id(v) == b->vertex_id(v));
    CHECK(a->point(v) == b->point(v));
  }
}

TEST_CASE("subdivided cells agree with the subdivided complex") {
  const auto t = standard_triangle();
  const auto sd = barycentric_subdivision(t);
  const auto cells = subdivide_cell(cell_of(*t, t->maximal_simplices().front()));
  CHECK(cells.size() == 6);
  for (const auto& c : cells) {
    Simplex s;
    for (std::size_t i = 0; i < c.ids.size(); ++i) {
      const auto v = sd->vertex_index(c.ids[i]);
      CHECK(sd->point(v) == c.points[i]);
      s.push_back(v);
    }
    std::sort(s.begin(), s.end());
    CHECK(sd->find_simplex(s));
  }
}

TEST_CASE("squared mesh") {
  const auto t = standard_triangle();
  CHECK(squared_mesh(*t) == 2);
  CHECK(squared_mesh(*barycentric_subdivision(t)) == Rational(5, 9));
  CHECK(squared_mesh(*point_complex()) == 0);
}

TEST_CASE("subdivision shrinks the mesh by the dimension factor") {
  for (const auto& k : suite()) {
    const auto sd = barycentric_subdivision(k);
    const Rational d(static_cast<long long>(k->dim()));
    const Rational factor = (d / (d + 1)) * (d / (d + 1));
    CHECK(squared_mesh(*sd) <= factor * squared_mesh(*k));
  }
}

TEST_CASE("refinement relation") {
  for (const auto& k : suite()) {
    const auto sd = barycentric_subdivision(k);
    CHECK(is_refinement(*sd, *k));
    CHECK(is_refinement(*k, *k));
    CHECK(is_refinement(*sd_k(k, 2), *k));
  }
  const auto e = interval(2);
  CHECK_FALSE(is_refinement(*e, *barycentric_subdivision(e)));
  CHECK_FALSE(is_refinement(*interval(1), *interval(2)));
}

TEST_CASE("minimal carriers") {
  const auto l = fig1();
  const auto sd = sd_k(l, 1);
  CHECK(l->simplex_name(minimal_carrier(*sd, sd->vertex_index("w1"), *l)) == "w1");
  CHECK(l->simplex_name(minimal_carrier(*sd, sd->vertex_index("b(w0.w2)"), *l)) == "w0.w2");
  CHECK(l->simplex_name(minimal_carrier(*sd, sd->vertex_index("b(w0.w1.w2)"), *l)) == "w0.w1.w2");
}

TEST_CASE("minimal carriers contain the vertex in their relative interior") {
  for (const auto& k : suite()) {
    const auto fine = sd_k(k, 2);
    for (VertexIndex v = 0; v < fine->vertex_count(); ++v) {
      const SimplexIndex c = minimal_carrier(*fine, v, *k);
      const auto b = barycentric_coordinates(fine->point(v), k->points_of(c));
      REQUIRE(b);
      for (const auto& l : *b) CHECK(l > 0);
      const auto a = ancestor_carrier(*fine, fine->vertex_simplex(v), *k);
      REQUIRE(a);
      CHECK(*a == c);
    }
  }
}
