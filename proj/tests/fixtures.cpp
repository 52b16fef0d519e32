#include "fixtures.hpp"

#include <atomic>
#include <unistd.h>

namespace fixtures {

ComplexPtr make(std::size_t dim, std::vector<std::pair<std::string, Point>> vertices,
                std::vector<std::vector<std::string>> simplices) {
  RawComplex raw;
  raw.ambient_dim = dim;
  raw.vertices = std::move(vertices);
  raw.simplices = std::move(simplices);
  return Complex::validate(raw);
}

ComplexPtr fig1(const Rational& s) {
  return make(2, {{"w0", {0, 0}}, {"w1", {2 * s, 0}}, {"w2", {2 * s, 2 * s}}, {"w3", {0, 2 * s}}},
              {{"w0", "w1", "w2"}, {"w0", "w2", "w3"}});
}

ComplexPtr standard_triangle() { return make(2, {{"a", {0, 0}}, {"b", {1, 0}}, {"c", {0, 1}}}, {{"a", "b", "c"}}); }

ComplexPtr standard_simplex(std::size_t d) {
  std::vector<std::pair<std::string, Point>> vs;
  std::vector<std::string> ids;
  for (std::size_t i = 0; i <= d; ++i) {
    Point p(d);
    if (i > 0) p[i - 1] = 1;
    ids.push_back("e" + std::to_string(i));
    vs.emplace_back(ids.back(), p);
  }
  return make(d, vs, {ids});
}

ComplexPtr interval(unsigned n) {
  std::vector<std::pair<std::string, Point>> vs;
  std::vector<std::vector<std::string>> ss;
  for (unsigned i = 0; i <= n; ++i) vs.emplace_back("x" + std::to_string(i), Point{Rational(i)});
  for (unsigned i = 0; i < n; ++i) ss.push_back({"x" + std::to_string(i), "x" + std::to_string(i + 1)});
  return make(1, vs, ss);
}

ComplexPtr fan_square() {
  const Rational h(1, 2);
  return make(2, {{"p0", {0, 0}}, {"p1", {1, 0}}, {"p2", {1, 1}}, {"p3", {0, 1}}, {"c", {h, h}}},
              {{"p0", "p1", "c"}, {"p1", "p2", "c"}, {"p2", "p3", "c"}, {"p3", "p0", "c"}});
}

ComplexPtr point_complex() { return make(2, {{"o", {0, 0}}}, {{"o"}}); }

ComplexPtr empty_complex() { return make(2, {}, {}); }

MapOracle identity(const ComplexPtr& k) {
  std::vector<Point> imgs;
  for (VertexIndex v = 0; v < k->vertex_count(); ++v) imgs.push_back(k->point(v));
  return MapOracle::from_pl(PlMap(k, k, imgs));
}

PlMap pl_map(const ComplexPtr& dom, const ComplexPtr& cod, const std::vector<std::pair<std::string, Point>>& images) {
  std::vector<Point> imgs(dom->vertex_count());
  for (const auto& [id, p] : images) imgs[dom->vertex_index(id)] = p;
  return PlMap(dom, cod, imgs);
}

ComplexPtr fold_domain(const Rational& s) {
  return make(2,
              {{"a0", {0, 0}},
               {"a1", {2 * s, 0}},
               {"a2", {4 * s, 0}},
               {"a3", {0, 2 * s}},
               {"a4", {2 * s, 2 * s}},
               {"a5", {4 * s, 2 * s}}},
              {{"a0", "a1", "a4"}, {"a0", "a4", "a3"}, {"a1", "a2", "a4"}, {"a2", "a5", "a4"}});
}

MapOracle fold_map(const ComplexPtr& dom, const ComplexPtr& fig) {
  auto w = [&](const char* id) { return fig->point(fig->vertex_index(id)); };
  return MapOracle::from_pl(pl_map(
      dom, fig,
      {{"a0", w("w0")}, {"a1", w("w1")}, {"a2", w("w0")}, {"a3", w("w3")}, {"a4", w("w2")}, {"a5", w("w3")}}));
}

ComplexPtr wedge_domain() {
  return make(2, {{"n0", {0, 0}}, {"n1", {4, 0}}, {"n2", {0, 4}}, {"m", {0, 2}}},
              {{"n0", "n1", "m"}, {"n1", "n2", "m"}});
}

MapOracle wedge_map(const ComplexPtr& dom, const ComplexPtr& fig) {
  auto w = [&](const char* id) { return fig->point(fig->vertex_index(id)); };
  return MapOracle::from_pl(pl_map(dom, fig, {{"n0", w("w0")}, {"n1", w("w1")}, {"n2", w("w2")}, {"m", w("w3")}}));
}

std::filesystem::path temp_dir(const std::string& name) {
  static std::atomic<int> counter{0};
  auto dir = std::filesystem::temp_directory_path() /
             ("plsurj_" + name + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace fixtures
