#include "plsurj/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace plsurj {

namespace fs = std::filesystem;

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::InvalidInput, what); }

const Json& member(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) bad(where + ": missing \"" + key + "\"");
  return j.at(key);
}

}  // namespace

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  bad("expected a rational as an integer or a \"p/q\" string, got " + j.dump());
}

Json rational_to_json(const Rational& r) { return r.str(); }

Point point_from_json(const Json& j) {
  if (!j.is_array()) bad("expected a coordinate array, got " + j.dump());
  std::vector<Rational> xs;
  for (const auto& c : j) xs.push_back(rational_from_json(c));
  return Point(std::move(xs));
}

Json point_to_json(const Point& p) {
  Json out = Json::array();
  for (std::size_t i = 0; i < p.dim(); ++i) out.push_back(rational_to_json(p[i]));
  return out;
}

RawComplex raw_complex_from_json(const Json& j) {
  RawComplex raw;
  const Json& dim = member(j, "ambient_dim", "complex");
  if (!dim.is_number_unsigned()) bad("complex: ambient_dim must be a nonnegative integer");
  raw.ambient_dim = dim.get<std::size_t>();
  const Json& verts = member(j, "vertices", "complex");
  if (!verts.is_object()) bad("complex: vertices must be an object");
  for (const auto& [id, p] : verts.items()) raw.vertices.emplace_back(id, point_from_json(p));
  const Json& simps = member(j, "simplices", "complex");
  if (!simps.is_array()) bad("complex: simplices must be an array");
  for (const auto& s : simps) {
    if (!s.is_array()) bad("complex: each simplex must be an array of ids");
    std::vector<std::string> ids;
    for (const auto& id : s) {
      if (!id.is_string()) bad("complex: vertex ids must be strings");
      ids.push_back(id.get<std::string>());
    }
    raw.simplices.push_back(std::move(ids));
  }
  return raw;
}

Json complex_to_json(const Complex& k) {
  Json verts = Json::object();
  for (VertexIndex v = 0; v < k.vertex_count(); ++v) verts[k.vertex_id(v)] = point_to_json(k.point(v));
  Json simps = Json::array();
  for (auto s : k.maximal_simplices()) simps.push_back(k.ids_of(s));
  return Json{{"ambient_dim", k.ambient_dim()}, {"vertices", verts}, {"simplices", simps}};
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) bad("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) bad("cannot write " + path.string());
  out << text;
}

Json read_json(const fs::path& path) {
  try {
    return Json::parse(read_text(path));
  } catch (const Json::parse_error& e) {
    bad(path.string() + ": " + e.what());
  }
}

void write_json(const fs::path& path, const Json& j) { write_text(path, j.dump(2) + "\n"); }

std::uint64_t fnv1a(std::string_view bytes, std::uint64_t seed) {
  std::uint64_t h = seed;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string Loader::read_tracked(const fs::path& path) {
  std::string text = read_text(path);
  if (std::find(seen_.begin(), seen_.end(), path) == seen_.end()) {
    seen_.push_back(path);
    digest_ = fnv1a(text, digest_);
  }
  return text;
}

ComplexPtr Loader::complex(const fs::path& path) {
  const fs::path key = fs::weakly_canonical(path);
  if (auto it = complexes_.find(key); it != complexes_.end()) return it->second;
  Json j;
  try {
    j = Json::parse(read_tracked(key));
  } catch (const Json::parse_error& e) {
    bad(path.string() + ": " + e.what());
  }
  auto k = Complex::validate(raw_complex_from_json(j));
  complexes_.emplace(key, k);
  return k;
}

std::shared_ptr<const PlMap> Loader::map(const fs::path& path) {
  const fs::path key = fs::weakly_canonical(path);
  if (auto it = maps_.find(key); it != maps_.end()) return it->second;
  Json j;
  try {
    j = Json::parse(read_tracked(key));
  } catch (const Json::parse_error& e) {
    bad(path.string() + ": " + e.what());
  }
  const fs::path base = key.parent_path();
  const std::string where = "map " + path.string();
  auto dom = complex(base / member(j, "domain", where).get<std::string>());
  auto cod = complex(base / member(j, "codomain", where).get<std::string>());
  const Json& imgs = member(j, "vertex_images", where);
  std::vector<std::optional<Point>> images(dom->vertex_count());
  for (const auto& [id, img] : imgs.items()) {
    const VertexIndex v = dom->vertex_index(id);
    images[v] = img.is_string() ? cod->point(cod->vertex_index(img.get<std::string>())) : point_from_json(img);
  }
  std::vector<Point> pts;
  for (VertexIndex v = 0; v < dom->vertex_count(); ++v) {
    if (!images[v]) bad(where + ": no image for vertex " + dom->vertex_id(v));
    pts.push_back(*images[v]);
  }
  auto m = std::make_shared<const PlMap>(dom, cod, std::move(pts));
  maps_.emplace(key, m);
  return m;
}

MapOracle Loader::chain(const std::vector<fs::path>& paths, std::optional<Rational> squared_lipschitz) {
  if (paths.empty()) bad("empty map chain");
  std::vector<std::shared_ptr<const PlMap>> members;
  for (const auto& p : paths) members.push_back(map(p));
  return MapOracle::from_chain(std::move(members), std::move(squared_lipschitz));
}

Json vertex_table_to_json(const SimplicialMap& h) {
  Json out = Json::object();
  const Complex& dom = *h.domain();
  const Complex& cod = *h.codomain();
  for (VertexIndex v = 0; v < dom.vertex_count(); ++v) out[dom.vertex_id(v)] = cod.vertex_id(h.target(v));
  return out;
}

SimplicialMap vertex_table_from_json(const Json& j, const ComplexPtr& domain, const ComplexPtr& codomain) {
  if (!j.is_object()) bad("vertex table must be an object");
  std::vector<std::optional<VertexIndex>> targets(domain->vertex_count());
  for (const auto& [id, w] : j.items()) {
    if (!w.is_string()) bad("vertex table values must be codomain vertex ids");
    targets[domain->vertex_index(id)] = codomain->vertex_index(w.get<std::string>());
  }
  std::vector<VertexIndex> out;
  for (VertexIndex v = 0; v < domain->vertex_count(); ++v) {
    if (!targets[v]) bad("vertex table has no entry for " + domain->vertex_id(v));
    out.push_back(*targets[v]);
  }
  return SimplicialMap::from_targets(domain, codomain, std::move(out));
}

Json interval_to_json(const SupInterval& s) {
  return Json{{"lo2", rational_to_json(s.lo2)},
              {"hi2", rational_to_json(s.hi2)},
              {"hi2_decimal", to_decimal(s.hi2)},
              {"converged", s.converged},
              {"cells", s.cells}};
}

}  // namespace plsurj
