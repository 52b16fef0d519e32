#include "plsurj/complex.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "plsurj/lp.hpp"

namespace plsurj {

std::size_t Complex::SimplexHash::operator()(const Simplex& s) const {
  std::size_t h = 1469598103934665603ull;
  for (auto v : s) {
    h ^= v;
    h *= 1099511628211ull;
  }
  return h;
}

Complex::~Complex() = default;

std::optional<VertexIndex> Complex::find_vertex(std::string_view id) const {
  auto it = id_lookup_.find(std::string(id));
  if (it == id_lookup_.end()) return std::nullopt;
  return it->second;
}

VertexIndex Complex::vertex_index(std::string_view id) const {
  auto v = find_vertex(id);
  if (!v) throw Error(ErrorCode::UnknownVertex, "no vertex '" + std::string(id) + "'");
  return *v;
}

std::optional<VertexIndex> Complex::vertex_at(const Point& p) const {
  auto c = locator().carrier(p);
  if (!c || simplex_dim(c->cell) != 0) return std::nullopt;
  return simplices_[c->cell][0];
}

std::optional<SimplexIndex> Complex::find_simplex(const Simplex& s) const {
  auto it = simplex_lookup_.find(s);
  if (it == simplex_lookup_.end()) return std::nullopt;
  return it->second;
}

SimplexIndex Complex::simplex_index(const Simplex& s) const {
  auto idx = find_simplex(s);
  if (!idx) {
    std::string name;
    for (auto v : s) name += (name.empty() ? "" : ".") + (v < ids_.size() ? ids_[v] : std::string("?"));
    throw Error(ErrorCode::UnknownVertex, "no simplex '" + name + "'");
  }
  return *idx;
}

std::vector<SimplexIndex> Complex::faces(SimplexIndex s) const {
  const Simplex& full = simplices_[s];
  std::vector<SimplexIndex> out;
  const unsigned n = static_cast<unsigned>(full.size());
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    Simplex f;
    for (unsigned i = 0; i < n; ++i)
      if (mask & (1u << i)) f.push_back(full[i]);
    out.push_back(simplex_index(f));
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool Complex::is_face(SimplexIndex face, SimplexIndex of) const {
  const auto& a = simplices_[face];
  const auto& b = simplices_[of];
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

std::vector<Point> Complex::points_of(const Simplex& s) const {
  std::vector<Point> out;
  out.reserve(s.size());
  for (auto v : s) out.push_back(points_[v]);
  return out;
}

std::vector<Point> Complex::points_of(SimplexIndex s) const { return points_of(simplices_[s]); }

std::vector<std::string> Complex::ids_of(SimplexIndex s) const {
  std::vector<std::string> out;
  for (auto v : simplices_[s]) out.push_back(ids_[v]);
  return out;
}

std::string Complex::simplex_name(SimplexIndex s) const {
  std::string out;
  for (auto v : simplices_[s]) out += (out.empty() ? "" : ".") + ids_[v];
  return out;
}

const SimplexFrame& Complex::frame(SimplexIndex maximal) const {
  auto it = frame_slot_.find(maximal);
  if (it == frame_slot_.end())
    throw Error(ErrorCode::InternalCheckFailed, "frame requested for a non-maximal simplex");
  return frames_[it->second];
}

const Locator& Complex::locator() const {
  std::call_once(locator_once_, [this] { locator_ = std::make_unique<Locator>(*this); });
  return *locator_;
}

void Complex::index() {
  id_lookup_.clear();
  for (VertexIndex v = 0; v < ids_.size(); ++v) id_lookup_.emplace(ids_[v], v);
  simplex_lookup_.clear();
  simplex_lookup_.reserve(simplices_.size());
  vertex_cell_.assign(ids_.size(), 0);
  cofaces_.assign(ids_.size(), {});
  dim_ = 0;
  for (SimplexIndex s = 0; s < simplices_.size(); ++s) {
    simplex_lookup_.emplace(simplices_[s], s);
    if (simplices_[s].size() == 1) vertex_cell_[simplices_[s][0]] = s;
    for (auto v : simplices_[s]) cofaces_[v].push_back(s);
    dim_ = std::max(dim_, simplices_[s].size() - 1);
  }
  is_maximal_.assign(simplices_.size(), true);
  maximal_.clear();
  for (SimplexIndex s = 0; s < simplices_.size(); ++s) {
    const auto& a = simplices_[s];
    for (auto t : cofaces_[a[0]]) {
      const auto& b = simplices_[t];
      if (b.size() > a.size() && std::includes(b.begin(), b.end(), a.begin(), a.end())) {
        is_maximal_[s] = false;
        break;
      }
    }
    if (is_maximal_[s]) maximal_.push_back(s);
  }
  frames_.clear();
  frame_slot_.clear();
  frames_.reserve(maximal_.size());
  for (auto m : maximal_) {
    frame_slot_.emplace(m, frames_.size());
    frames_.emplace_back(points_of(m));
  }
}

ComplexPtr Complex::assemble(std::size_t ambient_dim, std::vector<std::string> ids, std::vector<Point> points,
                             std::vector<Simplex> simplices, std::optional<Provenance> provenance) {
  if (ids.size() != points.size()) throw Error(ErrorCode::InvalidInput, "one point per vertex id required");
  std::vector<VertexIndex> order(ids.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](VertexIndex a, VertexIndex b) { return ids[a] < ids[b]; });
  std::vector<VertexIndex> rank(ids.size());
  for (VertexIndex r = 0; r < order.size(); ++r) rank[order[r]] = r;

  std::shared_ptr<Complex> k(new Complex());
  k->ambient_dim_ = ambient_dim;
  k->ids_.reserve(ids.size());
  k->points_.reserve(ids.size());
  for (auto i : order) {
    if (points[i].dim() != ambient_dim)
      throw Error(ErrorCode::DimensionMismatch, "vertex '" + ids[i] + "' has the wrong dimension");
    if (!k->ids_.empty() && k->ids_.back() == ids[i])
      throw Error(ErrorCode::InvalidInput, "duplicate vertex id '" + ids[i] + "'");
    k->ids_.push_back(std::move(ids[i]));
    k->points_.push_back(std::move(points[i]));
  }
  for (auto& s : simplices) {
    for (auto& v : s) v = rank[v];
    std::sort(s.begin(), s.end());
  }
  std::sort(simplices.begin(), simplices.end(), [](const Simplex& a, const Simplex& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  simplices.erase(std::unique(simplices.begin(), simplices.end()), simplices.end());
  k->simplices_ = std::move(simplices);
  if (provenance) {
    std::vector<SimplexIndex> src(order.size());
    for (VertexIndex r = 0; r < order.size(); ++r) src[r] = provenance->vertex_source[order[r]];
    provenance->vertex_source = std::move(src);
    k->provenance_ = std::move(provenance);
  }
  k->index();
  return k;
}

namespace {

bool boxes_overlap(const std::pair<std::vector<double>, std::vector<double>>& a,
                   const std::pair<std::vector<double>, std::vector<double>>& b) {
  for (std::size_t i = 0; i < a.first.size(); ++i)
    if (a.second[i] < b.first[i] || b.second[i] < a.first[i]) return false;
  return true;
}

// True when conv(a) and conv(b) meet outside conv(common vertices).
bool improper_intersection(const std::vector<Point>& a, const std::vector<bool>& a_shared,
                           const std::vector<Point>& b) {
  const std::size_t n = a[0].dim();
  const std::size_t vars = a.size() + b.size();
  Matrix m(n + 2, std::vector<Rational>(vars));
  std::vector<Rational> rhs(n + 2);
  std::vector<Rational> c(vars);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t k = 0; k < n; ++k) m[k][i] = a[i][k];
    m[n][i] = 1;
    if (!a_shared[i]) c[i] = 1;
  }
  for (std::size_t j = 0; j < b.size(); ++j) {
    for (std::size_t k = 0; k < n; ++k) m[k][a.size() + j] = -b[j][k];
    m[n + 1][a.size() + j] = 1;
  }
  rhs[n] = 1;
  rhs[n + 1] = 1;
  const auto r = lp_maximize(m, rhs, c);
  return r.status == LpStatus::Optimal && r.value.sign() > 0;
}

}  // namespace

ValidationReport Complex::check(const RawComplex& raw) {
  ValidationReport report;
  auto issue = [&](ErrorCode code, std::string msg) { report.issues.push_back({code, std::move(msg)}); };

  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < raw.vertices.size(); ++i) {
    const auto& [id, p] = raw.vertices[i];
    if (!index.emplace(id, i).second) issue(ErrorCode::InvalidInput, "duplicate vertex id '" + id + "'");
    if (p.dim() != raw.ambient_dim)
      issue(ErrorCode::DimensionMismatch, "vertex '" + id + "' has dimension " + std::to_string(p.dim()) +
                                              ", expected " + std::to_string(raw.ambient_dim));
  }
  if (!report.ok()) return report;

  std::set<std::vector<std::string>> listed;
  for (const auto& [id, p] : raw.vertices) listed.insert({id});
  std::vector<std::vector<std::string>> tuples;
  for (const auto& s : raw.simplices) {
    std::vector<std::string> t = s;
    std::sort(t.begin(), t.end());
    std::string name;
    for (const auto& id : t) name += (name.empty() ? "" : ".") + id;
    bool fine = !t.empty();
    if (t.empty()) issue(ErrorCode::DegenerateSimplex, "empty simplex");
    for (const auto& id : t)
      if (!index.count(id)) {
        issue(ErrorCode::UnknownVertex, "simplex " + name + " uses unknown vertex '" + id + "'");
        fine = false;
      }
    if (std::adjacent_find(t.begin(), t.end()) != t.end()) {
      issue(ErrorCode::DegenerateSimplex, "simplex " + name + " repeats a vertex");
      fine = false;
    }
    if (!fine) continue;
    std::vector<Point> pts;
    for (const auto& id : t) pts.push_back(raw.vertices[index[id]].second);
    if (!affine_independent(pts)) {
      issue(ErrorCode::DegenerateSimplex, "simplex " + name + " has affinely dependent vertices");
      continue;
    }
    listed.insert(t);
    tuples.push_back(std::move(t));
  }
  if (!report.ok()) return report;

  std::set<std::vector<std::string>> closed = listed;
  for (const auto& t : tuples) {
    const unsigned n = static_cast<unsigned>(t.size());
    for (unsigned mask = 1; mask + 1 < (1u << n); ++mask) {
      std::vector<std::string> f;
      for (unsigned i = 0; i < n; ++i)
        if (mask & (1u << i)) f.push_back(t[i]);
      if (!raw.close_under_faces && !listed.count(f)) {
        std::string name;
        for (const auto& id : f) name += (name.empty() ? "" : ".") + id;
        issue(ErrorCode::NotFaceClosed, "face " + name + " is missing");
        listed.insert(f);
      }
      closed.insert(std::move(f));
    }
  }

  // Maximal tuples, then pairwise intersection tests on them.
  std::vector<std::vector<std::string>> maximal;
  for (const auto& t : closed) {
    bool is_max = true;
    for (const auto& u : closed)
      if (u.size() > t.size() && std::includes(u.begin(), u.end(), t.begin(), t.end())) {
        is_max = false;
        break;
      }
    if (is_max) maximal.push_back(t);
  }
  std::vector<std::vector<Point>> pts(maximal.size());
  std::vector<std::pair<std::vector<double>, std::vector<double>>> boxes;
  for (std::size_t i = 0; i < maximal.size(); ++i) {
    for (const auto& id : maximal[i]) pts[i].push_back(raw.vertices[index[id]].second);
    boxes.push_back(double_box(pts[i]));
  }
  for (std::size_t i = 0; i < maximal.size(); ++i) {
    for (std::size_t j = i + 1; j < maximal.size(); ++j) {
      if (!boxes_overlap(boxes[i], boxes[j])) continue;
      std::vector<bool> shared(maximal[i].size());
      for (std::size_t a = 0; a < maximal[i].size(); ++a)
        shared[a] = std::binary_search(maximal[j].begin(), maximal[j].end(), maximal[i][a]);
      if (improper_intersection(pts[i], shared, pts[j])) {
        auto name = [](const std::vector<std::string>& t) {
          std::string s;
          for (const auto& id : t) s += (s.empty() ? "" : ".") + id;
          return s;
        };
        issue(ErrorCode::BadIntersection,
              "simplices " + name(maximal[i]) + " and " + name(maximal[j]) + " do not meet in a common face");
      }
    }
  }
  return report;
}

ComplexPtr Complex::validate(const RawComplex& raw) {
  const auto report = check(raw);
  if (!report.ok()) throw Error(report.issues.front().code, report.issues.front().message);
  std::vector<std::string> ids;
  std::vector<Point> points;
  std::map<std::string, VertexIndex> index;
  for (const auto& [id, p] : raw.vertices) {
    index.emplace(id, static_cast<VertexIndex>(ids.size()));
    ids.push_back(id);
    points.push_back(p);
  }
  std::set<Simplex> all;
  for (VertexIndex v = 0; v < ids.size(); ++v) all.insert({v});
  for (const auto& s : raw.simplices) {
    Simplex t;
    for (const auto& id : s) t.push_back(index.at(id));
    std::sort(t.begin(), t.end());
    const unsigned n = static_cast<unsigned>(t.size());
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
      Simplex f;
      for (unsigned i = 0; i < n; ++i)
        if (mask & (1u << i)) f.push_back(t[i]);
      all.insert(std::move(f));
    }
  }
  return assemble(raw.ambient_dim, std::move(ids), std::move(points), std::vector<Simplex>(all.begin(), all.end()));
}

std::pair<std::vector<double>, std::vector<double>> double_box(std::span<const Point> pts) {
  const std::size_t n = pts.empty() ? 0 : pts[0].dim();
  std::vector<double> lo(n, 0.0), hi(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    lo[k] = hi[k] = pts[0][k].to_double();
    for (const auto& p : pts) {
      const double v = p[k].to_double();
      lo[k] = std::min(lo[k], v);
      hi[k] = std::max(hi[k], v);
    }
    lo[k] -= 1e-9 * (1.0 + std::abs(lo[k]));
    hi[k] += 1e-9 * (1.0 + std::abs(hi[k]));
  }
  return {lo, hi};
}

}  // namespace plsurj
