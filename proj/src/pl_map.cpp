#include "plsurj/pl_map.hpp"

#include <algorithm>
#include <numeric>

#include "plsurj/sampling.hpp"

namespace plsurj {

Rational squared_affine_lipschitz(std::span<const Point> from, std::span<const Point> to) {
  if (from.size() != to.size()) throw Error(ErrorCode::DimensionMismatch, "affine piece vertex count");
  if (from.size() <= 1) return 0;
  Matrix e, w;
  for (std::size_t i = 1; i < from.size(); ++i) {
    e.push_back((from[i] - from[0]).coords());
    w.push_back((to[i] - to[0]).coords());
  }
  auto ginv = inverse(multiply(e, transpose(e)));
  if (!ginv) throw Error(ErrorCode::DegenerateSimplex, "affinely dependent simplex");
  const Matrix ww = multiply(w, transpose(w));
  Rational trace;
  for (std::size_t i = 0; i < ww.size(); ++i)
    for (std::size_t j = 0; j < ww.size(); ++j) trace += (*ginv)[i][j] * ww[j][i];
  return trace;
}

PlMap::PlMap(ComplexPtr domain, ComplexPtr codomain, std::vector<Point> images)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), images_(std::move(images)) {
  if (images_.size() != domain_->vertex_count())
    throw Error(ErrorCode::InvalidInput, "one image per domain vertex required");
  for (VertexIndex v = 0; v < images_.size(); ++v) {
    if (images_[v].dim() != codomain_->ambient_dim())
      throw Error(ErrorCode::DimensionMismatch, "image of '" + domain_->vertex_id(v) + "' has the wrong dimension");
    if (!codomain_->locator().carrier(images_[v]))
      throw Error(ErrorCode::OutsideDomain, "image of '" + domain_->vertex_id(v) + "' lies outside the codomain");
  }
  for (auto m : domain_->maximal_simplices()) {
    std::vector<Point> to;
    for (auto v : domain_->simplex(m)) to.push_back(images_[v]);
    squared_lipschitz_ = max(squared_lipschitz_, squared_affine_lipschitz(domain_->points_of(m), to));
  }
}

Point PlMap::evaluate(const Point& x) const {
  auto c = domain_->locator().carrier(x);
  if (!c) throw Error(ErrorCode::OutsideDomain, "point lies outside the domain");
  const auto& verts = domain_->simplex(c->cell);
  Point out(codomain_->ambient_dim());
  for (std::size_t i = 0; i < verts.size(); ++i) out += images_[verts[i]] * c->weights[i];
  return out;
}

std::optional<std::vector<Point>> PlMap::affine_images(std::span<const Point> pts) const {
  if (pts.empty()) return std::vector<Point>{};
  const Point centre = barycentre(pts);
  for (auto m : domain_->locator().containing_maximal(centre)) {
    const auto& frame = domain_->frame(m);
    std::vector<Point> out;
    bool inside = true;
    for (const auto& p : pts) {
      auto lambda = frame.barycentric(p);
      if (!lambda) {
        inside = false;
        break;
      }
      Point img(codomain_->ambient_dim());
      const auto& verts = domain_->simplex(m);
      for (std::size_t i = 0; i < verts.size(); ++i)
        if (!(*lambda)[i].is_zero()) img += images_[verts[i]] * (*lambda)[i];
      out.push_back(std::move(img));
    }
    if (inside) return out;
  }
  return std::nullopt;
}

VertexOrder VertexOrder::lexicographic(const Complex& l) {
  std::vector<VertexIndex> idx(l.vertex_count());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](VertexIndex a, VertexIndex b) {
    if (l.point(a) != l.point(b)) return l.point(a) < l.point(b);
    return l.vertex_id(a) < l.vertex_id(b);
  });
  VertexOrder o;
  o.rank_.resize(idx.size());
  for (std::size_t r = 0; r < idx.size(); ++r) o.rank_[idx[r]] = r;
  return o;
}

VertexOrder VertexOrder::from_ids(const Complex& l, const std::vector<std::string>& ids) {
  if (ids.size() != l.vertex_count()) throw Error(ErrorCode::InvalidInput, "vertex order must list every vertex");
  VertexOrder o;
  o.rank_.assign(l.vertex_count(), l.vertex_count());
  for (std::size_t r = 0; r < ids.size(); ++r) {
    const VertexIndex v = l.vertex_index(ids[r]);
    if (o.rank_[v] != l.vertex_count()) throw Error(ErrorCode::InvalidInput, "vertex order repeats '" + ids[r] + "'");
    o.rank_[v] = r;
  }
  return o;
}

std::vector<VertexIndex> VertexOrder::sorted(std::vector<VertexIndex> vs) const {
  std::sort(vs.begin(), vs.end(), [&](VertexIndex a, VertexIndex b) { return less(a, b); });
  return vs;
}

SimplicialMap SimplicialMap::from_targets(ComplexPtr domain, ComplexPtr codomain, std::vector<VertexIndex> targets) {
  if (targets.size() != domain->vertex_count())
    throw Error(ErrorCode::InvalidInput, "one target per domain vertex required");
  std::vector<Point> images;
  images.reserve(targets.size());
  for (auto t : targets) {
    if (t >= codomain->vertex_count()) throw Error(ErrorCode::UnknownVertex, "target index out of range");
    images.push_back(codomain->point(t));
  }
  for (auto m : domain->maximal_simplices()) {
    Simplex img;
    for (auto v : domain->simplex(m)) img.push_back(targets[v]);
    std::sort(img.begin(), img.end());
    img.erase(std::unique(img.begin(), img.end()), img.end());
    if (!codomain->find_simplex(img)) {
      std::string names;
      for (auto t : img) names += (names.empty() ? "" : ", ") + codomain->vertex_id(t);
      throw Error(ErrorCode::NotSimplicial,
                  "simplex " + domain->simplex_name(m) + " maps to {" + names + "}, which spans no simplex");
    }
  }
  SimplicialMap h;
  h.pl_ = std::make_shared<const PlMap>(std::move(domain), std::move(codomain), std::move(images));
  h.targets_ = std::move(targets);
  return h;
}

SimplexIndex SimplicialMap::image_of_simplex(SimplexIndex s) const {
  Simplex img;
  for (auto v : domain()->simplex(s)) img.push_back(targets_[v]);
  std::sort(img.begin(), img.end());
  img.erase(std::unique(img.begin(), img.end()), img.end());
  return codomain()->simplex_index(img);
}

SimplicialMap check_simplicial(const PlMap& m) {
  std::vector<VertexIndex> targets;
  targets.reserve(m.images().size());
  for (VertexIndex v = 0; v < m.images().size(); ++v) {
    auto t = m.codomain()->vertex_at(m.image(v));
    if (!t)
      throw Error(ErrorCode::NotSimplicial,
                  "image of '" + m.domain()->vertex_id(v) + "' is not a codomain vertex");
    targets.push_back(*t);
  }
  return SimplicialMap::from_targets(m.domain(), m.codomain(), std::move(targets));
}

SurjectivityReport is_surjective(const SimplicialMap& h) {
  const Complex& l = *h.codomain();
  std::vector<std::optional<SimplexIndex>> witness(l.simplex_count());
  for (SimplexIndex s = 0; s < h.domain()->simplex_count(); ++s) {
    const SimplexIndex img = h.image_of_simplex(s);
    if (l.is_maximal(img) && !witness[img]) witness[img] = s;
  }
  SurjectivityReport r;
  for (auto t : l.maximal_simplices()) {
    if (witness[t])
      r.witnesses.emplace_back(t, *witness[t]);
    else
      r.uncovered.push_back(t);
  }
  r.surjective = r.uncovered.empty();
  return r;
}

MapOracle MapOracle::from_chain(std::vector<std::shared_ptr<const PlMap>> chain,
                                std::optional<Rational> squared_lipschitz) {
  if (chain.empty()) throw Error(ErrorCode::InvalidInput, "empty map chain");
  MapOracle f;
  f.domain_ = chain.front()->domain();
  f.codomain_ = chain.back()->codomain();
  for (std::size_t i = 0; i + 1 < chain.size(); ++i)
    if (chain[i]->codomain()->ambient_dim() != chain[i + 1]->domain()->ambient_dim())
      throw Error(ErrorCode::DimensionMismatch, "consecutive chain members disagree on dimension");
  if (squared_lipschitz) {
    f.squared_lipschitz_ = *squared_lipschitz;
    f.supplied_ = true;
  } else {
    f.squared_lipschitz_ = 1;
    for (const auto& m : chain) f.squared_lipschitz_ *= m->squared_lipschitz();
  }
  f.chain_ = std::move(chain);
  return f;
}

MapOracle MapOracle::from_pl(const PlMap& m) { return from_chain({std::make_shared<const PlMap>(m)}); }

MapOracle MapOracle::from_simplicial(const SimplicialMap& h) { return from_chain({h.pl_ptr()}); }

MapOracle MapOracle::from_function(ComplexPtr domain, ComplexPtr codomain, Evaluator eval,
                                   Rational squared_lipschitz) {
  MapOracle f;
  f.domain_ = std::move(domain);
  f.codomain_ = std::move(codomain);
  f.eval_ = std::move(eval);
  f.squared_lipschitz_ = std::move(squared_lipschitz);
  f.supplied_ = true;
  return f;
}

MapOracle MapOracle::with_codomain(ComplexPtr codomain) const {
  if (codomain->ambient_dim() != codomain_->ambient_dim())
    throw Error(ErrorCode::DimensionMismatch, "codomain dimension changes");
  MapOracle f = *this;
  f.codomain_ = std::move(codomain);
  return f;
}

Point MapOracle::evaluate(const Point& x) const {
  Point cur = x;
  try {
    if (chain_.empty()) {
      if (!domain_->locator().carrier(x)) throw Error(ErrorCode::OutsideDomain, "argument outside the domain");
      cur = eval_(x);
    } else {
      for (const auto& m : chain_) cur = m->evaluate(cur);
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::OutsideDomain) throw Error(ErrorCode::OracleDomainError, e.what());
    throw;
  }
  if (cur.dim() != codomain_->ambient_dim() || !codomain_->locator().carrier(cur))
    throw Error(ErrorCode::OracleDomainError, "oracle value lies outside the codomain");
  return cur;
}

std::optional<std::vector<Point>> MapOracle::affine_images(std::span<const Point> pts) const {
  if (chain_.empty()) return std::nullopt;
  std::vector<Point> cur(pts.begin(), pts.end());
  for (const auto& m : chain_) {
    auto next = m->affine_images(cur);
    if (!next) return std::nullopt;
    cur = std::move(*next);
  }
  return cur;
}

void spot_check_lipschitz(const MapOracle& f, std::size_t pairs_per_simplex, std::uint64_t seed) {
  const Complex& k = *f.domain();
  std::uint64_t s = seed;
  for (auto m : k.maximal_simplices()) {
    const auto pts = k.points_of(m);
    const auto xs = random_points(pts, pairs_per_simplex, s++);
    const auto ys = random_points(pts, pairs_per_simplex, s++);
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const Rational lhs = squared_distance(f.evaluate(xs[i]), f.evaluate(ys[i]));
      const Rational rhs = f.squared_lipschitz() * squared_distance(xs[i], ys[i]);
      if (lhs > rhs)
        throw Error(ErrorCode::LipschitzViolation, "pair in simplex " + k.simplex_name(m) + " has |f(x)-f(y)|^2 = " +
                                                       lhs.str() + " > " + rhs.str());
    }
  }
}

}  // namespace plsurj
