#include "plsurj/squeezing.hpp"

#include <algorithm>

#include "plsurj/stars.hpp"
#include "plsurj/subdivision.hpp"

namespace plsurj {

namespace {

Point squeeze_point(const std::vector<AffineForm>& forms, const Point& b, const Rational& r, const Point& x) {
  const Rational keep = Rational(1) - r;
  bool inner = true;
  for (const auto& h : forms)
    if (h(x) < keep * h(b)) {
      inner = false;
      break;
    }
  if (inner) return b + (x - b) * (Rational(1) / r);
  return b + (x - b) * ray_exit_factor(b, x, forms);
}

}  // namespace

std::vector<AffineForm> facet_functionals(std::span<const Point> simplex) {
  if (simplex.size() < 2) throw Error(ErrorCode::DegenerateSimplex, "facet forms need a simplex of dimension >= 1");
  return SimplexFrame(std::vector<Point>(simplex.begin(), simplex.end())).coordinate_forms();
}

Point radial_retraction(std::span<const Point> simplex, const Point& z, const Point& x) {
  const auto forms = facet_functionals(simplex);
  return z + (x - z) * ray_exit_factor(z, x, forms);
}

Point homothety(std::span<const Point> simplex, const Rational& r, const Point& x) {
  const Point b = barycentre(simplex);
  return b + (x - b) * r;
}

Point pi_tau(std::span<const Point> simplex, const Rational& r, const Point& x) {
  if (r.sign() <= 0 || r >= 1) throw Error(ErrorCode::EpsilonTooLarge, "ratio must lie in (0, 1)");
  SimplexFrame frame(std::vector<Point>(simplex.begin(), simplex.end()));
  if (!frame.contains(x)) throw Error(ErrorCode::OutsideSimplex, "point is not in the simplex");
  return squeeze_point(facet_functionals(simplex), barycentre(simplex), r, x);
}

Rational squared_inradius_at_barycentre(std::span<const Point> simplex) {
  if (simplex.size() < 2) throw Error(ErrorCode::DegenerateSimplex, "a vertex has no boundary distance");
  const Point b = barycentre(simplex);
  std::optional<Rational> best;
  for (std::size_t skip = 0; skip < simplex.size(); ++skip) {
    std::vector<Point> facet;
    for (std::size_t i = 0; i < simplex.size(); ++i)
      if (i != skip) facet.push_back(simplex[i]);
    const Rational d = squared_distance_point_simplex(b, facet);
    if (!best || d < *best) best = d;
  }
  return *best;
}

SqueezeMap::SqueezeMap(ComplexPtr l, const Rational& r) : l_(std::move(l)) {
  for (auto m : l_->maximal_simplices())
    if (l_->simplex_dim(m) >= 1) ratios_[m] = r;
  check();
}

SqueezeMap::SqueezeMap(ComplexPtr l, std::map<SimplexIndex, Rational> ratios)
    : l_(std::move(l)), ratios_(std::move(ratios)) {
  check();
}

void SqueezeMap::check() {
  for (auto m : l_->maximal_simplices()) {
    if (l_->simplex_dim(m) == 0) continue;
    auto it = ratios_.find(m);
    if (it == ratios_.end()) throw Error(ErrorCode::InvalidInput, "no ratio for " + l_->simplex_name(m));
    if (it->second.sign() <= 0 || it->second >= 1)
      throw Error(ErrorCode::EpsilonTooLarge, "ratio " + it->second.str() + " for " + l_->simplex_name(m) +
                                                  " is outside (0, 1)");
    factors_.push_back(m);
  }
}

Point SqueezeMap::apply_factor(SimplexIndex tau, const Point& x) const {
  const auto c = l_->locator().carrier(x);
  if (!c) throw Error(ErrorCode::OutsideDomain, "point is outside |L|");
  if (c->cell != tau) return x;
  const auto& frame = l_->frame(tau);
  return squeeze_point(frame.coordinate_forms(), barycentre(frame.vertices()), ratios_.at(tau), x);
}

Point SqueezeMap::evaluate(const Point& x) const {
  const auto c = l_->locator().carrier(x);
  if (!c) throw Error(ErrorCode::OutsideDomain, "point is outside |L|");
  // Factors act on disjoint open simplices, so only the carrier's factor moves x.
  if (!l_->is_maximal(c->cell) || l_->simplex_dim(c->cell) == 0) return x;
  const auto& frame = l_->frame(c->cell);
  return squeeze_point(frame.coordinate_forms(), barycentre(frame.vertices()), ratios_.at(c->cell), x);
}

Point SqueezeMap::evaluate_in_order(const Point& x, const std::vector<SimplexIndex>& order) const {
  Point y = x;
  for (auto tau : order) y = apply_factor(tau, y);
  return y;
}

EpsilonBudget epsilon_budget(const Complex& l) {
  EpsilonBudget out;
  std::optional<Rational> eps1, eps_star_min, delta_min;
  for (auto tau : l.maximal_simplices()) {
    if (l.simplex_dim(tau) == 0) continue;
    const auto pts = l.points_of(tau);
    SimplexBudget row{tau, squared_inradius_at_barycentre(pts), squared_diameter(pts), 0, std::nullopt};
    row.squared_eps_star = row.squared_delta * row.squared_delta / (row.squared_diameter * 4);
    const auto star = star_of_subcomplex(l, {tau}, l.simplex_name(tau));
    const auto& tv = l.simplex(tau);
    std::vector<SimplexIndex> closure;
    for (auto s : star.open_cells)
      for (auto f : l.faces(s)) closure.push_back(f);
    std::sort(closure.begin(), closure.end());
    closure.erase(std::unique(closure.begin(), closure.end()), closure.end());
    for (auto f : closure) {
      const auto& fv = l.simplex(f);
      const bool touches = std::any_of(fv.begin(), fv.end(),
                                       [&](VertexIndex v) { return std::binary_search(tv.begin(), tv.end(), v); });
      if (touches) continue;
      const Rational d = squared_distance_simplex_simplex(pts, l.points_of(f));
      if (!row.squared_eps1 || d < *row.squared_eps1) row.squared_eps1 = d;
    }
    if (row.squared_eps1 && (!eps1 || *row.squared_eps1 < *eps1)) eps1 = row.squared_eps1;
    if (!eps_star_min || row.squared_eps_star < *eps_star_min) eps_star_min = row.squared_eps_star;
    if (!delta_min || row.squared_delta < *delta_min) delta_min = row.squared_delta;
    out.simplices.push_back(std::move(row));
  }
  if (out.simplices.empty()) throw Error(ErrorCode::ZeroDimensionalL, "L has no maximal simplex of dimension >= 1");
  out.squared_eps1 = eps1 ? *eps1 : Rational(1);
  out.squared_eps3 = *eps_star_min / 4;
  out.squared_mesh_cap = squared_mesh(l);
  out.squared_delta_min = *delta_min;
  out.recommended = out.squared_eps1;
  out.binding = "eps1";
  if (out.squared_eps3 < out.recommended) {
    out.recommended = out.squared_eps3;
    out.binding = "eps3";
  }
  if (out.squared_mesh_cap < out.recommended) {
    out.recommended = out.squared_mesh_cap;
    out.binding = "mesh";
  }
  return out;
}

std::map<SimplexIndex, Rational> squeeze_ratios(const Complex& l, const EpsilonBudget& budget) {
  std::map<SimplexIndex, Rational> out;
  for (const auto& row : budget.simplices) {
    const Rational q = budget.recommended / row.squared_delta;
    Rational r;
    for (unsigned bits = 48; r.sign() == 0 && bits <= 4096; bits *= 2) r = sqrt_lower(q, bits);
    if (r.sign() == 0 || r >= 1)
      throw Error(ErrorCode::EpsilonTooLarge, "no valid ratio for " + l.simplex_name(row.tau));
    out[row.tau] = r;
  }
  return out;
}

StarRetraction::StarRetraction(ComplexPtr l, SimplexIndex tau, Rational squared_eps1)
    : l_(std::move(l)), tau_(tau), squared_eps1_(std::move(squared_eps1)) {
  if (tau_ >= l_->simplex_count()) throw Error(ErrorCode::InvalidInput, "simplex index out of range");
}

std::optional<Point> StarRetraction::renormalize(const Point& x) const {
  const auto c = l_->locator().carrier(x);
  if (!c) throw Error(ErrorCode::OutsideDomain, "point is outside |L|");
  const auto& tv = l_->simplex(tau_);
  const auto& cv = l_->simplex(c->cell);
  Rational total;
  Point acc(l_->ambient_dim());
  for (std::size_t i = 0; i < cv.size(); ++i)
    if (std::binary_search(tv.begin(), tv.end(), cv[i])) {
      total += c->weights[i];
      acc += l_->point(cv[i]) * c->weights[i];
    }
  if (total.sign() == 0) return std::nullopt;
  return acc * (Rational(1) / total);
}

Point StarRetraction::evaluate(const Point& x) const {
  if (!(squared_distance_point_simplex(x, l_->points_of(tau_)) < squared_eps1_))
    throw Error(ErrorCode::OutsideU, "point is not within eps1 of " + l_->simplex_name(tau_));
  auto y = renormalize(x);
  if (!y) throw Error(ErrorCode::OutsideU, "point is outside the open star of " + l_->simplex_name(tau_));
  return *y;
}

}  // namespace plsurj
