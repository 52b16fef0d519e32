#include "plsurj/surjectivize.hpp"

#include <algorithm>

namespace plsurj {

namespace {

[[noreturn]] void check_failed(const std::string& what) { throw Error(ErrorCode::InternalCheckFailed, what); }

SimplicialMap simplicial_or_trap(const ComplexPtr& dom, const ComplexPtr& cod, std::vector<VertexIndex> targets) {
  try {
    return SimplicialMap::from_targets(dom, cod, std::move(targets));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NotSimplicial) throw;
    check_failed(std::string("reassigned map is not simplicial: ") + e.what());
  }
}

bool is_face_of(const Simplex& face, const Simplex& of) {
  return std::includes(of.begin(), of.end(), face.begin(), face.end());
}

}  // namespace

SurjectiveApproxResult surjectivize(const MapOracle& f, const ComplexPtr& k, const ComplexPtr& l,
                                    const VertexOrder& order, const ApproxBudgets& budgets) {
  const auto ws = find_witnesses(f, *k, *l, budgets.witness_depth);
  int floor = separate_witnesses(ws, k, 0, budgets.simplices).kappa;

  SurjectiveApproxResult r;
  std::vector<SimplexIndex> sigma_cells;
  Approximation approx;
  while (true) {
    approx = simplicial_approximation(f, k, l, budgets.kappa_max, order, floor, budgets.simplices);
    if (auto cells = match_witness_cells(*approx.domain, ws)) {
      sigma_cells = std::move(*cells);
      break;
    }
    floor = approx.kappa + 1;
  }
  r.kappa_star = approx.kappa;
  r.kappa = approx.kappa + 2;
  r.working = approx.domain;
  r.codomain = l;
  r.h0 = approx.h;
  r.certificate = std::move(approx.certificate);
  r.domain = sd_k(r.working, 2, budgets.simplices);
  r.h_star = descend_map(r.h0, r.domain, order);
  r.descended_was_not_surjective = !is_surjective(r.h_star).surjective;

  const Complex& kw = *r.working;
  const Complex& ks = *r.domain;
  const Complex& lc = *l;
  std::vector<VertexIndex> targets = r.h_star.targets();
  for (std::size_t i = 0; i < ws.size(); ++i) {
    const SimplexIndex sigma = sigma_cells[i];
    const VertexIndex b = ks.vertex_index(barycentre_id(kw.ids_of(sigma)));
    const std::size_t dim = kw.simplex_dim(sigma);
    SimplexIndex sigma_prime = 0;
    bool found = false;
    for (auto c : ks.cofaces(b))
      if (ks.simplex_dim(c) == dim) {
        sigma_prime = c;
        found = true;
        break;
      }
    if (!found) check_failed("no top cell through the barycentre of " + kw.simplex_name(sigma));
    const auto omega = order.sorted(lc.simplex(ws[i].tau));
    const std::size_t d = omega.size() - 1;
    targets[b] = omega[0];
    std::size_t next = 1;
    for (auto v : ks.simplex(sigma_prime)) {
      if (v == b) continue;
      targets[v] = next <= d ? omega[next++] : omega[0];
    }
    r.witnesses.push_back({ws[i], sigma, b, sigma_prime});
  }
  r.h = simplicial_or_trap(r.domain, l, std::move(targets));

  // Each final top cell, with the working cell whose interior carries it.
  std::vector<std::optional<std::size_t>> owner(ks.simplex_count());
  std::vector<std::optional<std::size_t>> witness_of(kw.simplex_count());
  for (std::size_t i = 0; i < r.witnesses.size(); ++i) witness_of[r.witnesses[i].sigma] = i;
  std::vector<bool> reassigned(ks.vertex_count(), false);
  for (const auto& w : r.witnesses)
    for (auto v : ks.simplex(w.sigma_prime)) reassigned[v] = true;

  for (auto c : ks.maximal_simplices()) {
    const auto anc = ancestor_carrier(ks, c, kw);
    if (!anc) check_failed("lost subdivision provenance");
    owner[c] = witness_of[*anc];
  }
  for (std::size_t i = 0; i < r.witnesses.size(); ++i) {
    const auto& w = r.witnesses[i];
    const Simplex& tau = lc.simplex(w.witness.tau);
    if (r.h.image_of_simplex(w.sigma_prime) != w.witness.tau)
      check_failed("reassigned cell does not cover " + lc.simplex_name(w.witness.tau));
    for (auto c : ks.maximal_simplices())
      if (owner[c] == i && !is_face_of(lc.simplex(r.h.image_of_simplex(c)), tau))
        check_failed("image of " + kw.simplex_name(w.sigma) + " leaves " + lc.simplex_name(w.witness.tau));
  }
  for (VertexIndex v = 0; v < ks.vertex_count(); ++v)
    if (!reassigned[v] && r.h.target(v) != r.h_star.target(v)) check_failed("vertex table changed outside the witnesses");
  for (auto c : ks.maximal_simplices()) {
    if (owner[c]) continue;
    const Point x = barycentre(ks.points_of(c));
    if (r.h.evaluate(x) != r.h_star.evaluate(x)) check_failed("map changed outside the witness cells");
  }
  if (!is_surjective(r.h).surjective) check_failed("reassigned map is not surjective");

  for (VertexIndex v = 0; v < ks.vertex_count(); ++v) {
    const SimplexIndex c = minimal_carrier(ks, v, kw);
    const VertexIndex centre = r.h_star.target(v);
    std::optional<VertexIndex> via;
    for (auto u : kw.simplex(c))
      if (r.h0.target(u) == centre) {
        via = u;
        break;
      }
    if (!via) check_failed("descended value is not a carrier value");
    const VertexIndex hv = r.h.target(v);
    Simplex edge{std::min(hv, centre), std::max(hv, centre)};
    if (hv == centre) edge.pop_back();
    if (!lc.find_simplex(edge)) check_failed("vertex " + ks.vertex_id(v) + " leaves the second star");
    r.second_star.push_back({v, *via, centre});
  }
  return r;
}

SurjectiveApproxResult surjective_simplicial_approximation(const MapOracle& f, const ComplexPtr& k,
                                                           const ComplexPtr& l, const Rational& eps2,
                                                           const ApproxBudgets& budgets) {
  if (eps2.sign() <= 0) throw Error(ErrorCode::InvalidInput, "epsilon must be positive");
  auto [ell, fine] = fine_codomain(l, eps2 / 9, budgets.simplices);
  const VertexOrder order = VertexOrder::lexicographic(*fine);
  auto r = surjectivize(f.with_codomain(fine), k, fine, order, budgets);
  r.ell = ell;
  SupBudget sb = budgets.sup;
  sb.target2 = eps2;
  r.sup = certified_sup_distance(f, MapOracle::from_simplicial(r.h), sb);
  if (!(r.sup->hi2 < eps2))
    throw Error(ErrorCode::SupBoundNotMet, "certified squared sup bound " + r.sup->hi2.str() + " is not below " +
                                               eps2.str());
  return r;
}

}  // namespace plsurj
