#include "plsurj/pipeline.hpp"

#include <algorithm>
#include <map>

#include "plsurj/sampling.hpp"
#include "plsurj/subdivision.hpp"

namespace plsurj {

namespace fs = std::filesystem;

namespace {

std::string bare_message(const Error& e) {
  const std::string what = e.what();
  const std::size_t skip = error_code_name(e.code()).size() + 2;
  return what.size() >= skip ? what.substr(skip) : what;
}

template <class F>
auto staged(const char* stage, F&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    throw Error(e.code(), std::string(stage) + ": " + bare_message(e));
  }
}

/// Walks subdivision provenance `levels` times.
const Complex& ancestor(const Complex& k, int levels) {
  const Complex* c = &k;
  for (int i = 0; i < levels; ++i) {
    if (!c->provenance()) throw Error(ErrorCode::InternalCheckFailed, "missing subdivision provenance");
    c = c->provenance()->parent.get();
  }
  return *c;
}

Json margin_json(const std::optional<Rational>& m) { return m ? Json(m->str()) : Json(nullptr); }

Json certificate_to_json(const StarCertificate& cert, const Complex& dom, const Complex& cod) {
  Json out = Json::array();
  for (const auto& e : cert.entries)
    out.push_back(Json{{"vertex", dom.vertex_id(e.vertex)},
                       {"target", cod.vertex_id(e.target)},
                       {"margin2", margin_json(e.margin)},
                       {"exact", e.exact}});
  return out;
}

Json witnesses_to_json(const SurjectiveApproxResult& r) {
  const Complex& kw = *r.working;
  const Complex& k = ancestor(kw, r.kappa_star);
  Json out = Json::array();
  for (const auto& w : r.witnesses)
    out.push_back(Json{{"tau", r.codomain->simplex_name(w.witness.tau)},
                       {"sigma", k.simplex_name(w.witness.sigma)},
                       {"x", point_to_json(w.witness.x)},
                       {"cell", kw.simplex_name(w.sigma)},
                       {"barycentre", r.domain->vertex_id(w.barycentre)},
                       {"reassigned", r.domain->simplex_name(w.sigma_prime)}});
  return out;
}

Json density_to_json(const std::optional<DensityReport>& d) {
  if (!d) return nullptr;
  return Json{{"resolution", d->resolution}, {"depth", d->depth},     {"samples", d->samples},
              {"targets", d->targets},       {"covered", d->covered}, {"passed", d->passed()}};
}

std::optional<SimplexIndex> maximal_by_name(const Complex& k, const std::string& name) {
  for (auto s : k.maximal_simplices())
    if (k.simplex_name(s) == name) return s;
  return std::nullopt;
}

}  // namespace

Rational combine_squared_bounds(const Rational& a, const Rational& b, const Rational& c) {
  const Rational s = sqrt_upper(a) + sqrt_upper(b) + sqrt_upper(c);
  return s * s;
}

MapOracle bumped(const SimplicialMap& h, VertexIndex vertex, const Point& offset) {
  auto imgs = h.pl().images();
  if (vertex >= imgs.size()) throw Error(ErrorCode::InvalidInput, "bump vertex out of range");
  imgs[vertex] += offset;
  return MapOracle::from_pl(PlMap(h.domain(), h.codomain(), std::move(imgs)));
}

PipelineResult pipeline(const MapOracle& f, const ComplexPtr& k, const ComplexPtr& l,
                        const std::optional<Smoothing>& smoothing, const PipelineOptions& opts) {
  if (opts.eps2.sign() <= 0) throw Error(ErrorCode::InvalidInput, "epsilon must be positive");
  auto approx = staged("stage 1 (surjective approximation)",
                       [&] { return surjective_simplicial_approximation(f, k, l, opts.eps2 / 9, opts.approx); });
  auto g0 = staged("stage 2 (smoothing)",
                   [&] { return smoothing ? (*smoothing)(approx) : MapOracle::from_simplicial(approx.h); });
  auto restore = staged("stage 3 (restore surjectivity)",
                        [&] { return restore_surjectivity(approx.h, g0, opts.restore); });
  PipelineResult r{std::move(approx), std::move(g0), std::move(restore), {}, {}, {}, {}, {}};
  r.f_vs_h = *r.approx.sup;
  r.h_vs_g = r.restore.h_vs_g;
  r.squeeze_mesh2 = squared_mesh(*r.approx.codomain);
  r.final_hi2 = combine_squared_bounds(r.f_vs_h.hi2, r.h_vs_g.hi2, r.squeeze_mesh2);
  const Complex& dom = *r.approx.domain;
  for (VertexIndex v = 0; v < dom.vertex_count(); ++v) {
    const Rational d = squared_distance(f.evaluate(dom.point(v)), r.restore.result.evaluate(dom.point(v)));
    if (d > r.final_lo2) r.final_lo2 = d;
  }
  if (!(r.final_hi2 < opts.eps2))
    throw Error(ErrorCode::SupBoundNotMet, "final: combined squared bound " + r.final_hi2.str() +
                                               " is not below " + opts.eps2.str());
  return r;
}

Json inputs_to_json(const InputRecord& in) {
  auto paths = [](const std::vector<fs::path>& ps) {
    Json out = Json::array();
    for (const auto& p : ps) out.push_back(p.generic_string());
    return out;
  };
  Json out{{"domain", in.domain.generic_string()}, {"codomain", in.codomain.generic_string()}, {"map", paths(in.map)}};
  if (!in.g0.empty()) out["g0"] = paths(in.g0);
  if (in.bump) out["bump"] = Json{{"vertex", in.bump->vertex}, {"offset", point_to_json(in.bump->offset)}};
  if (in.squared_lipschitz) out["lipschitz2"] = in.squared_lipschitz->str();
  out["digest"] = in.digest;
  return out;
}

InputRecord inputs_from_json(const Json& j) {
  InputRecord in;
  in.domain = j.at("domain").get<std::string>();
  in.codomain = j.at("codomain").get<std::string>();
  for (const auto& p : j.at("map")) in.map.emplace_back(p.get<std::string>());
  if (j.contains("g0"))
    for (const auto& p : j.at("g0")) in.g0.emplace_back(p.get<std::string>());
  if (j.contains("bump"))
    in.bump = BumpRecord{j.at("bump").at("vertex").get<std::string>(), point_from_json(j.at("bump").at("offset"))};
  if (j.contains("lipschitz2")) in.squared_lipschitz = rational_from_json(j.at("lipschitz2"));
  in.digest = j.value("digest", "");
  return in;
}

Json approximation_to_json(const Approximation& a, int ell, const std::optional<SupInterval>& sup) {
  Json out{{"kappa", a.kappa},
           {"ell", ell},
           {"vertex_table", vertex_table_to_json(a.h)},
           {"certificate", certificate_to_json(a.certificate, *a.domain, *a.h.codomain())}};
  out["sup"] = sup ? interval_to_json(*sup) : Json(nullptr);
  return out;
}

Json surjectivize_to_json(const SurjectiveApproxResult& r) {
  Json out{{"kappa_star", r.kappa_star},
           {"kappa", r.kappa},
           {"ell", r.ell},
           {"descended_was_not_surjective", r.descended_was_not_surjective},
           {"vertex_table", vertex_table_to_json(r.h)},
           {"witnesses", witnesses_to_json(r)},
           {"certificate", certificate_to_json(r.certificate, *r.working, *r.codomain)},
           {"second_star_entries", r.second_star.size()}};
  out["sup"] = r.sup ? interval_to_json(*r.sup) : Json(nullptr);
  return out;
}

Json pipeline_to_json(const PipelineResult& r) {
  Json checks = Json::array();
  for (const auto& c : r.restore.checks)
    checks.push_back(Json{{"name", c.name}, {"passed", c.passed}, {"value", c.value.str()}, {"bound", c.bound.str()}});
  Json ratios = Json::object();
  const SqueezeMap& pi = r.restore.result.squeeze();
  for (auto tau : pi.factors()) ratios[pi.complex()->simplex_name(tau)] = pi.ratio(tau).str();
  return Json{
      {"kappa_star", r.approx.kappa_star},
      {"kappa", r.approx.kappa},
      {"ell", r.approx.ell},
      {"vertex_table", vertex_table_to_json(r.approx.h)},
      {"witnesses", witnesses_to_json(r.approx)},
      {"stages",
       Json{{"f_vs_h", interval_to_json(r.f_vs_h)},
            {"h_vs_g", interval_to_json(r.h_vs_g)},
            {"squeeze_mesh2", r.squeeze_mesh2.str()},
            {"f_vs_result",
             Json{{"lo2", r.final_lo2.str()}, {"hi2", r.final_hi2.str()}, {"hi2_decimal", to_decimal(r.final_hi2)}}}}},
      {"restore",
       Json{{"binding", r.restore.budget.binding},
            {"recommended2", r.restore.budget.recommended.str()},
            {"checks", checks},
            {"h_vs_result_hi2", r.restore.h_vs_result_hi2.str()},
            {"ratios", ratios}}},
      {"density", density_to_json(r.restore.density)}};
}

bool Verdict::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

Verdict verify(const Json& doc, const fs::path& base_dir, unsigned depth) {
  Verdict v;
  auto add = [&](std::string name, bool ok, std::string detail = "") {
    v.checks.push_back({std::move(name), ok, std::move(detail)});
  };
  std::string kind;
  InputRecord in;
  try {
    kind = doc.at("kind").get<std::string>();
    in = inputs_from_json(doc.at("inputs"));
  } catch (const std::exception& e) {
    add("result document readable", false, e.what());
    return v;
  }
  const bool surjective_kind = kind == "surjectivize" || kind == "pipeline";

  Loader loader;
  ComplexPtr k, l, dom, cod;
  std::optional<MapOracle> f;
  std::optional<SimplicialMap> h;
  try {
    k = loader.complex(base_dir / in.domain);
    l = loader.complex(base_dir / in.codomain);
    std::vector<fs::path> chain;
    for (const auto& p : in.map) chain.push_back(base_dir / p);
    f = loader.chain(chain, in.squared_lipschitz);
    dom = sd_k(k, doc.at("kappa").get<int>());
    cod = sd_k(l, doc.at("ell").get<int>());
    f = f->with_codomain(cod);
  } catch (const std::exception& e) {
    add("inputs load", false, e.what());
    return v;
  }
  try {
    h = vertex_table_from_json(doc.at("vertex_table"), dom, cod);
    add("vertex table is simplicial", true);
  } catch (const std::exception& e) {
    add("vertex table is simplicial", false, e.what());
  }
  if (surjective_kind) {
    if (h) {
      const auto s = is_surjective(*h);
      add("h is surjective", s.surjective, std::to_string(s.uncovered.size()) + " uncovered");
    } else {
      add("h is surjective", false, "no simplicial map to check");
    }
  }

  std::optional<Rational> eps2;
  if (doc.contains("eps2") && !doc.at("eps2").is_null()) eps2 = rational_from_json(doc.at("eps2"));
  std::optional<Rational> recorded_hi2;
  if (kind == "pipeline")
    recorded_hi2 = rational_from_json(doc.at("stages").at("f_vs_h").at("hi2"));
  else if (doc.contains("sup") && !doc.at("sup").is_null())
    recorded_hi2 = rational_from_json(doc.at("sup").at("hi2"));

  // Sample sets: vertices and depth-fold barycentres of every top cell.
  std::vector<std::pair<SimplexIndex, Point>> samples;
  for (auto c : dom->maximal_simplices()) {
    for (const auto& p : dom->points_of(c)) samples.emplace_back(c, p);
    for (auto& p : barycentre_sample(cell_of(*dom, c), depth)) samples.emplace_back(c, std::move(p));
  }

  if (h) {
    Rational worst;
    bool star_ok = true;
    std::string star_detail;
    for (const auto& [c, x] : samples) {
      const Point fx = f->evaluate(x);
      const Rational d = squared_distance(fx, h->evaluate(x));
      if (d > worst) worst = d;
      const auto car = cod->locator().carrier(fx);
      if (!car) {
        star_ok = false;
        star_detail = "f leaves |L|";
        continue;
      }
      const Simplex& cv = cod->simplex(car->cell);
      // Each sample of the open top cell c lies in the open star of every vertex of c.
      for (auto u : dom->simplex(c)) {
        const VertexIndex w = h->target(u);
        bool in = std::binary_search(cv.begin(), cv.end(), w);
        if (!in && surjective_kind)
          in = std::any_of(cv.begin(), cv.end(), [&](VertexIndex z) {
            return cod->find_simplex(Simplex{std::min(z, w), std::max(z, w)}).has_value();
          });
        if (!in && star_ok) {
          star_ok = false;
          star_detail = "f(" + to_decimal(x[0], 6) + ", ...) leaves the star of " + cod->vertex_id(w);
        }
      }
    }
    add(surjective_kind ? "sampled f(st v) in second star of h(v)" : "sampled f(st v) in st h(v)", star_ok,
        star_detail);
    if (recorded_hi2)
      add("sampled |f-h|^2 <= recorded bound", worst <= *recorded_hi2,
          "max " + to_decimal(worst) + " vs " + to_decimal(*recorded_hi2));
    if (eps2 && kind != "pipeline") add("sampled |f-h|^2 < eps^2", worst < *eps2, "max " + to_decimal(worst));
  }

  if (kind == "pipeline") {
    try {
      std::optional<MapOracle> g0;
      if (!in.g0.empty()) {
        std::vector<fs::path> chain;
        for (const auto& p : in.g0) chain.push_back(base_dir / p);
        g0 = loader.chain(chain);
      } else if (in.bump) {
        if (!h) throw Error(ErrorCode::InvalidInput, "bump needs the simplicial map");
        g0 = bumped(*h, dom->vertex_index(in.bump->vertex), in.bump->offset);
      } else if (h) {
        g0 = MapOracle::from_simplicial(*h);
      } else {
        throw Error(ErrorCode::InvalidInput, "no g0 to rebuild");
      }
      std::map<SimplexIndex, Rational> ratios;
      for (const auto& [name, r] : doc.at("restore").at("ratios").items()) {
        const auto tau = maximal_by_name(*cod, name);
        if (!tau) throw Error(ErrorCode::InvalidInput, "unknown squeezed simplex " + name);
        ratios[*tau] = rational_from_json(r);
      }
      const SqueezeMap pi(cod, std::move(ratios));
      const Rational hg_hi2 = rational_from_json(doc.at("stages").at("h_vs_g").at("hi2"));
      Rational worst_final, worst_hg;
      for (const auto& [c, x] : samples) {
        const Point gx = g0->evaluate(x);
        if (h) worst_hg = std::max(worst_hg, squared_distance(h->evaluate(x), gx));
        worst_final = std::max(worst_final, squared_distance(f->evaluate(x), pi.evaluate(gx)));
      }
      add("sampled |h-g0|^2 <= recorded bound", worst_hg <= hg_hi2,
          "max " + to_decimal(worst_hg) + " vs " + to_decimal(hg_hi2));
      if (eps2) add("sampled |f-pi g0|^2 < eps^2", worst_final < *eps2, "max " + to_decimal(worst_final));
    } catch (const std::exception& e) {
      add("squeezed map rebuild", false, e.what());
    }
  }
  return v;
}

}  // namespace plsurj
