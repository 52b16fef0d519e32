// plsurj: command-line front end for complexes, PL maps, surjective
// approximation and the squeezing pipeline.
//
// Exit codes: 0 success, 2 budget exhausted, 3 validation or hypothesis failure.

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "plsurj/io.hpp"
#include "plsurj/pipeline.hpp"
#include "plsurj/stars.hpp"
#include "plsurj/subdivision.hpp"
#include "plsurj/svg.hpp"

namespace fs = std::filesystem;
using namespace plsurj;

namespace {

struct Globals {
  std::size_t budget = kDefaultSimplexBudget;
  std::optional<unsigned> depth;
  std::uint64_t seed = 1;
  std::string out;
};

int exit_code(const Error& e) {
  switch (e.code()) {
    case ErrorCode::BudgetExceeded:
    case ErrorCode::SupBoundNotMet:
    case ErrorCode::WitnessNotFound:
      return 2;
    default:
      return 3;
  }
}

void emit(const Globals& g, const std::string& text) {
  if (g.out.empty())
    std::cout << text;
  else
    write_text(g.out, text);
}

void emit_json(const Globals& g, const Json& j) { emit(g, j.dump(2) + "\n"); }

/// Path as recorded in a result document: relative to the output's directory.
fs::path recorded(const Globals& g, const std::string& p) {
  const fs::path base = g.out.empty() ? fs::current_path() : fs::absolute(g.out).parent_path();
  return fs::relative(fs::absolute(p), base);
}

Rational parse_eps2(const std::string& eps) {
  const Rational e = Rational::parse(eps);
  if (e.sign() <= 0) throw Error(ErrorCode::InvalidInput, "--eps must be positive");
  return e * e;
}

Point parse_point(const std::string& text) {
  std::vector<Rational> xs;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    xs.push_back(Rational::parse(text.substr(start, comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return Point(std::move(xs));
}

struct MapArgs {
  std::vector<std::string> map;
  std::string domain;
  std::string codomain;
  std::string eps;
  std::string lipschitz2;
  int kappa_max = 6;
};

void add_map_args(CLI::App* cmd, MapArgs& a, bool eps_required) {
  cmd->add_option("--map", a.map, "PL map file; repeat to chain, applied left to right")->required();
  cmd->add_option("--domain", a.domain, "domain complex K")->required();
  cmd->add_option("--codomain", a.codomain, "codomain complex L")->required();
  auto* eps = cmd->add_option("--eps", a.eps, "approximation bound as p/q (not squared)");
  if (eps_required) eps->required();
  cmd->add_option("--lipschitz2", a.lipschitz2, "squared Lipschitz bound for the chain, spot-checked");
  cmd->add_option("--kappa-max", a.kappa_max, "largest subdivision level of K tried");
}

struct Loaded {
  Loader loader;
  ComplexPtr k, l;
  std::optional<MapOracle> f;
  InputRecord record;
};

void load_inputs(const Globals& g, const MapArgs& a, Loaded& in) {
  in.k = in.loader.complex(a.domain);
  in.l = in.loader.complex(a.codomain);
  std::vector<fs::path> chain(a.map.begin(), a.map.end());
  std::optional<Rational> lip;
  if (!a.lipschitz2.empty()) lip = Rational::parse(a.lipschitz2);
  in.f = in.loader.chain(chain, lip);
  if (lip) spot_check_lipschitz(*in.f, 16, g.seed);
  in.record.domain = recorded(g, a.domain);
  in.record.codomain = recorded(g, a.codomain);
  for (const auto& m : a.map) in.record.map.push_back(recorded(g, m));
  in.record.squared_lipschitz = lip;
}

Json document(const std::string& kind, const InputRecord& in, const std::optional<Rational>& eps2, const Json& body) {
  Json doc{{"kind", kind}, {"inputs", inputs_to_json(in)}};
  doc["eps2"] = eps2 ? Json(eps2->str()) : Json(nullptr);
  for (const auto& [key, value] : body.items()) doc[key] = value;
  return doc;
}

Json budget_table(const Complex& l, const EpsilonBudget& b) {
  Json rows = Json::array();
  for (const auto& r : b.simplices)
    rows.push_back(Json{{"simplex", l.simplex_name(r.tau)},
                        {"delta2", r.squared_delta.str()},
                        {"diameter2", r.squared_diameter.str()},
                        {"eps_star2", r.squared_eps_star.str()},
                        {"eps_star2_decimal", to_decimal(r.squared_eps_star)},
                        {"eps1_2", r.squared_eps1 ? Json(r.squared_eps1->str()) : Json(nullptr)}});
  return Json{{"simplices", rows},
              {"eps1_2", b.squared_eps1.str()},
              {"eps3_2", b.squared_eps3.str()},
              {"mesh_cap2", b.squared_mesh_cap.str()},
              {"delta_min2", b.squared_delta_min.str()},
              {"recommended2", b.recommended.str()},
              {"recommended2_decimal", to_decimal(b.recommended)},
              {"binding", b.binding}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"PL surjective approximation toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--budget-simplices", g.budget, "simplex cap for subdivisions");
  app.add_option("--depth", g.depth, "sampling depth (witnesses, density, verify)");
  app.add_option("--seed", g.seed, "seed for sampled checks");
  app.add_option("--out", g.out, "output file (stdout when omitted)");

  std::string complex_path;
  auto* validate = app.add_subcommand("validate", "validate a complex file");
  validate->add_option("--complex", complex_path)->required();

  int times = 1;
  auto* sd = app.add_subcommand("sd", "iterated barycentric subdivision");
  sd->add_option("--complex", complex_path)->required();
  sd->add_option("--times", times, "number of subdivisions");

  std::string vertex;
  bool second = false;
  auto* stars = app.add_subcommand("stars", "open star or second star of a vertex");
  stars->add_option("--complex", complex_path)->required();
  stars->add_option("--vertex", vertex)->required();
  stars->add_flag("--second", second, "star of the closed star");

  MapArgs approx_args;
  auto* approx = app.add_subcommand("approx", "simplicial approximation");
  add_map_args(approx, approx_args, false);

  MapArgs surj_args;
  auto* surj = app.add_subcommand("surjectivize", "surjective simplicial approximation");
  add_map_args(surj, surj_args, false);

  std::string ratio, points_path;
  auto* squeeze = app.add_subcommand("squeeze", "apply the squeezing map to points");
  squeeze->add_option("--complex", complex_path)->required();
  squeeze->add_option("--ratio", ratio, "homothety ratio p/q; per-simplex budget ratios when omitted");
  squeeze->add_option("--points", points_path, "JSON array of points")->required();

  auto* budget = app.add_subcommand("budget", "epsilon budget of a complex");
  budget->add_option("--complex", complex_path)->required();

  std::vector<std::string> sup_f, sup_g;
  std::string sup_target;
  auto* supnorm = app.add_subcommand("supnorm", "certified squared sup distance between two map chains");
  supnorm->add_option("--map", sup_f)->required();
  supnorm->add_option("--against", sup_g)->required();
  supnorm->add_option("--target2", sup_target, "stop refining cells below this squared bound");

  MapArgs pipe_args;
  std::vector<std::string> g0_chain;
  std::string bump;
  unsigned density_resolution = 1;
  std::string svg_path;
  auto* pipe = app.add_subcommand("pipeline", "surjective approximation, smoothing stand-in, squeezing");
  add_map_args(pipe, pipe_args, true);
  pipe->add_option("--g0", g0_chain, "map chain standing in for the smoothed map");
  pipe->add_option("--bump", bump, "g0 = h with the first witness barycentre moved by x,y,...");
  pipe->add_option("--density-resolution", density_resolution, "subdivision level of the density targets");
  pipe->add_option("--svg", svg_path, "also render the subdivided codomain");

  std::string result_path;
  auto* verify_cmd = app.add_subcommand("verify", "recheck a result document from its inputs");
  verify_cmd->add_option("--result", result_path)->required();

  std::vector<std::string> arrow_maps;
  std::vector<std::size_t> axes;
  auto* render = app.add_subcommand("render-svg", "render a complex as SVG");
  render->add_option("--complex", complex_path)->required();
  render->add_option("--map", arrow_maps, "draw vertex-image arrows of this map");
  render->add_option("--axes", axes, "two coordinate indices to project on")->expected(2);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 3;
  }

  try {
    Loader loader;
    if (*validate) {
      const auto report = Complex::check(raw_complex_from_json(read_json(complex_path)));
      Json issues = Json::array();
      for (const auto& i : report.issues)
        issues.push_back(Json{{"code", std::string(error_code_name(i.code))}, {"message", i.message}});
      Json out{{"valid", report.ok()}, {"issues", issues}};
      if (report.ok()) {
        const auto k = loader.complex(complex_path);
        Json counts = Json::array();
        for (std::size_t d = 0; d <= k->dim(); ++d) {
          std::size_t n = 0;
          for (SimplexIndex s = 0; s < k->simplex_count(); ++s) n += k->simplex_dim(s) == d;
          counts.push_back(n);
        }
        out["dim"] = k->dim();
        out["simplices_by_dim"] = counts;
        out["mesh2"] = squared_mesh(*k).str();
      }
      emit_json(g, out);
      return report.ok() ? 0 : 3;
    }
    if (*sd) {
      const auto k = sd_k(loader.complex(complex_path), times, g.budget);
      emit_json(g, complex_to_json(*k));
      return 0;
    }
    if (*stars) {
      const auto k = loader.complex(complex_path);
      const VertexIndex v = k->vertex_index(vertex);
      const StarSet s = second ? second_star(*k, v) : open_star(*k, v);
      Json cells = Json::array();
      for (auto c : s.open_cells) cells.push_back(k->simplex_name(c));
      emit_json(g, Json{{"center", s.center}, {"open_cells", cells}});
      return 0;
    }
    if (*approx || *surj) {
      const MapArgs& a = *approx ? approx_args : surj_args;
      Loaded in;
      load_inputs(g, a, in);
      in.record.digest = hex64(in.loader.digest());
      std::optional<Rational> eps2;
      if (!a.eps.empty()) eps2 = parse_eps2(a.eps);
      ApproxBudgets budgets;
      budgets.kappa_max = a.kappa_max;
      budgets.simplices = g.budget;
      if (g.depth) budgets.witness_depth = *g.depth;
      if (*approx) {
        int ell = 0;
        ComplexPtr cod = in.l;
        if (eps2) std::tie(ell, cod) = fine_codomain(in.l, *eps2 / 9, g.budget);
        const MapOracle f = in.f->with_codomain(cod);
        auto result = simplicial_approximation(f, in.k, cod, a.kappa_max, VertexOrder::lexicographic(*cod), 0, g.budget);
        std::optional<SupInterval> sup;
        if (eps2) {
          SupBudget sb;
          sb.target2 = *eps2;
          sup = certified_sup_distance(f, MapOracle::from_simplicial(result.h), sb);
        }
        emit_json(g, document("approx", in.record, eps2, approximation_to_json(result, ell, sup)));
        if (sup && !(sup->hi2 < *eps2)) {
          std::cerr << "SupBoundNotMet: certified squared bound " << sup->hi2.str() << " is not below "
                    << eps2->str() << "\n";
          return 2;
        }
        return 0;
      }
      const auto r = eps2 ? surjective_simplicial_approximation(*in.f, in.k, in.l, *eps2, budgets)
                          : surjectivize(*in.f, in.k, in.l, VertexOrder::lexicographic(*in.l), budgets);
      emit_json(g, document("surjectivize", in.record, eps2, surjectivize_to_json(r)));
      return 0;
    }
    if (*squeeze) {
      const auto l = loader.complex(complex_path);
      const auto pts = read_json(points_path);
      const SqueezeMap pi = ratio.empty() ? SqueezeMap(l, squeeze_ratios(*l, epsilon_budget(*l)))
                                          : SqueezeMap(l, Rational::parse(ratio));
      Json out = Json::array();
      for (const auto& p : pts) out.push_back(point_to_json(pi.evaluate(point_from_json(p))));
      emit_json(g, out);
      return 0;
    }
    if (*budget) {
      const auto l = loader.complex(complex_path);
      emit_json(g, budget_table(*l, epsilon_budget(*l)));
      return 0;
    }
    if (*supnorm) {
      const auto f = loader.chain(std::vector<fs::path>(sup_f.begin(), sup_f.end()));
      const auto h = loader.chain(std::vector<fs::path>(sup_g.begin(), sup_g.end()));
      SupBudget sb;
      if (!sup_target.empty()) sb.target2 = Rational::parse(sup_target);
      emit_json(g, interval_to_json(certified_sup_distance(f, h, sb)));
      return 0;
    }
    if (*pipe) {
      Loaded in;
      load_inputs(g, pipe_args, in);
      PipelineOptions opts;
      opts.eps2 = parse_eps2(pipe_args.eps);
      opts.approx.kappa_max = pipe_args.kappa_max;
      opts.approx.simplices = g.budget;
      opts.restore.density_resolution = density_resolution;
      opts.restore.density_depth = g.depth.value_or(5);
      std::optional<Smoothing> smoothing;
      if (!g0_chain.empty()) {
        const auto g0 = in.loader.chain(std::vector<fs::path>(g0_chain.begin(), g0_chain.end()));
        smoothing = [g0](const SurjectiveApproxResult&) { return g0; };
        for (const auto& p : g0_chain) in.record.g0.push_back(recorded(g, p));
      }
      if (!bump.empty()) {
        if (smoothing) throw Error(ErrorCode::InvalidInput, "--g0 and --bump are exclusive");
        smoothing = [&, offset = parse_point(bump)](const SurjectiveApproxResult& r) {
          const VertexIndex b = r.witnesses.front().barycentre;
          in.record.bump = BumpRecord{r.domain->vertex_id(b), offset};
          return bumped(r.h, b, offset);
        };
      }
      in.record.digest = hex64(in.loader.digest());
      const auto result = pipeline(*in.f, in.k, in.l, smoothing, opts);
      emit_json(g, document("pipeline", in.record, opts.eps2, pipeline_to_json(result)));
      if (!svg_path.empty()) {
        RenderSpec spec;
        spec.complex = result.approx.codomain;
        write_text(svg_path, render_svg(spec));
      }
      return result.restore.density && !result.restore.density->passed() ? 3 : 0;
    }
    if (*verify_cmd) {
      const Json doc = read_json(result_path);
      const Verdict v = verify(doc, fs::absolute(result_path).parent_path(), g.depth.value_or(1));
      Json checks = Json::array();
      for (const auto& c : v.checks)
        checks.push_back(Json{{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
      emit_json(g, Json{{"passed", v.passed()}, {"checks", checks}});
      return v.passed() ? 0 : 3;
    }
    if (*render) {
      RenderSpec spec;
      spec.complex = loader.complex(complex_path);
      if (axes.size() == 2) spec.axes = std::array<std::size_t, 2>{axes[0], axes[1]};
      for (const auto& m : arrow_maps) {
        const auto map = loader.map(m);
        for (VertexIndex v = 0; v < map->domain()->vertex_count(); ++v)
          if (map->domain()->point(v) != map->image(v)) spec.arrows.push_back({map->domain()->point(v), map->image(v)});
      }
      emit(g, render_svg(spec));
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return exit_code(e);
  } catch (const std::exception& e) {
    std::cerr << "InvalidInput: " << e.what() << "\n";
    return 3;
  }
  return 3;
}
