#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>

#include "fixtures.hpp"
#include "plsurj/io.hpp"
#include "plsurj/pipeline.hpp"
#include "plsurj/svg.hpp"

using namespace fixtures;
namespace fs = std::filesystem;

namespace {

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto p = text.find(needle); p != std::string::npos; p = text.find(needle, p + 1)) ++n;
  return n;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(PLSURJ_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

// Complex and identity-map files for fig1(s) in a fresh directory.
struct Workspace {
  fs::path dir;
  explicit Workspace(const std::string& name, const Rational& s = Rational(1, 16)) : dir(temp_dir(name)) {
    const auto l = fig1(s);
    write_json(dir / "L.json", complex_to_json(*l));
    Json map{{"domain", "L.json"}, {"codomain", "L.json"}, {"vertex_images", Json::object()}};
    for (VertexIndex v = 0; v < l->vertex_count(); ++v) map["vertex_images"][l->vertex_id(v)] = l->vertex_id(v);
    write_json(dir / "f.json", map);
  }
  std::string path(const std::string& file) const { return (dir / file).string(); }
  std::string map_args() const {
    return "--map " + path("f.json") + " --domain " + path("L.json") + " --codomain " + path("L.json");
  }
};

}  // namespace

TEST_CASE("stage bounds combine through upward square roots") {
  CHECK(combine_squared_bounds(Rational(1, 4), Rational(1, 9), Rational(1, 36)) == 1);
  CHECK(combine_squared_bounds(0, 0, 0) == 0);
  const Rational c = combine_squared_bounds(2, 3, 5);
  CHECK(c >= Rational(2) + 3 + 5);
}

TEST_CASE("pipeline on the identity without smoothing") {
  const auto l = fig1(Rational(1, 16));
  PipelineOptions opts;
  opts.eps2 = 1;
  opts.restore.density_depth = 2;
  const auto r = pipeline(identity(l), l, l, std::nullopt, opts);
  CHECK(r.final_hi2 < 1);
  CHECK(r.final_lo2 <= r.final_hi2);
  CHECK(r.final_hi2 == combine_squared_bounds(r.f_vs_h.hi2, r.h_vs_g.hi2, r.squeeze_mesh2));
  CHECK(r.h_vs_g.hi2 == 0);
  CHECK(is_surjective(r.approx.h).surjective);
  for (const auto& c : r.restore.checks) CHECK(c.passed);
  REQUIRE(r.restore.density);
  CHECK(r.restore.density->passed());
}

TEST_CASE("pipeline on the fold with a bumped smoothing") {
  const Rational s(1, 16);
  const auto l = fig1(s);
  const auto k = fold_domain(s);
  PipelineOptions opts;
  opts.eps2 = 1;
  opts.restore.density_depth = 4;
  const Smoothing bump = [](const SurjectiveApproxResult& a) {
    return bumped(a.h, a.witnesses.front().barycentre, Point{Rational(1, 20000), Rational(1, 25000)});
  };
  const auto r = pipeline(fold_map(k, l), k, l, bump, opts);
  CHECK(r.final_hi2 < 1);
  CHECK(r.h_vs_g.hi2 > 0);
  REQUIRE(r.restore.density);
  CHECK(r.restore.density->passed());
}

TEST_CASE("a smoothing beyond the budget fails in stage 3") {
  const auto l = fig1(Rational(1, 16));
  PipelineOptions opts;
  opts.eps2 = 1;
  const Smoothing far = [](const SurjectiveApproxResult& a) {
    return bumped(a.h, a.witnesses.front().barycentre, Point{Rational(1, 40), 0});
  };
  try {
    pipeline(identity(l), l, l, far, opts);
    FAIL("expected HypothesisNotCertified");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::HypothesisNotCertified);
    CHECK(std::string(e.what()).find("stage 3") != std::string::npos);
  }
}

TEST_CASE("json rationals and complexes round-trip") {
  CHECK(rational_from_json(Json("3/6")) == Rational(1, 2));
  CHECK(rational_from_json(Json(4)) == 4);
  CHECK(rational_from_json(Json("-0.25")) == Rational(-1, 4));
  CHECK_THROWS_AS(rational_from_json(Json(0.5)), Error);
  CHECK(rational_to_json(Rational(-2, 4)) == Json("-1/2"));
  CHECK(point_from_json(point_to_json(Point{Rational(1, 3), 2})) == Point{Rational(1, 3), 2});

  const auto k = fan_square();
  const auto back = Complex::validate(raw_complex_from_json(complex_to_json(*k)));
  CHECK(back->simplex_count() == k->simplex_count());
  CHECK(complex_to_json(*back) == complex_to_json(*k));
  CHECK(fnv1a("") == 0xcbf29ce484222325ULL);
  CHECK(hex64(255) == "00000000000000ff");
}

TEST_CASE("rendering the square with its diagonal") {
  RenderSpec spec;
  spec.complex = fig1();
  const std::string svg = render_svg(spec);
  CHECK(count(svg, "<polygon") == 2);
  CHECK(count(svg, "<text") == 4);
  for (const char* id : {">w0<", ">w1<", ">w2<", ">w3<"}) CHECK(count(svg, id) == 1);
  CHECK(count(svg, "<line") == 5);
  CHECK(render_svg(spec) == svg);

  spec.arrows.push_back({Point{0, 0}, Point{1, 1}});
  CHECK(count(render_svg(spec), "marker-end") == 1);
}

TEST_CASE("rendering subdivisions, empty and higher-dimensional complexes") {
  RenderSpec spec;
  spec.complex = sd_k(standard_triangle(), 2);
  CHECK(count(render_svg(spec), "<polygon") == 36);

  spec.complex = empty_complex();
  const std::string empty = render_svg(spec);
  CHECK(count(empty, "<svg") == 1);
  CHECK(count(empty, "<polygon") == 0);
  CHECK(count(empty, "<circle") == 0);

  spec.complex = standard_simplex(3);
  try {
    render_svg(spec);
    FAIL("expected UnsupportedDimension");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnsupportedDimension);
  }
  spec.axes = std::array<std::size_t, 2>{0, 2};
  CHECK(count(render_svg(spec), "<polygon") == 4);
}

TEST_CASE("verify accepts fresh results and rejects tampered tables") {
  Workspace ws("verify");
  const std::string out = ws.path("surj.json");
  REQUIRE(run_cli("--out " + out + " surjectivize " + ws.map_args()) == 0);
  const Json doc = read_json(out);
  const auto good = verify(doc, ws.dir, 1);
  CHECK(good.passed());
  CHECK(good.checks.size() >= 3);

  const auto shallow = verify(doc, ws.dir, 0);
  CHECK(shallow.passed() == good.passed());
  REQUIRE(shallow.checks.size() == good.checks.size());
  for (std::size_t i = 0; i < good.checks.size(); ++i) {
    CHECK(shallow.checks[i].name == good.checks[i].name);
    CHECK(shallow.checks[i].passed == good.checks[i].passed);
  }

  // Send a witness barycentre to the corner of the square outside its triangle.
  Json tampered = doc;
  const auto& w = doc.at("witnesses").at(0);
  const std::string tau = w.at("tau").get<std::string>();
  tampered.at("vertex_table")[w.at("barycentre").get<std::string>()] =
      tau.find("w1") == std::string::npos ? "w1" : "w3";
  CHECK_FALSE(verify(tampered, ws.dir, 1).passed());

  CHECK(run_cli("verify --result " + out) == 0);
  write_json(ws.path("tampered.json"), tampered);
  CHECK(run_cli("verify --result " + ws.path("tampered.json")) == 3);
}

TEST_CASE("verify rechecks pipeline results") {
  Workspace ws("verify_pipeline");
  const std::string out = ws.path("pipe.json");
  REQUIRE(run_cli("--out " + out + " pipeline " + ws.map_args() + " --eps 1 --bump 1/20000,1/25000") == 0);
  const Json doc = read_json(out);
  CHECK(doc.at("kind") == "pipeline");
  CHECK(doc.at("inputs").at("bump").is_object());
  const auto v = verify(doc, ws.dir, 1);
  for (const auto& c : v.checks) CHECK_MESSAGE(c.passed, c.name << ": " << c.detail);
}

TEST_CASE("cli exit codes") {
  Workspace ws("exit_codes", 1);
  CHECK(run_cli("validate --complex " + ws.path("L.json")) == 0);

  Json bad = read_json(ws.path("L.json"));
  bad["simplices"].push_back(Json::array({"w0", "w1", "w3"}));
  write_json(ws.path("bad.json"), bad);
  CHECK(run_cli("validate --complex " + ws.path("bad.json")) == 3);

  CHECK(run_cli("--budget-simplices 50 sd --complex " + ws.path("L.json") + " --times 3") == 2);
  CHECK(run_cli("--out " + ws.path("sd.json") + " sd --complex " + ws.path("L.json") + " --times 1") == 0);
  CHECK(Complex::validate(raw_complex_from_json(read_json(ws.path("sd.json"))))->maximal_simplices().size() == 12);

  CHECK(run_cli("no-such-command") == 3);
  CHECK(run_cli("validate") == 3);
  CHECK(run_cli("validate --complex " + ws.path("missing.json")) == 3);
  CHECK(run_cli("approx " + ws.map_args() + " --eps 0") == 3);
  CHECK(run_cli("surjectivize " + ws.map_args() + " --kappa-max 0 --lipschitz2 1/4") == 3);
}

TEST_CASE("cli subcommands produce their documents") {
  Workspace ws("subcommands", 1);
  CHECK(run_cli("--out " + ws.path("stars.json") + " stars --complex " + ws.path("L.json") + " --vertex w1 --second") == 0);
  CHECK(read_json(ws.path("stars.json")).at("open_cells").size() == 10);

  CHECK(run_cli("--out " + ws.path("budget.json") + " budget --complex " + ws.path("L.json")) == 0);
  const Json budget = read_json(ws.path("budget.json"));
  CHECK(budget.at("eps1_2") == "2");
  CHECK(budget.at("eps3_2") == "1/2592");

  write_json(ws.path("pts.json"), Json::array({Json::array({"1", "9/10"}), Json::array({"0", "1"})}));
  CHECK(run_cli("--out " + ws.path("sq.json") + " squeeze --complex " + ws.path("L.json") + " --ratio 1/2 --points " +
                ws.path("pts.json")) == 0);
  CHECK(read_json(ws.path("sq.json")) == Json::array({Json::array({"16/17", "16/17"}), Json::array({"0", "1"})}));

  CHECK(run_cli("--out " + ws.path("sup.json") + " supnorm --map " + ws.path("f.json") + " --against " +
                ws.path("f.json")) == 0);
  CHECK(read_json(ws.path("sup.json")).at("hi2") == "0");

  CHECK(run_cli("--out " + ws.path("a.json") + " approx " + ws.map_args()) == 0);
  CHECK(read_json(ws.path("a.json")).at("kappa") == 0);

  CHECK(run_cli("--out " + ws.path("fig.svg") + " render-svg --complex " + ws.path("L.json") + " --map " +
                ws.path("f.json")) == 0);
  CHECK(count(read_text(ws.path("fig.svg")), "<polygon") == 2);
}
