#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "plsurj/io.hpp"
#include "plsurj/restore.hpp"
#include "plsurj/surjectivize.hpp"

namespace plsurj {

/// Builds g0 from the surjective simplicial approximation; the stand-in for
/// a smooth map near its h.
using Smoothing = std::function<MapOracle(const SurjectiveApproxResult& approx)>;

struct PipelineOptions {
  Rational eps2;
  ApproxBudgets approx;
  RestoreOptions restore;
};

struct PipelineResult {
  SurjectiveApproxResult approx;  // built against eps2 / 9
  MapOracle g0;
  RestoreResult restore;
  SupInterval f_vs_h;
  SupInterval h_vs_g;
  /// Squared mesh of the codomain triangulation; pi moves points at most this far.
  Rational squeeze_mesh2;
  /// Exact max of |f - pi o g0|^2 over the domain vertices.
  Rational final_lo2;
  /// (sqrt(f_vs_h) + sqrt(h_vs_g) + sqrt(squeeze_mesh2))^2 with upward roots.
  Rational final_hi2;
};

/// Surjective approximation at eps/3, g0 = smoothing(approx) (h when
/// absent), then restore_surjectivity on g0. Errors from each stage are
/// rethrown with the stage named. Throws SupBoundNotMet when the combined
/// bound is not below eps2.
PipelineResult pipeline(const MapOracle& f, const ComplexPtr& k, const ComplexPtr& l,
                        const std::optional<Smoothing>& smoothing, const PipelineOptions& opts);

/// (sqrt_upper(a) + sqrt_upper(b) + sqrt_upper(c))^2
Rational combine_squared_bounds(const Rational& a, const Rational& b, const Rational& c);

/// g = h with the images of the domain vertex `vertex` moved by `offset`.
MapOracle bumped(const SimplicialMap& h, VertexIndex vertex, const Point& offset);

struct BumpRecord {
  std::string vertex;
  Point offset;
};

/// Where the inputs of a result document live, relative to the document.
struct InputRecord {
  std::filesystem::path domain;
  std::filesystem::path codomain;
  std::vector<std::filesystem::path> map;
  std::vector<std::filesystem::path> g0;
  std::optional<BumpRecord> bump;
  std::optional<Rational> squared_lipschitz;
  std::string digest;
};

Json inputs_to_json(const InputRecord& in);
InputRecord inputs_from_json(const Json& j);

Json approximation_to_json(const Approximation& a, int ell, const std::optional<SupInterval>& sup);
Json surjectivize_to_json(const SurjectiveApproxResult& r);
Json pipeline_to_json(const PipelineResult& r);

struct VerifyCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct Verdict {
  std::vector<VerifyCheck> checks;
  bool passed() const;
};

/// Rechecks a result document from its inputs alone: simpliciality,
/// surjectivity, sampled sup distances and sampled star memberships, with
/// the domain cells refined `depth` times. Never throws for failed checks.
Verdict verify(const Json& doc, const std::filesystem::path& base_dir, unsigned depth);

}  // namespace plsurj
