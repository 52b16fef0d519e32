#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "plsurj/complex.hpp"
#include "plsurj/pl_map.hpp"
#include "plsurj/sup_distance.hpp"

namespace plsurj {

using Json = nlohmann::ordered_json;

/// Rationals are written as "p/q" strings; integers and decimal strings are
/// also accepted on input. Binary floats are rejected.
Rational rational_from_json(const Json& j);
Json rational_to_json(const Rational& r);
Point point_from_json(const Json& j);
Json point_to_json(const Point& p);

/// {"ambient_dim": n, "vertices": {id: [rat, ...]}, "simplices": [[id, ...], ...]}
RawComplex raw_complex_from_json(const Json& j);
/// Vertices in index order, maximal simplices only.
Json complex_to_json(const Complex& k);

Json read_json(const std::filesystem::path& path);
/// Two-space indent and a trailing newline.
void write_json(const std::filesystem::path& path, const Json& j);
std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

/// FNV-1a, 64 bit.
std::uint64_t fnv1a(std::string_view bytes, std::uint64_t seed = 0xcbf29ce484222325ULL);
std::string hex64(std::uint64_t v);

/// Loads complex and map files, sharing one complex per canonical path so
/// that chained maps agree on their intermediate complexes. Relative paths
/// inside map files resolve against the map file's directory.
class Loader {
 public:
  ComplexPtr complex(const std::filesystem::path& path);
  /// {"domain": path, "codomain": path, "vertex_images": {id: point | codomain id}}
  std::shared_ptr<const PlMap> map(const std::filesystem::path& path);
  MapOracle chain(const std::vector<std::filesystem::path>& paths,
                  std::optional<Rational> squared_lipschitz = std::nullopt);

  /// Digest of every file read so far, in first-read order.
  std::uint64_t digest() const { return digest_; }

 private:
  std::string read_tracked(const std::filesystem::path& path);

  std::map<std::filesystem::path, ComplexPtr> complexes_;
  std::map<std::filesystem::path, std::shared_ptr<const PlMap>> maps_;
  std::vector<std::filesystem::path> seen_;
  std::uint64_t digest_ = 0xcbf29ce484222325ULL;
};

/// Vertex table {domain id: codomain id}.
Json vertex_table_to_json(const SimplicialMap& h);
SimplicialMap vertex_table_from_json(const Json& j, const ComplexPtr& domain, const ComplexPtr& codomain);

/// {"lo2", "hi2", "hi2_decimal", "converged", "cells"}
Json interval_to_json(const SupInterval& s);

}  // namespace plsurj
