#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "plsurj/error.hpp"
#include "plsurj/geometry.hpp"

namespace plsurj {

using VertexIndex = std::uint32_t;
using SimplexIndex = std::uint32_t;
/// Sorted vertex indices.
using Simplex = std::vector<VertexIndex>;

/// Unvalidated complex description, as read from a file.
struct RawComplex {
  std::size_t ambient_dim = 0;
  std::vector<std::pair<std::string, Point>> vertices;
  std::vector<std::vector<std::string>> simplices;
  /// When false, missing faces are reported instead of added.
  bool close_under_faces = true;
};

struct ValidationIssue {
  ErrorCode code;
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  bool ok() const { return issues.empty(); }
};

class Complex;
class Locator;
using ComplexPtr = std::shared_ptr<const Complex>;

/// Where a vertex of a barycentric subdivision came from.
struct Provenance {
  ComplexPtr parent;
  /// Per vertex: the parent simplex whose barycentre it is.
  std::vector<SimplexIndex> vertex_source;
};

/// A validated finite simplicial complex.
///
/// Vertex indices follow the string order of vertex ids; simplices are sorted
/// by (dimension, vertex tuple), and a simplex's position is its index.
class Complex {
 public:
  /// Validates `raw`; throws the first violation as an Error.
  static ComplexPtr validate(const RawComplex& raw);
  /// Collects every violation instead of throwing.
  static ValidationReport check(const RawComplex& raw);

  /// Builds from face-closed index data without the pairwise intersection
  /// test; used for outputs of trusted constructions such as subdivision.
  static ComplexPtr assemble(std::size_t ambient_dim, std::vector<std::string> ids,
                             std::vector<Point> points, std::vector<Simplex> simplices,
                             std::optional<Provenance> provenance = std::nullopt);

  Complex(const Complex&) = delete;
  Complex& operator=(const Complex&) = delete;
  ~Complex();

  std::size_t ambient_dim() const { return ambient_dim_; }
  /// Largest simplex dimension; 0 for an empty complex.
  std::size_t dim() const { return dim_; }
  bool empty() const { return ids_.empty(); }

  std::size_t vertex_count() const { return ids_.size(); }
  const std::string& vertex_id(VertexIndex v) const { return ids_[v]; }
  const Point& point(VertexIndex v) const { return points_[v]; }
  std::optional<VertexIndex> find_vertex(std::string_view id) const;
  /// Throws UnknownVertex.
  VertexIndex vertex_index(std::string_view id) const;
  std::optional<VertexIndex> vertex_at(const Point& p) const;

  std::size_t simplex_count() const { return simplices_.size(); }
  const Simplex& simplex(SimplexIndex s) const { return simplices_[s]; }
  std::size_t simplex_dim(SimplexIndex s) const { return simplices_[s].size() - 1; }
  std::optional<SimplexIndex> find_simplex(const Simplex& s) const;
  SimplexIndex simplex_index(const Simplex& s) const;
  /// Simplex of the 0-cell of vertex v.
  SimplexIndex vertex_simplex(VertexIndex v) const { return vertex_cell_[v]; }

  const std::vector<SimplexIndex>& maximal_simplices() const { return maximal_; }
  bool is_maximal(SimplexIndex s) const { return is_maximal_[s]; }
  /// All simplices having v as a vertex, ascending.
  const std::vector<SimplexIndex>& cofaces(VertexIndex v) const { return cofaces_[v]; }
  /// All nonempty faces of s (including s), ascending.
  std::vector<SimplexIndex> faces(SimplexIndex s) const;
  bool is_face(SimplexIndex face, SimplexIndex of) const;

  std::vector<Point> points_of(SimplexIndex s) const;
  std::vector<Point> points_of(const Simplex& s) const;
  std::vector<std::string> ids_of(SimplexIndex s) const;
  /// "a.b.c" from the vertex ids.
  std::string simplex_name(SimplexIndex s) const;
  /// Frame of a maximal simplex.
  const SimplexFrame& frame(SimplexIndex maximal) const;

  const std::optional<Provenance>& provenance() const { return provenance_; }
  const Locator& locator() const;

 private:
  Complex() = default;
  void index();

  std::size_t ambient_dim_ = 0;
  std::size_t dim_ = 0;
  std::vector<std::string> ids_;
  std::vector<Point> points_;
  std::unordered_map<std::string, VertexIndex> id_lookup_;
  std::vector<Simplex> simplices_;
  struct SimplexHash {
    std::size_t operator()(const Simplex& s) const;
  };
  std::unordered_map<Simplex, SimplexIndex, SimplexHash> simplex_lookup_;
  std::vector<SimplexIndex> vertex_cell_;
  std::vector<SimplexIndex> maximal_;
  std::vector<bool> is_maximal_;
  std::vector<std::vector<SimplexIndex>> cofaces_;
  std::unordered_map<SimplexIndex, std::size_t> frame_slot_;
  std::vector<SimplexFrame> frames_;
  std::optional<Provenance> provenance_;

  mutable std::once_flag locator_once_;
  mutable std::unique_ptr<Locator> locator_;
};

/// A point's carrier: the simplex whose relative interior contains it, with
/// the (strictly positive) barycentric weights of its vertices.
struct Carrier {
  SimplexIndex cell;
  std::vector<Rational> weights;  // aligned with complex.simplex(cell)
};

/// Spatial index over the maximal simplices of a complex.
class Locator {
 public:
  explicit Locator(const Complex& k);

  /// Maximal simplices whose closure contains p, ascending.
  std::vector<SimplexIndex> containing_maximal(const Point& p) const;
  std::optional<Carrier> carrier(const Point& p) const;
  /// Maximal simplices whose bounding boxes meet the box [lo, hi].
  std::vector<SimplexIndex> near_box(const std::vector<double>& lo, const std::vector<double>& hi) const;

 private:
  std::vector<std::size_t> cell_range(const std::vector<double>& lo, const std::vector<double>& hi) const;

  const Complex& k_;
  std::size_t n_ = 0;
  std::size_t res_ = 1;
  std::vector<double> lo_, step_;
  std::vector<std::vector<double>> box_lo_, box_hi_;  // per maximal slot
  std::vector<std::vector<std::uint32_t>> grid_;       // grid cell -> maximal slots
};

/// Bounding box of points in doubles, widened to cover conversion error.
std::pair<std::vector<double>, std::vector<double>> double_box(std::span<const Point> pts);

}  // namespace plsurj
