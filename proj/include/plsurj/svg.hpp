#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "plsurj/complex.hpp"

namespace plsurj {

struct Arrow {
  Point from;
  Point to;
};

struct RenderSpec {
  ComplexPtr complex;
  /// Drawn over the complex, e.g. vertex images of a map.
  std::vector<Arrow> arrows;
  /// Coordinates used as (x, y); required above dimension 2.
  std::optional<std::array<std::size_t, 2>> axes;
  std::string stroke = "#222222";
  std::string fill = "#dbe6f4";
  std::string arrow_stroke = "#c0392b";
  bool labels = true;
  /// Canvas width in pixels; the height follows the aspect ratio.
  double width = 480;
};

/// Deterministic SVG text: top cells as polygons, then edges and vertices,
/// labels and arrows. Throws UnsupportedDimension.
std::string render_svg(const RenderSpec& spec);

}  // namespace plsurj
