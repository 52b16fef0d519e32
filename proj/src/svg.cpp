#include "plsurj/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace plsurj {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  std::string s = buf;
  if (s == "-0.000") s = "0.000";
  return s;
}

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string render_svg(const RenderSpec& spec) {
  const Complex& k = *spec.complex;
  const std::size_t n = k.ambient_dim();
  std::array<std::size_t, 2> axes{0, 1};
  if (spec.axes) {
    axes = *spec.axes;
    if (axes[0] >= n || axes[1] >= n)
      throw Error(ErrorCode::UnsupportedDimension, "projection axis beyond the ambient dimension");
  } else if (n > 2) {
    throw Error(ErrorCode::UnsupportedDimension, "ambient dimension " + std::to_string(n) + " needs a projection");
  }
  auto coord = [&](const Point& p, int i) {
    const std::size_t a = axes[i];
    return a < p.dim() ? p[a].to_double() : 0.0;
  };

  double lo[2] = {0, 0}, hi[2] = {1, 1};
  bool first = true;
  auto grow = [&](const Point& p) {
    for (int i = 0; i < 2; ++i) {
      const double c = coord(p, i);
      if (first) lo[i] = hi[i] = c;
      lo[i] = std::min(lo[i], c);
      hi[i] = std::max(hi[i], c);
    }
    first = false;
  };
  for (VertexIndex v = 0; v < k.vertex_count(); ++v) grow(k.point(v));
  for (const auto& a : spec.arrows) {
    grow(a.from);
    grow(a.to);
  }
  const double span = std::max({hi[0] - lo[0], hi[1] - lo[1], 1e-9});
  const double margin = 32;
  const double scale = (spec.width - 2 * margin) / span;
  const double height = (hi[1] - lo[1]) * scale + 2 * margin;
  auto sx = [&](const Point& p) { return num(margin + (coord(p, 0) - lo[0]) * scale); };
  auto sy = [&](const Point& p) { return num(height - margin - (coord(p, 1) - lo[1]) * scale); };

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(spec.width) << "\" height=\"" << num(height)
    << "\" viewBox=\"0 0 " << num(spec.width) << ' ' << num(height) << "\">\n";
  if (!spec.arrows.empty())
    o << "<defs><marker id=\"head\" markerWidth=\"8\" markerHeight=\"8\" refX=\"7\" refY=\"4\" orient=\"auto\">"
      << "<path d=\"M0,0 L8,4 L0,8 z\" fill=\"" << spec.arrow_stroke << "\"/></marker></defs>\n";
  for (SimplexIndex s = 0; s < k.simplex_count(); ++s) {
    if (k.simplex_dim(s) != 2) continue;
    o << "<polygon points=\"";
    const auto pts = k.points_of(s);
    for (std::size_t i = 0; i < pts.size(); ++i) o << (i ? " " : "") << sx(pts[i]) << ',' << sy(pts[i]);
    o << "\" fill=\"" << spec.fill << "\" fill-opacity=\"0.6\" stroke=\"none\"/>\n";
  }
  for (SimplexIndex s = 0; s < k.simplex_count(); ++s) {
    if (k.simplex_dim(s) != 1) continue;
    const auto pts = k.points_of(s);
    o << "<line x1=\"" << sx(pts[0]) << "\" y1=\"" << sy(pts[0]) << "\" x2=\"" << sx(pts[1]) << "\" y2=\""
      << sy(pts[1]) << "\" stroke=\"" << spec.stroke << "\" stroke-width=\"1\"/>\n";
  }
  for (VertexIndex v = 0; v < k.vertex_count(); ++v) {
    const Point& p = k.point(v);
    o << "<circle cx=\"" << sx(p) << "\" cy=\"" << sy(p) << "\" r=\"2.5\" fill=\"" << spec.stroke << "\"/>\n";
    if (spec.labels)
      o << "<text x=\"" << sx(p) << "\" y=\"" << sy(p) << "\" dx=\"4\" dy=\"-4\" font-family=\"sans-serif\" "
        << "font-size=\"11\">" << escape(k.vertex_id(v)) << "</text>\n";
  }
  for (const auto& a : spec.arrows)
    o << "<line x1=\"" << sx(a.from) << "\" y1=\"" << sy(a.from) << "\" x2=\"" << sx(a.to) << "\" y2=\""
      << sy(a.to) << "\" stroke=\"" << spec.arrow_stroke << "\" stroke-width=\"1\" marker-end=\"url(#head)\"/>\n";
  o << "</svg>\n";
  return o.str();
}

}  // namespace plsurj
