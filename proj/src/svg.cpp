// SPDX-License-Identifier: Apache-2.0
#include "convgeo/svg.hpp"

#include <cstdio>

namespace convgeo {

namespace {

constexpr int kCanvas = 800;
constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#17becf", "#e377c2"};

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

struct Mapper {
  double scale, offset;
  std::string x(double v) const { return fmt(offset + scale * v); }
  std::string y(double v) const { return fmt(offset - scale * v); }
};

std::string polygon_points(const std::vector<Vec2>& pts, const Mapper& map) {
  std::string out;
  for (const Vec2& p : pts) {
    if (!out.empty()) out += " ";
    out += map.x(p.x) + "," + map.y(p.y);
  }
  return out;
}

std::vector<Vec2> body_outline(const PlanarBody& body) {
  if (const auto* poly = std::get_if<PolygonBody>(&body)) return poly->vertices_f;
  if (const auto* s = std::get_if<SampledBody>(&body)) return s->points;
  return {};
}

}  // namespace

std::string render_svg(const PlanarRepresentation& rep) {
  const auto& frame = rep.pinched.frame;
  double extent = 1.0 + rep.pinched.frame.epsilon_f;
  for (const auto& pair : rep.pinched.pairs)
    for (const auto& rho : pair.rho2)
      extent = std::max(extent, rat_to_double(rho));
  extent *= 1.25;
  Mapper map{kCanvas / (2 * extent), kCanvas / 2.0};

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         std::to_string(kCanvas) + "\" height=\"" + std::to_string(kCanvas) +
         "\" viewBox=\"0 0 " + std::to_string(kCanvas) + " " +
         std::to_string(kCanvas) + "\">\n";
  svg += "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  svg += "  <g id=\"frame\" stroke=\"#bbbbbb\" stroke-width=\"1\">\n";
  for (int i = 0; i < frame.m; ++i) {
    Vec2 u = frame.directions_f[i];
    svg += "    <line x1=\"" + map.x(0) + "\" y1=\"" + map.y(0) + "\" x2=\"" +
           map.x(1.6 * u.x) + "\" y2=\"" + map.y(1.6 * u.y) + "\"/>\n";
  }
  svg += "  </g>\n";

  for (size_t e = 0; e < rep.pinched.pairs.size(); ++e) {
    const auto& pair = rep.pinched.pairs[e];
    const char* color = kPalette[e % 8];
    const std::string& label = rep.pinched.orderings.ground().label(pair.element);
    svg += "  <g id=\"elem-" + label + "\">\n";

    std::vector<Vec2> inner, outer;
    for (int i = 0; i < frame.m; ++i) {
      inner.push_back({rat_to_double(pair.f1[i].x), rat_to_double(pair.f1[i].y)});
      outer.push_back({rat_to_double(pair.f2[i].x), rat_to_double(pair.f2[i].y)});
    }
    svg += "    <polygon points=\"" + polygon_points(inner, map) + "\" fill=\"" +
           color + "\" fill-opacity=\"0.15\" stroke=\"none\"/>\n";
    svg += "    <polygon points=\"" + polygon_points(outer, map) +
           "\" fill=\"none\" stroke=\"" + color +
           "\" stroke-width=\"1\" stroke-dasharray=\"5,4\"/>\n";
    svg += "    <polygon points=\"" +
           polygon_points(body_outline(rep.bodies.bodies[e]), map) +
           "\" fill=\"none\" stroke=\"" + color + "\" stroke-width=\"2\"/>\n";

    Vec2 anchor = outer.empty() ? Vec2{0, 0} : outer[0];
    svg += "    <text x=\"" + map.x(anchor.x * 1.06) + "\" y=\"" +
           map.y(anchor.y * 1.06) + "\" font-size=\"16\" fill=\"" + color +
           "\">" + label + "</text>\n";
    svg += "  </g>\n";
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace convgeo
