#include "raogeo/svg.hpp"

#include <algorithm>
#include <array>
#include <cstdio>

#include "raogeo/report.hpp"

namespace raogeo {
namespace {

constexpr double kCanvas = 480.0;
constexpr double kPad = 40.0;

struct Mapper {
  double min_x, min_y, scale;
  std::array<double, 2> operator()(double x, double y) const {
    // SVG y grows downward.
    return {kPad + (x - min_x) * scale, kCanvas - kPad - (y - min_y) * scale};
  }
};

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::array<double, 2> project(const Eigen::Vector3d& p, Projection proj) {
  switch (proj) {
    case Projection::xy: return {p[0], p[1]};
    case Projection::xz: return {p[0], p[2]};
    case Projection::yz: return {p[1], p[2]};
  }
  return {0.0, 0.0};
}

std::string angle_text(const char* name, const AngleValue& a) {
  std::string out = name;
  out += " = ";
  out += a.ok ? format_value(a.radians) : a.status;
  return out;
}

}  // namespace

std::optional<Projection> parse_projection(std::string_view name) {
  if (name == "xy") return Projection::xy;
  if (name == "xz") return Projection::xz;
  if (name == "yz") return Projection::yz;
  return std::nullopt;
}

std::string render_scene_svg(const Scene& s, Projection projection) {
  const std::array<const ScenePoint*, 4> pts = {&s.a0, &s.b0, &s.c0, &s.c1};
  std::array<std::array<double, 2>, 4> flat;
  for (std::size_t i = 0; i < 4; ++i) flat[i] = project(pts[i]->coords, projection);

  double min_x = flat[0][0], max_x = flat[0][0];
  double min_y = flat[0][1], max_y = flat[0][1];
  for (const auto& p : flat) {
    min_x = std::min(min_x, p[0]);
    max_x = std::max(max_x, p[0]);
    min_y = std::min(min_y, p[1]);
    max_y = std::max(max_y, p[1]);
  }
  // Uniform scale so projected angles survive the viewport mapping.
  const double span = std::max({max_x - min_x, max_y - min_y, 1e-9});
  const Mapper map{min_x, min_y, (kCanvas - 2.0 * kPad) / span};

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"480\" height=\"480\" "
         "viewBox=\"0 0 480 480\">\n";
  svg += "<rect width=\"480\" height=\"480\" fill=\"white\"/>\n";

  // The five rays A0C0, A0C1, A0B0, B0C0, B0C1.
  const std::array<std::pair<int, int>, 5> rays = {
      {{0, 2}, {0, 3}, {0, 1}, {1, 2}, {1, 3}}};
  for (const auto& [i, j] : rays) {
    const auto [x1, y1] = map(flat[static_cast<std::size_t>(i)][0],
                              flat[static_cast<std::size_t>(i)][1]);
    const auto [x2, y2] = map(flat[static_cast<std::size_t>(j)][0],
                              flat[static_cast<std::size_t>(j)][1]);
    svg += "<line x1=\"" + num(x1) + "\" y1=\"" + num(y1) + "\" x2=\"" + num(x2) +
           "\" y2=\"" + num(y2) + "\" stroke=\"steelblue\" stroke-width=\"1.5\"/>\n";
  }

  for (std::size_t i = 0; i < 4; ++i) {
    const auto [cx, cy] = map(flat[i][0], flat[i][1]);
    svg += "<circle cx=\"" + num(cx) + "\" cy=\"" + num(cy) +
           "\" r=\"4\" fill=\"black\"/>\n";
    svg += "<text x=\"" + num(cx + 6) + "\" y=\"" + num(cy - 6) +
           "\" font-size=\"14\">" + label_name(pts[i]->label) + "</text>\n";
  }

  const ViewAngleReport angles = view_angles(s);
  const std::array<std::string, 3> notes = {angle_text("alpha", angles.alpha),
                                            angle_text("beta1", angles.beta1),
                                            angle_text("beta2", angles.beta2)};
  for (std::size_t i = 0; i < notes.size(); ++i) {
    svg += "<text x=\"12\" y=\"" + num(20.0 + 16.0 * static_cast<double>(i)) +
           "\" font-size=\"13\">" + notes[i] + "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace raogeo
