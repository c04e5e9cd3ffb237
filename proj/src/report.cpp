#include "raogeo/report.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "raogeo/conformal.hpp"
#include "raogeo/errors.hpp"

namespace raogeo {
namespace {

constexpr std::string_view kHeader = "quantity,value,units,status";

ReportRow angle_row(const std::string& quantity, const AngleValue& angle) {
  if (!angle.ok) return {quantity, std::nullopt, "radians", angle.status};
  return {quantity, angle.radians, "radians", "ok"};
}

}  // namespace

std::string format_value(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

std::string to_csv(std::span<const ReportRow> rows) {
  std::string out(kHeader);
  out += '\n';
  for (const ReportRow& r : rows) {
    out += r.quantity;
    out += ',';
    if (r.value) out += format_value(*r.value);
    out += ',';
    out += r.units;
    out += ',';
    out += r.status;
    out += '\n';
  }
  return out;
}

std::vector<ReportRow> parse_report_csv(std::string_view text) {
  std::vector<ReportRow> rows;
  std::size_t pos = 0;
  int line_no = 0;
  while (pos < text.size()) {
    ++line_no;
    const std::size_t nl = std::min(text.find('\n', pos), text.size());
    const std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    if (line.empty()) continue;
    if (line_no == 1) {
      if (line != kHeader)
        throw ParseError("unexpected CSV header '" + std::string(line) + "'",
                         line_no, 1);
      continue;
    }
    std::array<std::string_view, 4> fields;
    std::size_t start = 0;
    for (int f = 0; f < 4; ++f) {
      const std::size_t comma =
          f == 3 ? line.size() : std::min(line.find(',', start), line.size());
      if (f < 3 && comma == line.size())
        throw ParseError("report row needs 4 comma-separated fields", line_no,
                         static_cast<int>(start + 1));
      fields[static_cast<std::size_t>(f)] = line.substr(start, comma - start);
      start = comma + 1;
    }
    ReportRow row;
    row.quantity = std::string(fields[0]);
    if (!fields[1].empty()) {
      char* end = nullptr;
      const std::string buf(fields[1]);
      const double v = std::strtod(buf.c_str(), &end);
      if (end != buf.c_str() + buf.size() || !std::isfinite(v))
        throw ParseError("report value is not a finite number", line_no, 1);
      row.value = v;
    }
    row.units = std::string(fields[2]);
    row.status = std::string(fields[3]);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<ReportRow> scene_report(const Scene& s, double feasibility_tol,
                                    const QuadratureConfig& q) {
  std::vector<ReportRow> rows;
  const DistanceReport d = five_distances(s);
  rows.push_back({"a0c0", d.a0c0, "length", "ok"});
  rows.push_back({"a0c1", d.a0c1, "length", "ok"});
  rows.push_back({"b0a0", d.b0a0, "length", "ok"});
  rows.push_back({"b0c0", d.b0c0, "length", "ok"});
  rows.push_back({"b0c1", d.b0c1, "length", "ok"});

  const ViewAngleReport angles = view_angles(s);
  rows.push_back(angle_row("alpha", angles.alpha));
  rows.push_back(angle_row("beta1", angles.beta1));
  rows.push_back(angle_row("beta2", angles.beta2));

  const FeasibilityReport feas = single_plane_feasibility(s, feasibility_tol);
  rows.push_back({"height_spread", feas.spread, "length", "ok"});
  rows.push_back(
      {"single_plane_feasible", feas.feasible ? 1.0 : 0.0, "dimensionless", "ok"});

  // Straight arcs through their identity substitutions; a coincident pair
  // cannot carry an arc and is flagged instead.
  static constexpr std::array<std::string_view, 5> kPairNames = {
      "A0C0", "A0C1", "A0B0", "B0C0", "B0C1"};
  const std::array<double, 5> dists = d.as_array();
  for (std::size_t i = 0; i < 5; ++i) {
    const std::string quantity = "L_C" + std::to_string(i + 1);
    if (dists[i] <= 1e-12) {
      rows.push_back({quantity, std::nullopt, "length",
                      "degenerate_pair:" + std::string(kPairNames[i])});
      continue;
    }
    Arc segment;
    segment.a = 0.0;
    segment.b = dists[i];
    segment.eval = [](double t) { return std::complex<double>(t, 0.0); };
    segment.deriv = [](double) { return std::complex<double>(1.0, 0.0); };
    rows.push_back({quantity,
                    arc_length(segment, identity_parametrization(0.0, dists[i]), q),
                    "length", "ok"});
  }
  return rows;
}

}  // namespace raogeo
