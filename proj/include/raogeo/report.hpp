#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "raogeo/quadrature.hpp"
#include "raogeo/scene3d.hpp"

namespace raogeo {

// One line of the CSV schema `quantity,value,units,status`. Degenerate
// quantities keep an empty value and carry the cause in `status`; the
// value column never holds NaN.
struct ReportRow {
  std::string quantity;
  std::optional<double> value;
  std::string units;  // length | radians | dimensionless
  std::string status = "ok";

  bool ok() const { return status == "ok" || status == "pass"; }
  bool operator==(const ReportRow&) const = default;
};

// All numeric output uses 10 significant digits.
std::string format_value(double v);

std::string to_csv(std::span<const ReportRow> rows);

// Inverse of to_csv (header required).
std::vector<ReportRow> parse_report_csv(std::string_view text);

// The `scene report` payload: five distances, three view angles, the
// height spread and its verdict, and the identity-parametrized arc
// lengths L_C1..L_C5.
std::vector<ReportRow> scene_report(const Scene& s, double feasibility_tol,
                                    const QuadratureConfig& q = {});

}  // namespace raogeo
