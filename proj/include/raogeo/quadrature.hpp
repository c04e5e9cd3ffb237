#pragma once

#include <functional>

namespace raogeo {

// Tolerances for numerical integration and expectation sums.
// Discrete supports are summed exactly; continuous supports go through
// the adaptive rule below.
struct QuadratureConfig {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  int max_subdivisions = 4000;
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int panels = 0;
};

// Adaptive Gauss-Kronrod (G7,K15) with bisection of the worst panel.
// Either endpoint may be +/-infinity; infinite ranges are folded onto a
// finite interval by a rational substitution before integration.
// Throws ConvergenceError when max_subdivisions panels cannot reach the
// requested tolerance; the error carries the achieved estimate.
QuadratureResult integrate(const std::function<double(double)>& f, double a,
                           double b, const QuadratureConfig& cfg = {});

}  // namespace raogeo
