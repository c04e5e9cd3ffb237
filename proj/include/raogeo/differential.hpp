#pragma once

#include <Eigen/Core>
#include <complex>
#include <functional>
#include <limits>
#include <span>
#include <vector>

namespace raogeo {

// A caller-supplied function R^n -> R^m. Arity is checked on every call.
struct RealMap {
  std::size_t arity_in = 0;
  std::size_t arity_out = 0;
  std::function<std::vector<double>(const std::vector<double>&)> eval;
};

// Open disc |z - center| < radius; the default covers the plane.
struct Disc {
  std::complex<double> center{0.0, 0.0};
  double radius = std::numeric_limits<double>::infinity();
  bool contains(std::complex<double> z) const {
    return std::abs(z - center) < radius;
  }
};

struct ComplexMap {
  std::function<std::complex<double>(std::complex<double>)> eval;
  Disc domain{};
  // Optional analytic derivative; consumers fall back to finite
  // differences when absent.
  std::function<std::complex<double>(std::complex<double>)> deriv{};
};

enum class FdScheme { central, forward };

struct FiniteDiffConfig {
  // 0 means automatic: eps^(1/3) (central) or eps^(1/2) (forward),
  // scaled by max(1, |a|).
  double step = 0.0;
  FdScheme scheme = FdScheme::central;
  int richardson_levels = 0;  // at most 4
};

using JacobianMatrix = Eigen::MatrixXd;

// m x n matrix of partials approximating Df(a).
JacobianMatrix jacobian(const RealMap& f, const std::vector<double>& a,
                        const FiniteDiffConfig& cfg = {});

// Limit approximation of (f(a+hv) - f(a))/h. Equals f(v) for linear f.
std::vector<double> directional_derivative(const RealMap& f,
                                           const std::vector<double>& a,
                                           const std::vector<double>& v,
                                           const FiniteDiffConfig& cfg = {});

// r1 = u_x - v_y, r2 = v_x + u_y for f = u + iv; both vanish where the
// Cauchy-Riemann equations hold.
struct CrResidual {
  double r1 = 0.0;
  double r2 = 0.0;
  double max_abs() const { return std::max(std::abs(r1), std::abs(r2)); }
};

CrResidual cauchy_riemann_residual(const ComplexMap& f, std::complex<double> z,
                                   const FiniteDiffConfig& cfg = {});

inline constexpr double kDefaultCrTol = 1e-6;

// u_x + i v_x. `holomorphic` is false when the CR residual at z exceeds
// cr_tol; the value is still reported.
struct ComplexDerivative {
  std::complex<double> value{0.0, 0.0};
  bool holomorphic = false;
  double cr_residual = 0.0;
};

ComplexDerivative complex_derivative(const ComplexMap& f,
                                     std::complex<double> z,
                                     const FiniteDiffConfig& cfg = {},
                                     double cr_tol = kDefaultCrTol);

struct HolomorphyReport {
  bool holomorphic = false;
  std::complex<double> worst_point{0.0, 0.0};
  double worst_residual = 0.0;
  double tolerance = 0.0;
};

// True iff the max CR residual over the samples stays within tol.
// Certifies sample points only, never a region.
HolomorphyReport is_holomorphic_on(const ComplexMap& f,
                                   std::span<const std::complex<double>> samples,
                                   double tol);

}  // namespace raogeo
