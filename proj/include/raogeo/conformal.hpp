#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "raogeo/differential.hpp"
#include "raogeo/quadrature.hpp"

namespace raogeo {

// Planar curve z(t) on [a, b]. `deriv` is optional; tangents fall back
// to central differences with step 1e-6 * (b - a).
struct Arc {
  std::function<std::complex<double>(double)> eval;
  std::function<std::complex<double>(double)> deriv{};
  double a = 0.0;
  double b = 1.0;
};

Arc make_line(std::complex<double> z0, std::complex<double> z1);
Arc make_circle(std::complex<double> center, double radius, double t0, double t1);
// Parameter runs over [0, n-1]; tangents come from segment directions.
Arc make_polyline(std::vector<std::complex<double>> pts);

// Sampled sanity check: finite values and, when an analytic derivative is
// present, agreement with finite differences within 1e-5.
void validate_arc(const Arc& arc);

// Monotone substitution t = psi(tau) on [alpha, beta].
struct Parametrization {
  std::function<double(double)> psi;
  std::function<double(double)> dpsi;
  double alpha = 0.0;
  double beta = 1.0;
};

Parametrization identity_parametrization(double a, double b);

// psi must be strictly increasing (sampled at 256 points) and map
// [alpha, beta] onto the arc's [a, b] within 1e-9.
void validate_parametrization(const Parametrization& rep, const Arc& arc);

// Normalizes to (-pi, pi].
double wrap_angle(double angle);

// Tangent z'(t), analytic or finite-difference.
std::complex<double> arc_tangent(const Arc& arc, double t);

// arg z'(t); throws SingularTangentError when |z'| <= 1e-12.
double tangent_angle(const Arc& arc, double t);

// The composed arc t -> f(z(t)). Its derivative callable applies the
// chain rule f'(z(t)) * z'(t), using the map's analytic derivative when
// given and the finite-difference complex derivative otherwise; where
// the map fails the CR check the composition is differenced directly.
Arc image_arc(const ComplexMap& f, const Arc& arc);

struct ImageAngleReport {
  double source_angle = 0.0;    // arg z'(c)
  double map_rotation = 0.0;    // arg f'(z(c))
  double image_angle = 0.0;     // arg of the image-arc tangent at c
  double chain_residual = 0.0;  // |image - rotation - source| mod 2pi
};

// Requires f holomorphic at z(c) with f'(z(c)) away from zero; the image
// angle is measured on the composed arc and checked against the chain
// rule source + rotation.
ImageAngleReport image_tangent_angle(const ComplexMap& f, const Arc& arc,
                                     double c);

struct AngleReport2D {
  double theta1 = 0.0;
  double theta2 = 0.0;
  double image_theta1 = 0.0;
  double image_theta2 = 0.0;
  double source_angle = 0.0;  // theta2 - theta1, wrapped
  double image_angle = 0.0;
  double defect = 0.0;        // |image_angle - source_angle| mod 2pi
  bool pass = false;
  double tolerance = 0.0;
};

// Compares the angle between two arcs crossing at parameter c with the
// angle between their images under f. Image tangents are measured on the
// composed curves, so anti-conformal maps report their flipped angle
// instead of erroring out; a vanishing derivative of a holomorphic map is
// a genuine conformality failure and throws CriticalPointError.
AngleReport2D angle_preservation_check(const ComplexMap& f, const Arc& arc1,
                                       const Arc& arc2, double c, double tol);

// Arc length through the substitution t = psi(tau):
// integral of |z'(psi(tau))| * psi'(tau) over [alpha, beta].
double arc_length(const Arc& arc, const Parametrization& rep,
                  const QuadratureConfig& q = {});

// Returns the shared parametrization when all entries agree pointwise on
// a 64-point grid within 1e-9; otherwise throws naming the first
// divergent pair.
Parametrization common_parametrization(std::span<const Parametrization> reps);

}  // namespace raogeo
