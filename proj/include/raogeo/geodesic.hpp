#pragma once

#include <Eigen/Core>
#include <functional>
#include <vector>

#include "raogeo/quadrature.hpp"
#include "raogeo/statmanifold.hpp"

namespace raogeo {

struct SolverConfig {
  int ode_steps = 256;            // at least 16
  double shoot_tol = 1e-7;        // endpoint residual, measured in the
                                  // metric norm at the target (length units)
  int max_shoot_iters = 40;
  double fd_step_metric = 1e-4;   // scaled by (1 + |theta|) at use
};

// Discretized geodesic with the accumulated Rao length. `speed_drift` is
// the relative variation of the (conserved) speed along the path; large
// values flag an integration that skirted a metric singularity.
struct GeodesicPath {
  std::vector<ParamPoint> points;
  std::vector<TangentVector> velocities;
  double length = 0.0;
  double speed_drift = 0.0;
};

// Metric tensor as a function of the parameter point.
using MetricField = std::function<Eigen::MatrixXd(const std::vector<double>&)>;

struct ChristoffelTensor {
  // gamma[k](i,j) = Gamma^k_ij; symmetric in (i,j).
  std::vector<Eigen::MatrixXd> gamma;
  double metric_condition = 1.0;
};

// Second-kind Christoffel symbols with metric derivatives by central
// differences of the field. The family overload differentiates the
// generic fisher_information path.
ChristoffelTensor christoffel(const MetricField& g, std::size_t dim,
                              const std::vector<double>& theta,
                              const SolverConfig& cfg = {});
ChristoffelTensor christoffel(const ParametricFamily& fam, const ParamPoint& p,
                              const SolverConfig& cfg = {},
                              const QuadratureConfig& q = {});

// Integrates theta'' + Gamma(theta)(theta', theta') = 0 with classic
// fixed-step RK4 from (p0, v0) over [0, arc_time]. Aborts with
// BoundaryExitError if the path leaves the valid region.
GeodesicPath geodesic_shoot(const ParametricFamily& fam, const ParamPoint& p0,
                            const TangentVector& v0, double arc_time,
                            const SolverConfig& cfg = {},
                            const QuadratureConfig& q = {});

struct RaoSolve {
  GeodesicPath path;
  double distance = 0.0;
  int iterations = 0;
  double residual = 0.0;
  std::vector<double> initial_velocity;
};

// Two-point boundary solve by shooting: Newton iteration on the initial
// velocity with a finite-difference endpoint Jacobian, seeded on the
// straight-line chord (rescaled when the first shot exits the domain).
RaoSolve rao_geodesic(const ParametricFamily& fam, const ParamPoint& a,
                      const ParamPoint& b, const SolverConfig& cfg = {},
                      const QuadratureConfig& q = {});

double rao_distance(const ParametricFamily& fam, const ParamPoint& a,
                    const ParamPoint& b, const SolverConfig& cfg = {},
                    const QuadratureConfig& q = {});

// |integral of sqrt(F) between the endpoints| for one-parameter families,
// by adaptive quadrature over the generic fisher_information path.
// Independent of the shooting solver; serves as its oracle in 1-D.
double rao_distance_1d(const ParametricFamily& fam, const ParamPoint& a,
                       const ParamPoint& b, const QuadratureConfig& q = {});

}  // namespace raogeo
