#pragma once

#include <Eigen/Core>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "raogeo/quadrature.hpp"

namespace raogeo {

// A point in a family's parameter space.
struct ParamPoint {
  std::vector<double> theta;
};

struct TangentVector {
  std::vector<double> dtheta;
};

// Symmetric matrix attached to a parameter point. `alpha` is empty for
// the Fisher metric and holds the entropy order otherwise.
struct MetricTensor {
  Eigen::MatrixXd entries;
  std::optional<double> alpha;
};

struct ParametricFamily;

// Coordinate reduction used when a family's natural parametrization is
// constrained (the multinomial simplex). Geodesic solves run in chart
// coordinates; metric tensor operations stay in the native ones.
struct GeodesicChart {
  std::size_t dim = 0;
  std::function<std::vector<double>(const std::vector<double>&)> to_chart;
  std::function<std::vector<double>(const std::vector<double>&)> from_chart;
  std::function<std::vector<double>(const std::vector<double>&)> push_tangent;
  std::function<std::vector<double>(const std::vector<double>&)> pull_tangent;
  std::shared_ptr<const ParametricFamily> family;
};

// A named statistical family. The density is a function of an outcome x
// and the parameter vector; `score`, when present, gives the analytic
// partial of log density with respect to theta[i].
//
// Discrete families expose `outcomes(theta)`; continuous ones declare the
// support interval (endpoints may be infinite). `in_domain` encodes the
// valid parameter region including the 1e-9 boundary margin: points
// closer to the boundary are rejected, never clamped.
struct ParametricFamily {
  std::string name;
  std::size_t dim = 0;

  std::function<std::vector<double>(const std::vector<double>&)> outcomes;
  double support_lo = 0.0;
  double support_hi = 0.0;

  std::function<double(double, const std::vector<double>&)> density;
  std::function<double(double, const std::vector<double>&, std::size_t)> score;
  std::function<bool(const std::vector<double>&, std::string*)> in_domain;

  // Closed-form Fisher matrix, used as the geodesic solver's fast metric
  // path. fisher_information() never consults it.
  std::function<Eigen::MatrixXd(const std::vector<double>&)> analytic_fisher;

  std::shared_ptr<const GeodesicChart> chart;

  bool discrete() const { return static_cast<bool>(outcomes); }
};

inline constexpr double kBoundaryMargin = 1e-9;

// Throws DomainError (with the family's reason) unless p is interior.
void require_interior(const ParametricFamily& fam, const ParamPoint& p);

// Interior check plus normalization: the density must sum/integrate to 1
// within 1e-6 at p.
void validate_family_point(const ParametricFamily& fam, const ParamPoint& p,
                           const QuadratureConfig& q = {});

// Fisher information matrix: the expectation of the score outer product.
// Exact summation over discrete supports, adaptive quadrature otherwise.
MetricTensor fisher_information(const ParametricFamily& fam,
                                const ParamPoint& p,
                                const QuadratureConfig& q = {});

// Quadratic line element v^T F v.
double rao_line_element(const MetricTensor& F, const TangentVector& v);

// Entropy metric of order alpha: the score outer product weighted by
// density^alpha. Reduces to fisher_information at alpha = 1.
MetricTensor burbea_rao_tensor(const ParametricFamily& fam,
                               const ParamPoint& p, double alpha,
                               const QuadratureConfig& q = {});

// Multinomial entropy tensor with weight density^(alpha-2), summed over
// the n outcomes. Reports the numerical rank next to the matrix.
struct MultinomialAlphaTensor {
  MetricTensor tensor;
  int rank = 0;
};

MultinomialAlphaTensor multinomial_alpha_tensor(const ParamPoint& probs,
                                                double alpha);

// Count of singular values above tol * (largest singular value).
int tensor_rank(const MetricTensor& M, double tol);

// Built-in families.
ParametricFamily bernoulli_family();
ParametricFamily poisson_family();
ParametricFamily normal_family();
ParametricFamily multinomial_family(std::size_t n);
// The multinomial in its n-1 free coordinates (last probability
// eliminated); this is the chart family geodesics run in.
ParametricFamily multinomial_reduced_family(std::size_t n);

// Family lookup by name with a parameter vector of the given length.
ParametricFamily make_family(std::string_view name, std::size_t theta_dim);

// One-string family descriptor: "family=<name>; theta=<comma-separated
// reals>". Shared with the CLI flags.
struct FamilySpec {
  std::string family;
  std::vector<double> theta;
};

FamilySpec parse_family_spec(std::string_view text);

}  // namespace raogeo
