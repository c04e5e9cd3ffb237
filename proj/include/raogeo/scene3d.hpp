#pragma once

#include <Eigen/Core>
#include <array>
#include <complex>
#include <string>

#include "raogeo/conformal.hpp"
#include "raogeo/quadrature.hpp"

namespace raogeo {

enum class PointLabel { A0, B0, C0, C1 };

std::string label_name(PointLabel label);

struct ScenePoint {
  Eigen::Vector3d coords;
  PointLabel label;
};

// Four labeled viewpoints/targets. The third coordinate is the height.
struct Scene {
  ScenePoint a0, b0, c0, c1;
};

Scene make_scene(const Eigen::Vector3d& a0, const Eigen::Vector3d& b0,
                 const Eigen::Vector3d& c0, const Eigen::Vector3d& c1);

// The five inter-point distances A0C0, A0C1, B0A0, B0C0, B0C1.
struct DistanceReport {
  double a0c0 = 0.0;
  double a0c1 = 0.0;
  double b0a0 = 0.0;
  double b0c0 = 0.0;
  double b0c1 = 0.0;
  std::array<double, 5> as_array() const { return {a0c0, a0c1, b0a0, b0c0, b0c1}; }
};

DistanceReport five_distances(const Scene& s);

// Unsigned angle in [0, pi]; `ok` is false (with the cause in `status`)
// when a defining ray degenerates. Values are never NaN.
struct AngleValue {
  double radians = 0.0;
  bool ok = false;
  std::string status;
};

// alpha: at A0 between rays A0C1 and A0C0.
// beta1: at B0 between rays B0C0 and B0C1.
// beta2: at B0 between rays B0A0 and B0C0.
struct ViewAngleReport {
  AngleValue alpha, beta1, beta2;
};

ViewAngleReport view_angles(const Scene& s);

// A complex plane here is a constant-height plane; the four points fit in
// one iff the spread of their third coordinates stays within tol
// (inclusive). The report keeps the heights of C0 and C1, the witness
// pair for the general impossibility.
struct FeasibilityReport {
  bool feasible = false;
  double spread = 0.0;
  double tolerance = 0.0;
  double c0_height = 0.0;
  double c1_height = 0.0;
};

FeasibilityReport single_plane_feasibility(const Scene& s, double tol);

// Isometric embedding of one point pair into its own complex plane:
// first point to 0, second to the pair distance on the real axis.
struct PlaneEmbedding {
  std::string plane;  // "C1".."C5" (plane ids, not point labels)
  PointLabel first, second;
  std::complex<double> image_first{0.0, 0.0};
  std::complex<double> image_second{0.0, 0.0};
};

// Plane order: C1:(A0,C0), C2:(A0,C1), C3:(A0,B0), C4:(B0,C0), C5:(B0,C1).
using PlaneAssignment = std::array<PlaneEmbedding, 5>;

PlaneAssignment plane_assignment(const Scene& s);

// p -> scale * R * p + translation; R must be orthonormal within 1e-10.
Scene apply_similarity(const Scene& s, double scale, const Eigen::Matrix3d& rotation,
                       const Eigen::Vector3d& translation);

// Arc lengths L(C1)..L(C5) of the straight arcs [0, distance] in the five
// embedded planes, each integrated through its own substitution. With
// identity substitutions these reproduce the distance report.
std::array<double, 5> ray_arc_lengths(const Scene& s,
                                      const std::array<Parametrization, 5>& reps,
                                      const QuadratureConfig& q = {});

std::array<Parametrization, 5> identity_parametrizations(const Scene& s);

}  // namespace raogeo
