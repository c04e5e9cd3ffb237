#include "raogeo/scene3d.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "raogeo/errors.hpp"

namespace raogeo {
namespace {

constexpr double kRayFloor = 1e-12;

void check_finite(const Eigen::Vector3d& p, PointLabel label) {
  if (!p.allFinite())
    throw DomainError("scene point " + label_name(label) + " has non-finite coordinates");
}

AngleValue ray_angle(const Eigen::Vector3d& vertex, const Eigen::Vector3d& to1,
                     const Eigen::Vector3d& to2, const std::string& ray1,
                     const std::string& ray2) {
  const Eigen::Vector3d u = to1 - vertex;
  const Eigen::Vector3d v = to2 - vertex;
  const double nu = u.norm();
  const double nv = v.norm();
  AngleValue out;
  if (nu <= kRayFloor || nv <= kRayFloor) {
    out.ok = false;
    out.status = "degenerate_ray:" + (nu <= kRayFloor ? ray1 : ray2);
    return out;
  }
  const double cosine = std::clamp(u.dot(v) / (nu * nv), -1.0, 1.0);
  out.radians = std::acos(cosine);
  out.ok = true;
  out.status = "ok";
  return out;
}

PlaneEmbedding embed_pair(const std::string& plane, const ScenePoint& p,
                          const ScenePoint& q) {
  const double dist = (q.coords - p.coords).norm();
  if (dist <= kRayFloor) {
    std::ostringstream os;
    os << "plane " << plane << " pair " << label_name(p.label)
       << label_name(q.label) << " has coincident endpoints";
    throw DomainError(os.str());
  }
  PlaneEmbedding e;
  e.plane = plane;
  e.first = p.label;
  e.second = q.label;
  e.image_first = {0.0, 0.0};
  e.image_second = {dist, 0.0};
  return e;
}

}  // namespace

std::string label_name(PointLabel label) {
  switch (label) {
    case PointLabel::A0: return "A0";
    case PointLabel::B0: return "B0";
    case PointLabel::C0: return "C0";
    case PointLabel::C1: return "C1";
  }
  return "?";
}

Scene make_scene(const Eigen::Vector3d& a0, const Eigen::Vector3d& b0,
                 const Eigen::Vector3d& c0, const Eigen::Vector3d& c1) {
  check_finite(a0, PointLabel::A0);
  check_finite(b0, PointLabel::B0);
  check_finite(c0, PointLabel::C0);
  check_finite(c1, PointLabel::C1);
  return {{a0, PointLabel::A0},
          {b0, PointLabel::B0},
          {c0, PointLabel::C0},
          {c1, PointLabel::C1}};
}

DistanceReport five_distances(const Scene& s) {
  DistanceReport r;
  r.a0c0 = (s.a0.coords - s.c0.coords).norm();
  r.a0c1 = (s.a0.coords - s.c1.coords).norm();
  r.b0a0 = (s.b0.coords - s.a0.coords).norm();
  r.b0c0 = (s.b0.coords - s.c0.coords).norm();
  r.b0c1 = (s.b0.coords - s.c1.coords).norm();
  return r;
}

ViewAngleReport view_angles(const Scene& s) {
  ViewAngleReport r;
  r.alpha = ray_angle(s.a0.coords, s.c1.coords, s.c0.coords, "A0C1", "A0C0");
  r.beta1 = ray_angle(s.b0.coords, s.c0.coords, s.c1.coords, "B0C0", "B0C1");
  r.beta2 = ray_angle(s.b0.coords, s.a0.coords, s.c0.coords, "B0A0", "B0C0");
  return r;
}

FeasibilityReport single_plane_feasibility(const Scene& s, double tol) {
  if (!(tol >= 0.0)) throw DomainError("feasibility tolerance must be non-negative");
  const std::array<double, 4> heights = {s.a0.coords[2], s.b0.coords[2],
                                         s.c0.coords[2], s.c1.coords[2]};
  const auto [lo, hi] = std::minmax_element(heights.begin(), heights.end());
  FeasibilityReport r;
  r.spread = *hi - *lo;
  r.tolerance = tol;
  r.feasible = r.spread <= tol;
  r.c0_height = s.c0.coords[2];
  r.c1_height = s.c1.coords[2];
  return r;
}

PlaneAssignment plane_assignment(const Scene& s) {
  return {embed_pair("C1", s.a0, s.c0), embed_pair("C2", s.a0, s.c1),
          embed_pair("C3", s.a0, s.b0), embed_pair("C4", s.b0, s.c0),
          embed_pair("C5", s.b0, s.c1)};
}

Scene apply_similarity(const Scene& s, double scale, const Eigen::Matrix3d& rotation,
                       const Eigen::Vector3d& translation) {
  if (!(scale > 0.0)) throw DomainError("similarity scale must be positive");
  const double defect =
      (rotation.transpose() * rotation - Eigen::Matrix3d::Identity())
          .cwiseAbs()
          .maxCoeff();
  if (!(defect <= 1e-10))
    throw DomainError("rotation matrix is not orthonormal within 1e-10");
  if (!translation.allFinite() || !rotation.allFinite())
    throw DomainError("similarity transform has non-finite entries");

  auto map = [&](const Eigen::Vector3d& p) -> Eigen::Vector3d {
    return scale * (rotation * p) + translation;
  };
  return make_scene(map(s.a0.coords), map(s.b0.coords), map(s.c0.coords),
                    map(s.c1.coords));
}

std::array<double, 5> ray_arc_lengths(const Scene& s,
                                      const std::array<Parametrization, 5>& reps,
                                      const QuadratureConfig& q) {
  const PlaneAssignment planes = plane_assignment(s);
  std::array<double, 5> lengths{};
  for (std::size_t i = 0; i < 5; ++i) {
    const double dist = planes[i].image_second.real();
    Arc segment;
    segment.a = 0.0;
    segment.b = dist;
    segment.eval = [](double t) { return std::complex<double>(t, 0.0); };
    segment.deriv = [](double) { return std::complex<double>(1.0, 0.0); };
    lengths[i] = arc_length(segment, reps[i], q);
  }
  return lengths;
}

std::array<Parametrization, 5> identity_parametrizations(const Scene& s) {
  const PlaneAssignment planes = plane_assignment(s);
  std::array<Parametrization, 5> reps;
  for (std::size_t i = 0; i < 5; ++i)
    reps[i] = identity_parametrization(0.0, planes[i].image_second.real());
  return reps;
}

}  // namespace raogeo
