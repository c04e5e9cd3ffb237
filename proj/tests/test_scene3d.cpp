#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <random>

#include "raogeo/errors.hpp"
#include "raogeo/scene3d.hpp"

using namespace raogeo;
constexpr double kPi = std::numbers::pi;

namespace {

Scene orthogonal_scene() {
  return make_scene({0.0, 0.0, 0.0}, {0.0, 0.0, 1.0}, {1.0, 0.0, 0.0},
                    {0.0, 1.0, 0.0});
}

Scene random_scene(std::mt19937& rng) {
  std::uniform_real_distribution<double> coord(-5.0, 5.0);
  auto pt = [&] { return Eigen::Vector3d(coord(rng), coord(rng), coord(rng)); };
  return make_scene(pt(), pt(), pt(), pt());
}

Eigen::Matrix3d random_rotation(std::mt19937& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::Matrix3d m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = gauss(rng);
  Eigen::HouseholderQR<Eigen::Matrix3d> qr(m);
  Eigen::Matrix3d q = qr.householderQ();
  if (q.determinant() < 0.0) q.col(0) = -q.col(0);
  return q;
}

// Spreadsheet-style recomputation: coordinate differences squared, summed
// long-hand, square-rooted.
double brute_distance(const Eigen::Vector3d& p, const Eigen::Vector3d& q) {
  double sum = 0.0;
  for (int i = 0; i < 3; ++i) sum += (p[i] - q[i]) * (p[i] - q[i]);
  return std::sqrt(sum);
}

double atan2_angle(const Eigen::Vector3d& vertex, const Eigen::Vector3d& to1,
                   const Eigen::Vector3d& to2) {
  const Eigen::Vector3d u = to1 - vertex;
  const Eigen::Vector3d v = to2 - vertex;
  return std::atan2(u.cross(v).norm(), u.dot(v));
}

}  // namespace

TEST_CASE("3-4-5 distance and coincident points") {
  const Scene s = make_scene({0.0, 0.0, 0.0}, {0.0, 0.0, 1.0}, {3.0, 4.0, 0.0},
                             {0.0, 1.0, 0.0});
  CHECK(five_distances(s).a0c0 == doctest::Approx(5.0));

  const Scene zero = make_scene({1.0, 2.0, 3.0}, {1.0, 2.0, 3.0}, {1.0, 2.0, 3.0},
                                {1.0, 2.0, 3.0});
  const DistanceReport d = five_distances(zero);
  for (double v : d.as_array()) CHECK(v == 0.0);
}

TEST_CASE("distances match the long-hand recomputation") {
  std::mt19937 rng(51);
  for (int trial = 0; trial < 20; ++trial) {
    const Scene s = random_scene(rng);
    const DistanceReport d = five_distances(s);
    CHECK(d.a0c0 == doctest::Approx(brute_distance(s.a0.coords, s.c0.coords)));
    CHECK(d.a0c1 == doctest::Approx(brute_distance(s.a0.coords, s.c1.coords)));
    CHECK(d.b0a0 == doctest::Approx(brute_distance(s.b0.coords, s.a0.coords)));
    CHECK(d.b0c0 == doctest::Approx(brute_distance(s.b0.coords, s.c0.coords)));
    CHECK(d.b0c1 == doctest::Approx(brute_distance(s.b0.coords, s.c1.coords)));
  }
}

TEST_CASE("view angles of the orthogonal scene") {
  const ViewAngleReport r = view_angles(orthogonal_scene());
  REQUIRE(r.alpha.ok);
  CHECK(r.alpha.radians == doctest::Approx(kPi / 2.0));
  REQUIRE(r.beta1.ok);
  CHECK(r.beta1.radians == doctest::Approx(kPi / 3.0));
  REQUIRE(r.beta2.ok);
  CHECK(r.beta2.radians == doctest::Approx(kPi / 4.0));
}

TEST_CASE("coincident target rays give a zero angle") {
  const Scene s = make_scene({0.0, 0.0, 0.0}, {0.0, 0.0, 1.0}, {2.0, 0.0, 0.0},
                             {2.0, 0.0, 0.0});
  const ViewAngleReport r = view_angles(s);
  REQUIRE(r.alpha.ok);
  CHECK(r.alpha.radians == doctest::Approx(0.0));
}

TEST_CASE("degenerate rays are flagged, never NaN") {
  const Scene s = make_scene({0.0, 0.0, 0.0}, {0.0, 0.0, 1.0}, {0.0, 0.0, 0.0},
                             {0.0, 1.0, 0.0});
  const ViewAngleReport r = view_angles(s);
  CHECK_FALSE(r.alpha.ok);
  CHECK(r.alpha.status.find("degenerate_ray") != std::string::npos);
  CHECK_FALSE(std::isnan(r.alpha.radians));
}

TEST_CASE("angles match the atan2 cross-product oracle") {
  std::mt19937 rng(53);
  for (int trial = 0; trial < 20; ++trial) {
    const Scene s = random_scene(rng);
    const ViewAngleReport r = view_angles(s);
    if (r.alpha.ok)
      CHECK(std::abs(r.alpha.radians -
                     atan2_angle(s.a0.coords, s.c1.coords, s.c0.coords)) < 1e-12);
    if (r.beta1.ok)
      CHECK(std::abs(r.beta1.radians -
                     atan2_angle(s.b0.coords, s.c0.coords, s.c1.coords)) < 1e-12);
    if (r.beta2.ok)
      CHECK(std::abs(r.beta2.radians -
                     atan2_angle(s.b0.coords, s.a0.coords, s.c0.coords)) < 1e-12);
  }
}

TEST_CASE("single-plane feasibility follows the height spread") {
  const Scene flat = make_scene({0.0, 0.0, 2.0}, {1.0, 0.0, 2.0}, {0.0, 1.0, 2.0},
                                {1.0, 1.0, 2.0});
  CHECK(single_plane_feasibility(flat, 0.0).feasible);

  const Scene spread = make_scene({0.0, 0.0, 2.0}, {1.0, 0.0, 3.0}, {0.0, 1.0, 1.0},
                                  {1.0, 1.0, 0.0});
  const FeasibilityReport r = single_plane_feasibility(spread, 0.5);
  CHECK_FALSE(r.feasible);
  CHECK(r.spread == doctest::Approx(3.0));
  CHECK(r.c0_height == doctest::Approx(1.0));
  CHECK(r.c1_height == doctest::Approx(0.0));

  // Inclusive comparison at the boundary.
  CHECK(single_plane_feasibility(spread, 3.0).feasible);
  CHECK_FALSE(single_plane_feasibility(spread, 2.999999).feasible);
}

TEST_CASE("plane embeddings are isometric onto the real axis") {
  const Scene s = make_scene({0.0, 0.0, 0.0}, {0.0, 0.0, 1.0}, {3.0, 4.0, 0.0},
                             {0.0, 1.0, 0.0});
  const PlaneAssignment planes = plane_assignment(s);
  CHECK(planes[0].plane == "C1");
  CHECK(std::abs(planes[0].image_first) == 0.0);
  CHECK(planes[0].image_second.real() == doctest::Approx(5.0));
  CHECK(planes[0].image_second.imag() == 0.0);

  const DistanceReport d = five_distances(s);
  const std::array<double, 5> dists = d.as_array();
  for (std::size_t i = 0; i < 5; ++i) {
    const double embedded = std::abs(planes[i].image_second - planes[i].image_first);
    CHECK(embedded == dists[i]);  // exact, same arithmetic
  }
}

TEST_CASE("coincident pair endpoints name the offending plane") {
  const Scene s = make_scene({0.0, 0.0, 0.0}, {1.0, 1.0, 1.0}, {1.0, 1.0, 1.0},
                             {0.0, 1.0, 0.0});
  CHECK_THROWS_WITH_AS((void)plane_assignment(s), doctest::Contains("C4"),
                       DomainError);
}

TEST_CASE("identity similarity leaves the scene untouched") {
  const Scene s = orthogonal_scene();
  const Scene t = apply_similarity(s, 1.0, Eigen::Matrix3d::Identity(),
                                   Eigen::Vector3d::Zero());
  CHECK((t.a0.coords - s.a0.coords).norm() == 0.0);
  CHECK((t.c1.coords - s.c1.coords).norm() == 0.0);
}

TEST_CASE("scaling doubles distances and fixes angles") {
  const Scene s = orthogonal_scene();
  const Scene t = apply_similarity(s, 2.0, Eigen::Matrix3d::Identity(),
                                   Eigen::Vector3d::Zero());
  const auto d0 = five_distances(s).as_array();
  const auto d1 = five_distances(t).as_array();
  for (std::size_t i = 0; i < 5; ++i)
    CHECK(d1[i] == doctest::Approx(2.0 * d0[i]).epsilon(1e-12));

  const ViewAngleReport a0 = view_angles(s);
  const ViewAngleReport a1 = view_angles(t);
  CHECK(std::abs(a1.alpha.radians - a0.alpha.radians) <= 1e-12);
  CHECK(std::abs(a1.beta1.radians - a0.beta1.radians) <= 1e-12);
  CHECK(std::abs(a1.beta2.radians - a0.beta2.radians) <= 1e-12);
}

TEST_CASE("rigid motions preserve angles and distance ratios") {
  std::mt19937 rng(59);
  std::uniform_real_distribution<double> shift(-10.0, 10.0);
  std::uniform_real_distribution<double> scale_draw(0.3, 3.0);
  const Scene s = random_scene(rng);
  const auto d0 = five_distances(s).as_array();
  const ViewAngleReport a0 = view_angles(s);

  for (int trial = 0; trial < 25; ++trial) {
    const double scale = scale_draw(rng);
    const Eigen::Matrix3d R = random_rotation(rng);
    const Eigen::Vector3d t(shift(rng), shift(rng), shift(rng));
    const Scene moved = apply_similarity(s, scale, R, t);

    const auto d1 = five_distances(moved).as_array();
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = 0; j < 5; ++j)
        CHECK(std::abs(d1[i] / d1[j] - d0[i] / d0[j]) <= 1e-10 * (1.0 + d0[i] / d0[j]));

    const ViewAngleReport a1 = view_angles(moved);
    CHECK(std::abs(a1.alpha.radians - a0.alpha.radians) <= 1e-10);
    CHECK(std::abs(a1.beta1.radians - a0.beta1.radians) <= 1e-10);
    CHECK(std::abs(a1.beta2.radians - a0.beta2.radians) <= 1e-10);
  }
}

TEST_CASE("similarity transform preconditions") {
  const Scene s = orthogonal_scene();
  Eigen::Matrix3d skewed = Eigen::Matrix3d::Identity();
  skewed(0, 1) = 0.5;
  CHECK_THROWS_AS((void)apply_similarity(s, 1.0, skewed, Eigen::Vector3d::Zero()),
                  DomainError);
  CHECK_THROWS_AS((void)apply_similarity(s, 0.0, Eigen::Matrix3d::Identity(),
                                         Eigen::Vector3d::Zero()),
                  DomainError);
  CHECK_THROWS_AS((void)apply_similarity(s, -2.0, Eigen::Matrix3d::Identity(),
                                         Eigen::Vector3d::Zero()),
                  DomainError);
}

TEST_CASE("identity-parametrized ray lengths equal the distances") {
  std::mt19937 rng(61);
  const Scene s = random_scene(rng);
  const auto lengths = ray_arc_lengths(s, identity_parametrizations(s));
  const auto dists = five_distances(s).as_array();
  for (std::size_t i = 0; i < 5; ++i) CHECK(std::abs(lengths[i] - dists[i]) <= 1e-9);
}

TEST_CASE("a common substitution shape leaves ray lengths unchanged") {
  std::mt19937 rng(67);
  const Scene s = random_scene(rng);
  const auto dists = five_distances(s).as_array();

  std::array<Parametrization, 5> reps;
  for (std::size_t i = 0; i < 5; ++i) {
    const double d = dists[i];
    reps[i].alpha = 0.0;
    reps[i].beta = 1.0;
    reps[i].psi = [d](double tau) { return d * tau * tau; };
    reps[i].dpsi = [d](double tau) { return 2.0 * d * tau; };
  }
  const auto lengths = ray_arc_lengths(s, reps);
  for (std::size_t i = 0; i < 5; ++i) CHECK(std::abs(lengths[i] - dists[i]) <= 1e-7);
}

TEST_CASE("non-monotone substitutions are rejected") {
  std::mt19937 rng(71);
  const Scene s = random_scene(rng);
  auto reps = identity_parametrizations(s);
  const double d = five_distances(s).a0c0;
  reps[0].alpha = 0.0;
  reps[0].beta = 1.0;
  reps[0].psi = [d](double tau) { return d * std::sin(kPi * tau); };
  reps[0].dpsi = [d](double tau) { return d * kPi * std::cos(kPi * tau); };
  CHECK_THROWS_AS((void)ray_arc_lengths(s, reps), DomainError);
}

TEST_CASE("non-finite coordinates are rejected") {
  CHECK_THROWS_AS((void)make_scene({0.0, 0.0, std::nan("")}, {0.0, 0.0, 1.0},
                                   {1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}),
                  DomainError);
}
