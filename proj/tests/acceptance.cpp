// Acceptance suite: one pass/fail line per criterion, exit status 0 only
// when every criterion holds. argv[1] is the CLI binary (used by the
// end-to-end criterion).

#include <sys/wait.h>

#include <Eigen/Dense>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "raogeo/conformal.hpp"
#include "raogeo/differential.hpp"
#include "raogeo/geodesic.hpp"
#include "raogeo/report.hpp"
#include "raogeo/scene3d.hpp"
#include "raogeo/scene_io.hpp"
#include "raogeo/statmanifold.hpp"

using namespace raogeo;
using std::complex;
constexpr double kPi = std::numbers::pi;

namespace {

struct Criterion {
  std::string id;
  std::function<void()> run;
  double time_limit_s = 0.0;  // 0 = unbounded
};

struct Failure {
  std::string message;
};

void require(bool cond, const std::string& message) {
  if (!cond) throw Failure{message};
}

std::string g_cli_path;

// ---- criterion bodies -----------------------------------------------------

void fisher_analytic_oracles() {
  const ParametricFamily bern = bernoulli_family();
  for (int i = 1; i <= 9; ++i) {
    const double p = 0.1 * i;
    const double got = fisher_information(bern, {{p}}).entries(0, 0);
    const double want = 1.0 / (p * (1.0 - p));
    require(std::abs(got - want) <= 1e-6,
            "bernoulli fisher off at p=" + std::to_string(p));
  }
  const ParametricFamily pois = poisson_family();
  for (const double lambda : {0.5, 1.0, 2.0, 4.0}) {
    const double got = fisher_information(pois, {{lambda}}).entries(0, 0);
    require(std::abs(got - 1.0 / lambda) <= 1e-6,
            "poisson fisher off at lambda=" + std::to_string(lambda));
  }
  const ParametricFamily norm = normal_family();
  const std::vector<std::pair<double, double>> normals{
      {0.0, 1.0}, {1.0, 0.5}, {-2.0, 2.0}, {0.3, 0.7}, {5.0, 1.5}, {-1.0, 3.0}};
  for (const auto& [mu, sigma] : normals) {
    const Eigen::MatrixXd F = fisher_information(norm, {{mu, sigma}}).entries;
    require(std::abs(F(0, 0) - 1.0 / (sigma * sigma)) <= 1e-6, "normal F_mumu off");
    require(std::abs(F(1, 1) - 2.0 / (sigma * sigma)) <= 1e-6, "normal F_ss off");
    require(std::abs(F(0, 1)) <= 1e-6 && std::abs(F(1, 0)) <= 1e-6,
            "normal F cross term off");
  }
}

std::vector<ParamPoint> interior_points(const std::string& family, int count,
                                        unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<ParamPoint> pts;
  for (int i = 0; i < count; ++i) {
    if (family == "bernoulli") {
      pts.push_back({{0.08 + 0.84 * unit(rng)}});
    } else if (family == "poisson") {
      pts.push_back({{0.4 + 4.0 * unit(rng)}});
    } else if (family == "normal") {
      pts.push_back({{-1.5 + 3.0 * unit(rng), 0.5 + 1.5 * unit(rng)}});
    } else {
      const double a = 0.15 + 0.4 * unit(rng);
      const double b = (1.0 - a) * (0.25 + 0.5 * unit(rng));
      pts.push_back({{a, b, 1.0 - a - b}});
    }
  }
  return pts;
}

void burbea_rao_reduction() {
  for (const std::string family : {"bernoulli", "poisson", "normal", "multinomial"}) {
    const ParametricFamily fam = make_family(family, 3);
    for (const ParamPoint& p : interior_points(family, 10, 101)) {
      const Eigen::MatrixXd F = fisher_information(fam, p).entries;
      const Eigen::MatrixXd G = burbea_rao_tensor(fam, p, 1.0).entries;
      require((F - G).cwiseAbs().maxCoeff() <= 1e-6,
              "alpha=1 tensor differs from fisher for " + family);
    }
  }
}

void rao_distance_oracle() {
  std::mt19937 rng(211);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  const ParametricFamily bern = bernoulli_family();
  for (int trial = 0; trial < 20; ++trial) {
    const double p = 0.1 + 0.8 * unit(rng);
    const double q = 0.1 + 0.8 * unit(rng);
    const double shoot = rao_distance(bern, {{p}}, {{q}});
    const double oracle = rao_distance_1d(bern, {{p}}, {{q}});
    require(std::abs(shoot - oracle) <= 1e-4,
            "bernoulli shoot vs oracle off at (" + std::to_string(p) + ", " +
                std::to_string(q) + ")");
  }

  const ParametricFamily pois = poisson_family();
  for (int trial = 0; trial < 20; ++trial) {
    const double a = 0.5 + 4.5 * unit(rng);
    const double b = 0.5 + 4.5 * unit(rng);
    const double shoot = rao_distance(pois, {{a}}, {{b}});
    const double oracle = rao_distance_1d(pois, {{a}}, {{b}});
    require(std::abs(shoot - oracle) <= 1e-4,
            "poisson shoot vs oracle off at (" + std::to_string(a) + ", " +
                std::to_string(b) + ")");
  }

  require(std::abs(rao_distance(pois, {{1.0}}, {{4.0}}) - 2.0) <= 1e-4,
          "poisson d(1,4) != 2");
}

void metric_axioms() {
  const SolverConfig cfg;
  for (const std::string family : {"bernoulli", "poisson", "normal", "multinomial"}) {
    const ParametricFamily fam = make_family(family, 3);
    const std::vector<ParamPoint> pts = interior_points(family, 150, 307);
    for (int t = 0; t < 50; ++t) {
      const ParamPoint& a = pts[static_cast<std::size_t>(3 * t)];
      const ParamPoint& b = pts[static_cast<std::size_t>(3 * t + 1)];
      const ParamPoint& c = pts[static_cast<std::size_t>(3 * t + 2)];
      const double ab = rao_distance(fam, a, b, cfg);
      const double ba = rao_distance(fam, b, a, cfg);
      require(std::abs(ab - ba) <= 2.0 * cfg.shoot_tol,
              family + " symmetry violated: |" + std::to_string(ab) + " - " +
                  std::to_string(ba) + "|");
      const double bc = rao_distance(fam, b, c, cfg);
      const double ac = rao_distance(fam, a, c, cfg);
      require(ac <= ab + bc + 1e-3, family + " triangle inequality violated");
    }
  }
}

Arc acceptance_line(complex<double> center, double angle, double reach) {
  const complex<double> dir = std::polar(reach, angle);
  Arc arc;
  arc.a = -1.0;
  arc.b = 1.0;
  arc.eval = [center, dir](double t) { return center + t * dir; };
  arc.deriv = [dir](double) { return dir; };
  return arc;
}

struct ArcPair {
  Arc arc1, arc2;
  complex<double> at;
};

std::vector<ArcPair> conformal_trials() {
  std::mt19937 rng(401);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<ArcPair> pairs;
  while (pairs.size() < 20) {
    // Crossing point well away from 0, so every map in the suite is
    // holomorphic with a non-vanishing derivative on a neighbourhood.
    const complex<double> z0 =
        std::polar(0.6 + 1.2 * unit(rng), 2.0 * kPi * unit(rng));
    const double theta1 = 2.0 * kPi * unit(rng);
    const double gap = 0.25 + (kPi - 0.5) * unit(rng);
    const double reach = 0.15 * std::abs(z0);
    pairs.push_back({acceptance_line(z0, theta1, reach),
                     acceptance_line(z0, theta1 + gap, reach), z0});
  }
  return pairs;
}

void conformality_suite() {
  const std::vector<ArcPair> pairs = conformal_trials();
  const std::vector<std::pair<std::string, ComplexMap>> maps = {
      {"square", {[](complex<double> z) { return z * z; }}},
      {"exp", {[](complex<double> z) { return std::exp(z); }}},
      {"reciprocal", {[](complex<double> z) { return 1.0 / z; }}}};

  for (const auto& [name, map] : maps) {
    for (const ArcPair& pair : pairs) {
      const AngleReport2D r =
          angle_preservation_check(map, pair.arc1, pair.arc2, 0.0, 1e-5);
      require(r.pass, name + " failed to preserve an angle (defect " +
                          std::to_string(r.defect) + ")");
    }
  }

  const ComplexMap conj{[](complex<double> z) { return std::conj(z); }};
  for (const ArcPair& pair : pairs) {
    const AngleReport2D r =
        angle_preservation_check(conj, pair.arc1, pair.arc2, 0.0, 1e-5);
    require(!r.pass, "conjugate map unexpectedly preserved an angle");
    require(std::abs(wrap_angle(r.image_angle + r.source_angle)) <= 1e-5,
            "conjugate image angle is not the sign-flipped source angle");
  }
}

void angle_chain_rule() {
  const std::vector<ArcPair> pairs = conformal_trials();
  const std::vector<std::pair<std::string, ComplexMap>> maps = {
      {"square", {[](complex<double> z) { return z * z; }}},
      {"exp", {[](complex<double> z) { return std::exp(z); }}},
      {"reciprocal", {[](complex<double> z) { return 1.0 / z; }}}};
  for (const auto& [name, map] : maps) {
    for (const ArcPair& pair : pairs) {
      for (const Arc* arc : {&pair.arc1, &pair.arc2}) {
        const ImageAngleReport r = image_tangent_angle(map, *arc, 0.0);
        require(r.chain_residual <= 1e-6,
                name + " chain-rule residual " + std::to_string(r.chain_residual));
      }
    }
  }
}

void arc_length_invariance() {
  const Arc half_circle = make_circle({0.0, 0.0}, 1.0, 0.0, kPi);
  const double by_identity =
      arc_length(half_circle, identity_parametrization(0.0, kPi));
  require(std::abs(by_identity - kPi) <= 1e-8, "identity half-circle length off");

  Parametrization quadratic{[](double tau) { return kPi * tau * tau; },
                            [](double tau) { return 2.0 * kPi * tau; }, 0.0, 1.0};
  require(std::abs(arc_length(half_circle, quadratic) - kPi) <= 1e-8,
          "quadratic substitution length off");

  Parametrization sine{
      [](double tau) { return kPi * std::sin(0.5 * kPi * tau); },
      [](double tau) { return 0.5 * kPi * kPi * std::cos(0.5 * kPi * tau); }, 0.0,
      1.0};
  require(std::abs(arc_length(half_circle, sine) - kPi) <= 1e-8,
          "sine substitution length off");

  std::mt19937 rng(503);
  std::uniform_real_distribution<double> coord(-4.0, 4.0);
  auto pt = [&] { return Eigen::Vector3d(coord(rng), coord(rng), coord(rng)); };
  const Scene s = make_scene(pt(), pt(), pt(), pt());
  const auto lengths = ray_arc_lengths(s, identity_parametrizations(s));
  const auto dists = five_distances(s).as_array();
  for (std::size_t i = 0; i < 5; ++i)
    require(std::abs(lengths[i] - dists[i]) <= 1e-9,
            "L_C" + std::to_string(i + 1) + " differs from its distance");
}

void proposition_suite() {
  std::mt19937 rng(601);
  std::uniform_real_distribution<double> coord(-5.0, 5.0);
  auto pt = [&] { return Eigen::Vector3d(coord(rng), coord(rng), coord(rng)); };

  // Prop 1: feasibility tracks the height spread.
  const Scene flat = make_scene({0.0, 0.0, 1.5}, {1.0, 2.0, 1.5}, {3.0, 1.0, 1.5},
                                {2.0, 2.0, 1.5});
  require(single_plane_feasibility(flat, 0.0).feasible, "equal heights infeasible");
  for (int trial = 0; trial < 20; ++trial) {
    const Scene s = make_scene(pt(), pt(), pt(), pt());
    const FeasibilityReport r = single_plane_feasibility(s, 0.25);
    require(r.feasible == (r.spread <= 0.25), "feasibility verdict mismatch");
  }

  // Prop 2: the five embeddings are exactly isometric.
  for (int trial = 0; trial < 20; ++trial) {
    const Scene s = make_scene(pt(), pt(), pt(), pt());
    const PlaneAssignment planes = plane_assignment(s);
    const auto dists = five_distances(s).as_array();
    for (std::size_t i = 0; i < 5; ++i) {
      require(std::abs(planes[i].image_second - planes[i].image_first) == dists[i],
              "embedding not exactly isometric");
    }
  }

  // Prop 3: rigid-motion invariance plus exact scaling homogeneity.
  const Scene base = make_scene(pt(), pt(), pt(), pt());
  const auto d0 = five_distances(base).as_array();
  const ViewAngleReport a0 = view_angles(base);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> scale_draw(0.2, 4.0);
  for (int trial = 0; trial < 100; ++trial) {
    Eigen::Matrix3d m;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) m(i, j) = gauss(rng);
    Eigen::Matrix3d R = Eigen::HouseholderQR<Eigen::Matrix3d>(m).householderQ();
    if (R.determinant() < 0.0) R.col(0) = -R.col(0);
    const Eigen::Vector3d t(coord(rng), coord(rng), coord(rng));
    const double scale = scale_draw(rng);

    const Scene moved = apply_similarity(base, scale, R, t);
    const auto d1 = five_distances(moved).as_array();
    for (std::size_t i = 0; i < 5; ++i)
      require(std::abs(d1[i] - scale * d0[i]) <= 1e-12 * scale * d0[i] + 1e-15,
              "distance did not scale exactly");

    const ViewAngleReport a1 = view_angles(moved);
    require(std::abs(a1.alpha.radians - a0.alpha.radians) <= 1e-10 &&
                std::abs(a1.beta1.radians - a0.beta1.radians) <= 1e-10 &&
                std::abs(a1.beta2.radians - a0.beta2.radians) <= 1e-10,
            "angle not invariant under a similarity transform");
  }
}

void finite_difference_engine() {
  // Degree <= 3 polynomial maps against their symbolic derivatives.
  std::mt19937 rng(701);
  std::uniform_real_distribution<double> coeff(-2.0, 2.0);
  const int exps[][3] = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {2, 0, 0},
                         {0, 2, 0}, {0, 0, 2}, {1, 1, 0}, {1, 0, 1}, {0, 1, 1},
                         {3, 0, 0}, {0, 3, 0}, {0, 0, 3}, {2, 1, 0}, {0, 2, 1},
                         {1, 1, 1}};
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> c;
    for (std::size_t m = 0; m < std::size(exps); ++m) c.push_back(coeff(rng));
    auto value = [&](const std::vector<double>& x) {
      double s = 0.0;
      for (std::size_t m = 0; m < std::size(exps); ++m)
        s += c[m] * std::pow(x[0], exps[m][0]) * std::pow(x[1], exps[m][1]) *
             std::pow(x[2], exps[m][2]);
      return std::vector<double>{s};
    };
    auto dvalue = [&](const std::vector<double>& x, int j) {
      double s = 0.0;
      for (std::size_t m = 0; m < std::size(exps); ++m) {
        int e[3] = {exps[m][0], exps[m][1], exps[m][2]};
        if (e[j] == 0) continue;
        const double factor = e[j];
        e[j] -= 1;
        s += c[m] * factor * std::pow(x[0], e[0]) * std::pow(x[1], e[1]) *
             std::pow(x[2], e[2]);
      }
      return s;
    };
    const std::vector<double> a{coeff(rng), coeff(rng), coeff(rng)};
    FiniteDiffConfig cfg;
    cfg.richardson_levels = 1;
    const JacobianMatrix J = jacobian({3, 1, value}, a, cfg);
    for (int j = 0; j < 3; ++j)
      require(std::abs(J(0, j) - dvalue(a, j)) <= 1e-6,
              "polynomial jacobian beyond 1e-6");
  }

  // CR residual converges at order >= 2 under step halving.
  for (const complex<double> z : {complex<double>{0.3, 0.2}, {-0.5, 0.9}}) {
    const ComplexMap f{[](complex<double> w) { return std::exp(w); }};
    FiniteDiffConfig coarse, fine;
    coarse.step = 1e-3;
    fine.step = 5e-4;
    const double rc = cauchy_riemann_residual(f, z, coarse).max_abs();
    const double rf = cauchy_riemann_residual(f, z, fine).max_abs();
    require(rf > 0.0 && std::log2(rc / rf) >= 2.0 - 0.1,
            "CR residual convergence below second order");
  }
}

int run_cli(const std::string& args) {
  const std::string command = g_cli_path + " " + args;
  const int status = std::system(command.c_str());
  if (status == -1) throw Failure{"failed to launch: " + command};
  return WEXITSTATUS(status);
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), "cannot read " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void cli_end_to_end() {
  require(!g_cli_path.empty(), "CLI path missing (pass it as argv[1])");
  const auto dir =
      std::filesystem::temp_directory_path() /
      ("raogeo_accept_" + std::to_string(std::random_device{}()));
  std::filesystem::create_directories(dir);
  const auto scene_path = dir / "scene.txt";
  {
    std::ofstream out(scene_path);
    out << "A0 = 0 0 0\nB0 = 0 0 1\nC0 = 1 0 0\nC1 = 0 1 0\n";
  }

  const auto csv_path = dir / "report.csv";
  require(run_cli("scene report --in " + scene_path.string() + " --out " +
                  csv_path.string()) == 0,
          "scene report exited non-zero");
  const std::string csv = slurp(csv_path);
  require(csv.find("alpha,1.570796327,radians,ok") != std::string::npos,
          "alpha row missing its 10-significant-digit pi/2");
  const std::vector<ReportRow> rows = parse_report_csv(csv);
  require(to_csv(rows) == csv, "CSV did not round-trip");

  const auto svg1 = dir / "scene1.svg";
  const auto svg2 = dir / "scene2.svg";
  require(run_cli("scene render --in " + scene_path.string() + " --out " +
                  svg1.string() + " --projection xy") == 0,
          "first render exited non-zero");
  require(run_cli("scene render --in " + scene_path.string() + " --out " +
                  svg2.string() + " --projection xy") == 0,
          "second render exited non-zero");
  require(slurp(svg1) == slurp(svg2), "SVG bytes differ between runs");

  std::filesystem::remove_all(dir);
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) g_cli_path = argv[1];

  const std::vector<Criterion> criteria = {
      {"01 fisher-analytic-oracles", fisher_analytic_oracles, 5.0},
      {"02 burbea-rao-reduction", burbea_rao_reduction, 10.0},
      {"03 rao-distance-oracle", rao_distance_oracle, 60.0},
      {"04 metric-axioms", metric_axioms, 0.0},
      {"05 conformality-suite", conformality_suite, 0.0},
      {"06 angle-chain-rule", angle_chain_rule, 0.0},
      {"07 arc-length-invariance", arc_length_invariance, 0.0},
      {"08 proposition-suite", proposition_suite, 0.0},
      {"09 finite-difference-engine", finite_difference_engine, 0.0},
      {"10 cli-end-to-end", cli_end_to_end, 2.0},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    std::string message;
    bool ok = true;
    try {
      c.run();
    } catch (const Failure& f) {
      ok = false;
      message = f.message;
    } catch (const std::exception& e) {
      ok = false;
      message = std::string("unexpected exception: ") + e.what();
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (ok && c.time_limit_s > 0.0 && elapsed > c.time_limit_s) {
      ok = false;
      message = "exceeded time limit of " + std::to_string(c.time_limit_s) + "s";
    }
    std::printf("[%s] %s (%.2fs)%s%s\n", ok ? "PASS" : "FAIL", c.id.c_str(),
                elapsed, message.empty() ? "" : ": ", message.c_str());
    if (!ok) ++failures;
  }

  if (failures > 0) {
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("all %zu criteria passed\n", criteria.size());
  return 0;
}
