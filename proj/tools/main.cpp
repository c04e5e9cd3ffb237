#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "raogeo/arcspec.hpp"
#include "raogeo/errors.hpp"
#include "raogeo/geodesic.hpp"
#include "raogeo/report.hpp"
#include "raogeo/scene_io.hpp"
#include "raogeo/statmanifold.hpp"
#include "raogeo/svg.hpp"

namespace {

using namespace raogeo;

// Exit codes: 0 success/pass, 1 numeric failure or failed check,
// 2 usage/parse/IO error, 3 critical point of the map.
constexpr int kOk = 0;
constexpr int kNumericFailure = 1;
constexpr int kInputError = 2;
constexpr int kCriticalPoint = 3;

// Tolerance precedence: flag > RAOGEO_TOL > built-in default.
double resolve_tol(const std::optional<double>& flag, double fallback) {
  if (flag) return *flag;
  if (const char* env = std::getenv("RAOGEO_TOL")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(v > 0.0))
      throw DomainError("RAOGEO_TOL must be a positive number");
    return v;
  }
  return fallback;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot open '" + path + "' for reading");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_output(const std::string& path, const std::string& content) {
  if (path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DomainError("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw DomainError("write to '" + path + "' failed");
}

std::vector<double> parse_reals_csv(const std::string& text) {
  std::string buf = text;
  std::replace(buf.begin(), buf.end(), ',', ' ');
  std::istringstream is(buf);
  std::vector<double> out;
  double x;
  while (is >> x) out.push_back(x);
  if (!is.eof()) throw DomainError("expected comma-separated reals, got '" + text + "'");
  return out;
}

struct FamilyArgs {
  std::string family;
  std::string theta;
  std::string spec;
};

void add_family_options(CLI::App* cmd, FamilyArgs& args) {
  auto* fam = cmd->add_option("--family", args.family, "bernoulli|poisson|normal|multinomial");
  auto* theta = cmd->add_option("--theta", args.theta, "comma-separated parameter vector");
  auto* spec = cmd->add_option("--spec", args.spec,
                               "one-string form: 'family=<name>; theta=<reals>'");
  fam->needs(theta);
  theta->needs(fam);
  spec->excludes(fam)->excludes(theta);
}

std::pair<ParametricFamily, ParamPoint> resolve_family(const FamilyArgs& args) {
  FamilySpec fs;
  if (!args.spec.empty()) {
    fs = parse_family_spec(args.spec);
  } else if (!args.family.empty()) {
    fs.family = args.family;
    fs.theta = parse_reals_csv(args.theta);
  } else {
    throw DomainError("give either --family/--theta or --spec");
  }
  if (fs.theta.empty()) throw DomainError("empty parameter vector");
  ParametricFamily fam = make_family(fs.family, fs.theta.size());
  ParamPoint p{fs.theta};
  require_interior(fam, p);
  return {std::move(fam), std::move(p)};
}

int emit_rows(const std::vector<ReportRow>& rows, const std::string& out_path) {
  write_output(out_path, to_csv(rows));
  for (const ReportRow& r : rows)
    if (!r.ok()) return kNumericFailure;
  return kOk;
}

std::vector<ReportRow> matrix_rows(const std::string& prefix,
                                   const Eigen::MatrixXd& m) {
  std::vector<ReportRow> rows;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      rows.push_back({prefix + "_" + std::to_string(i) + "_" + std::to_string(j),
                      m(i, j), "dimensionless", "ok"});
  return rows;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rao distances, conformal angle checks, and 3D scene reports"};
  app.require_subcommand(1);

  // scene report | scene render
  auto* scene_cmd = app.add_subcommand("scene", "Scene file operations");
  scene_cmd->require_subcommand(1);
  std::string scene_in, scene_out = "-";
  std::optional<double> scene_tol;
  auto* scene_report_cmd = scene_cmd->add_subcommand(
      "report", "Distances, view angles, plane feasibility, arc lengths");
  scene_report_cmd->add_option("--in", scene_in, "scene file")->required();
  scene_report_cmd->add_option("--out", scene_out, "CSV output path, '-' for stdout");
  scene_report_cmd->add_option("--tol", scene_tol, "single-plane height tolerance");

  std::string render_in, render_out, render_proj = "xy";
  auto* scene_render_cmd =
      scene_cmd->add_subcommand("render", "Deterministic SVG projection");
  scene_render_cmd->add_option("--in", render_in, "scene file")->required();
  scene_render_cmd->add_option("--out", render_out, "SVG output path")->required();
  scene_render_cmd->add_option("--projection", render_proj, "xy|xz|yz")
      ->check(CLI::IsMember({"xy", "xz", "yz"}));

  // rao
  auto* rao_cmd = app.add_subcommand("rao", "Rao distance between two parameter points");
  FamilyArgs rao_args;
  add_family_options(rao_cmd, rao_args);
  std::string rao_theta2, rao_out = "-";
  bool rao_verbose = false;
  rao_cmd->add_option("--theta2", rao_theta2, "second parameter vector")->required();
  rao_cmd->add_option("--out", rao_out, "CSV output path");
  rao_cmd->add_flag("--verbose", rao_verbose, "emit solver diagnostics rows");

  // fisher
  auto* fisher_cmd = app.add_subcommand("fisher", "Fisher information matrix");
  FamilyArgs fisher_args;
  add_family_options(fisher_cmd, fisher_args);
  std::string fisher_out = "-";
  fisher_cmd->add_option("--out", fisher_out, "CSV output path");

  // burbea-rao
  auto* br_cmd = app.add_subcommand("burbea-rao", "Entropy metric tensor of order alpha");
  FamilyArgs br_args;
  add_family_options(br_cmd, br_args);
  double br_alpha = 1.0;
  std::string br_out = "-";
  br_cmd->add_option("--alpha", br_alpha, "entropy order")->required();
  br_cmd->add_option("--out", br_out, "CSV output path");

  // arc length
  auto* arc_cmd = app.add_subcommand("arc", "Arc operations");
  arc_cmd->require_subcommand(1);
  std::string arc_spec, arc_out = "-";
  auto* arc_length_cmd = arc_cmd->add_subcommand("length", "Arc length by quadrature");
  arc_length_cmd->add_option("--arc", arc_spec, "'line x0 y0 x1 y1' | 'circle cx cy r t0 t1' | 'polyline ...'")
      ->required();
  arc_length_cmd->add_option("--out", arc_out, "CSV output path");

  // conformal check
  auto* conf_cmd = app.add_subcommand("conformal", "Conformality checks");
  conf_cmd->require_subcommand(1);
  std::string conf_map, conf_arc1, conf_arc2;
  double conf_at = 0.0;
  std::optional<double> conf_tol;
  auto* conf_check_cmd =
      conf_cmd->add_subcommand("check", "Angle preservation at an arc crossing");
  conf_check_cmd->add_option("--map", conf_map, "identity|square|exp|reciprocal|conjugate")
      ->required();
  conf_check_cmd->add_option("--arc1", conf_arc1, "first arc descriptor")->required();
  conf_check_cmd->add_option("--arc2", conf_arc2, "second arc descriptor")->required();
  conf_check_cmd->add_option("--at", conf_at, "common parameter of the crossing")
      ->required();
  conf_check_cmd->add_option("--tol", conf_tol, "angle tolerance in radians");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*scene_report_cmd) {
      Scene scene;
      try {
        scene = parse_scene(read_file(scene_in));
      } catch (const ParseError& e) {
        std::cerr << scene_in << ":" << e.line() << ":" << e.column() << ": "
                  << e.what() << "\n";
        return kInputError;
      }
      const double tol = resolve_tol(scene_tol, 1e-9);
      return emit_rows(scene_report(scene, tol), scene_out);
    }

    if (*scene_render_cmd) {
      Scene scene;
      try {
        scene = parse_scene(read_file(render_in));
      } catch (const ParseError& e) {
        std::cerr << render_in << ":" << e.line() << ":" << e.column() << ": "
                  << e.what() << "\n";
        return kInputError;
      }
      write_output(render_out, render_scene_svg(scene, *parse_projection(render_proj)));
      return kOk;
    }

    if (*rao_cmd) {
      auto [fam, a] = resolve_family(rao_args);
      ParamPoint b{parse_reals_csv(rao_theta2)};
      require_interior(fam, b);
      try {
        const RaoSolve solve = rao_geodesic(fam, a, b);
        std::vector<ReportRow> rows{
            {"rao_distance", solve.distance, "dimensionless", "ok"}};
        if (rao_verbose) {
          rows.push_back({"shoot_iterations", static_cast<double>(solve.iterations),
                          "dimensionless", "ok"});
          rows.push_back({"shoot_residual", solve.residual, "dimensionless", "ok"});
          rows.push_back({"path_points", static_cast<double>(solve.path.points.size()),
                          "dimensionless", "ok"});
        }
        return emit_rows(rows, rao_out);
      } catch (const ConvergenceError& e) {
        std::cerr << "rao solver failed: " << e.what() << "\n";
        return kNumericFailure;
      }
    }

    if (*fisher_cmd) {
      auto [fam, p] = resolve_family(fisher_args);
      return emit_rows(matrix_rows("fisher", fisher_information(fam, p).entries),
                       fisher_out);
    }

    if (*br_cmd) {
      auto [fam, p] = resolve_family(br_args);
      return emit_rows(
          matrix_rows("burbea_rao", burbea_rao_tensor(fam, p, br_alpha).entries),
          br_out);
    }

    if (*arc_length_cmd) {
      const Arc arc = parse_arc_spec(arc_spec);
      const double len = arc_length(arc, identity_parametrization(arc.a, arc.b));
      return emit_rows({{"arc_length", len, "length", "ok"}}, arc_out);
    }

    if (*conf_check_cmd) {
      const ComplexMap map = builtin_map(conf_map);
      const Arc arc1 = parse_arc_spec(conf_arc1);
      const Arc arc2 = parse_arc_spec(conf_arc2);
      const double tol = resolve_tol(conf_tol, 1e-6);
      const AngleReport2D report =
          angle_preservation_check(map, arc1, arc2, conf_at, tol);
      std::vector<ReportRow> rows{
          {"source_angle", report.source_angle, "radians", "ok"},
          {"image_angle", report.image_angle, "radians", "ok"},
          {"angle_defect", report.defect, "radians", report.pass ? "pass" : "fail"}};
      write_output("-", to_csv(rows));
      return report.pass ? kOk : kNumericFailure;
    }
  } catch (const CriticalPointError& e) {
    std::cerr << "critical point: " << e.what() << "\n";
    return kCriticalPoint;
  } catch (const ParseError& e) {
    std::cerr << "parse error at " << e.line() << ":" << e.column() << ": "
              << e.what() << "\n";
    return kInputError;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNumericFailure;
  }

  return kInputError;
}
