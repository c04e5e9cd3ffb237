#include "raogeo/geodesic.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <optional>
#include <sstream>

#include "raogeo/errors.hpp"

namespace raogeo {
namespace {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

std::vector<double> to_std(const Vec& v) {
  return {v.data(), v.data() + v.size()};
}

Vec to_eigen(const std::vector<double>& v) {
  return Eigen::Map<const Vec>(v.data(), static_cast<Eigen::Index>(v.size()));
}

// Geodesic problem in one chart: metric field plus the valid region.
struct MetricProblem {
  std::size_t dim = 0;
  MetricField metric;
  std::function<bool(const std::vector<double>&)> in_domain;
};

MetricProblem problem_for(const ParametricFamily& fam,
                          const QuadratureConfig& q) {
  MetricProblem prob;
  prob.dim = fam.dim;
  prob.in_domain = [&fam](const std::vector<double>& th) {
    return fam.in_domain(th, nullptr);
  };
  if (fam.analytic_fisher) {
    prob.metric = fam.analytic_fisher;
  } else {
    prob.metric = [&fam, q](const std::vector<double>& th) {
      return fisher_information(fam, {th}, q).entries;
    };
  }
  return prob;
}

void check_solver_config(const SolverConfig& cfg) {
  if (cfg.ode_steps < 16) throw DomainError("ode_steps must be at least 16");
  if (!(cfg.shoot_tol > 0.0)) throw DomainError("shoot_tol must be positive");
  if (!(cfg.fd_step_metric > 0.0))
    throw DomainError("fd_step_metric must be positive");
}

struct MetricEig {
  Mat inverse;
  double condition;
};

MetricEig invert_metric(const Mat& g) {
  Eigen::SelfAdjointEigenSolver<Mat> eig(g);
  const Vec& ev = eig.eigenvalues();
  const double lo = ev.minCoeff();
  const double hi = ev.maxCoeff();
  if (!(lo > 1e-13 * std::max(hi, 1e-300))) {
    const double cond = lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
    std::ostringstream os;
    os << "metric is numerically singular (condition estimate " << cond << ")";
    throw SingularMetricError(os.str(), cond);
  }
  MetricEig out;
  out.condition = hi / lo;
  out.inverse = eig.eigenvectors() *
                ev.cwiseInverse().asDiagonal() *
                eig.eigenvectors().transpose();
  return out;
}

ChristoffelTensor christoffel_impl(
    const MetricField& g, std::size_t dim, const std::vector<double>& theta,
    const SolverConfig& cfg,
    const std::function<bool(const std::vector<double>&)>& in_domain) {
  const auto n = static_cast<Eigen::Index>(dim);
  const Mat g0 = g(theta);
  if (g0.rows() != n || g0.cols() != n)
    throw DomainError("metric field dimension mismatch");
  const MetricEig inv = invert_metric(g0);

  double scale = 0.0;
  for (double t : theta) scale += t * t;
  double h = cfg.fd_step_metric * (1.0 + std::sqrt(scale));

  std::vector<Mat> dg(dim);
  for (std::size_t l = 0; l < dim; ++l) {
    std::vector<double> lo = theta, hi = theta;
    double hl = h;
    if (in_domain) {
      // Shrink the stencil instead of probing outside the valid region.
      for (int tries = 0; tries < 24; ++tries) {
        lo[l] = theta[l] - hl;
        hi[l] = theta[l] + hl;
        if (in_domain(lo) && in_domain(hi)) break;
        hl *= 0.5;
      }
      if (!(in_domain(lo) && in_domain(hi)))
        throw DomainError("metric derivative stencil cannot stay inside the valid region");
    } else {
      lo[l] = theta[l] - hl;
      hi[l] = theta[l] + hl;
    }
    dg[l] = (g(hi) - g(lo)) / (hi[l] - lo[l]);
  }

  ChristoffelTensor out;
  out.metric_condition = inv.condition;
  out.gamma.assign(dim, Mat::Zero(n, n));
  for (Eigen::Index k = 0; k < n; ++k) {
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = i; j < n; ++j) {
        double s = 0.0;
        for (Eigen::Index l = 0; l < n; ++l) {
          s += inv.inverse(k, l) *
               (dg[static_cast<std::size_t>(i)](j, l) +
                dg[static_cast<std::size_t>(j)](i, l) -
                dg[static_cast<std::size_t>(l)](i, j));
        }
        out.gamma[static_cast<std::size_t>(k)](i, j) = 0.5 * s;
        out.gamma[static_cast<std::size_t>(k)](j, i) = 0.5 * s;
      }
    }
  }
  return out;
}

Vec acceleration(const ChristoffelTensor& gamma, const Vec& v) {
  const auto n = v.size();
  Vec acc(n);
  for (Eigen::Index k = 0; k < n; ++k)
    acc[k] = -v.dot(gamma.gamma[static_cast<std::size_t>(k)] * v);
  return acc;
}

GeodesicPath integrate_geodesic(const MetricProblem& prob, const Vec& p0,
                                const Vec& v0, double arc_time,
                                const SolverConfig& cfg) {
  const int n_steps = cfg.ode_steps;
  const double dt = arc_time / n_steps;

  auto require_inside = [&](const Vec& th, double t) {
    if (!prob.in_domain(to_std(th))) {
      std::ostringstream os;
      os << "geodesic left the valid parameter region at fraction "
         << (arc_time > 0.0 ? t / arc_time : 0.0) << " of arc time";
      throw BoundaryExitError(os.str(), to_std(th),
                              arc_time > 0.0 ? t / arc_time : 0.0);
    }
  };

  auto rhs = [&](const Vec& th, const Vec& v, double t) {
    require_inside(th, t);
    const ChristoffelTensor gamma =
        christoffel_impl(prob.metric, prob.dim, to_std(th), cfg, prob.in_domain);
    return acceleration(gamma, v);
  };

  GeodesicPath path;
  path.points.reserve(static_cast<std::size_t>(n_steps) + 1);
  path.velocities.reserve(static_cast<std::size_t>(n_steps) + 1);

  Vec th = p0, v = v0;
  require_inside(th, 0.0);
  double speed_prev = std::sqrt(std::max(0.0, v.dot(prob.metric(to_std(th)) * v)));
  double speed_lo = speed_prev, speed_hi = speed_prev;
  path.points.push_back({to_std(th)});
  path.velocities.push_back({to_std(v)});

  for (int s = 0; s < n_steps; ++s) {
    const double t = s * dt;
    const Vec k1p = v;
    const Vec k1v = rhs(th, v, t);
    const Vec k2p = v + 0.5 * dt * k1v;
    const Vec k2v = rhs(th + 0.5 * dt * k1p, k2p, t + 0.5 * dt);
    const Vec k3p = v + 0.5 * dt * k2v;
    const Vec k3v = rhs(th + 0.5 * dt * k2p, k3p, t + 0.5 * dt);
    const Vec k4p = v + dt * k3v;
    const Vec k4v = rhs(th + dt * k3p, k4p, t + dt);

    th += dt / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
    v += dt / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
    require_inside(th, t + dt);

    const double speed = std::sqrt(std::max(0.0, v.dot(prob.metric(to_std(th)) * v)));
    path.length += 0.5 * (speed_prev + speed) * dt;
    speed_prev = speed;
    speed_lo = std::min(speed_lo, speed);
    speed_hi = std::max(speed_hi, speed);
    path.points.push_back({to_std(th)});
    path.velocities.push_back({to_std(v)});
  }
  path.speed_drift = speed_hi > 0.0 ? (speed_hi - speed_lo) / speed_hi : 0.0;
  return path;
}

// A path that fails speed conservation by this much passed too close to
// a metric singularity for its length to be trusted.
constexpr double kMaxSpeedDrift = 1e-4;

// Shooting state: the Newton iteration works on the initial velocity and
// measures the endpoint residual in the metric norm at the target.
// Shots that exit the valid region or lose speed conservation are
// rejected alike, which steers the multi-start away from trajectories
// that thread a boundary singularity between grid points.
struct Shooter {
  const MetricProblem& prob;
  const SolverConfig& cfg;
  Vec target;
  Mat target_metric;

  double residual(const Vec& endpoint) const {
    const Vec r = endpoint - target;
    return std::sqrt(std::max(0.0, r.dot(target_metric * r)));
  }

  std::optional<GeodesicPath> try_shot(const Vec& p0, const Vec& v0) const {
    try {
      GeodesicPath path = integrate_geodesic(prob, p0, v0, 1.0, cfg);
      if (path.speed_drift > kMaxSpeedDrift) return std::nullopt;
      return path;
    } catch (const BoundaryExitError&) {
      return std::nullopt;
    }
  }
};

RaoSolve shoot_between(const MetricProblem& prob, const Vec& a, const Vec& b,
                       const SolverConfig& cfg) {
  Shooter shooter{prob, cfg, b, prob.metric(to_std(b))};

  // Chord start, rescaled until the first shot stays interior.
  Vec v = b - a;
  std::optional<GeodesicPath> path;
  for (int k = 0; k < 8 && !path; ++k) {
    path = shooter.try_shot(a, v);
    if (!path) v *= 0.5;
  }
  if (!path)
    throw ConvergenceError(
        "shooting failed: every rescaled chord start exits the valid region",
        std::numeric_limits<double>::infinity());

  RaoSolve best;
  best.residual = std::numeric_limits<double>::infinity();

  const auto n = a.size();
  int iter = 0;
  for (; iter < cfg.max_shoot_iters; ++iter) {
    const Vec endpoint = to_eigen(path->points.back().theta);
    const double res = shooter.residual(endpoint);
    if (res < best.residual) {
      best.residual = res;
      best.path = *path;
      best.distance = path->length;
      best.initial_velocity = to_std(v);
    }
    if (res <= cfg.shoot_tol) {
      best.iterations = iter;
      return best;
    }

    // Endpoint Jacobian by forward differences in the initial velocity.
    Mat J(n, n);
    bool jacobian_ok = true;
    for (Eigen::Index j = 0; j < n && jacobian_ok; ++j) {
      double dv = 1e-6 * (1.0 + std::abs(v[j]));
      std::optional<GeodesicPath> probe;
      for (int tries = 0; tries < 6 && !probe; ++tries) {
        Vec vj = v;
        vj[j] += dv;
        probe = shooter.try_shot(a, vj);
        if (!probe) dv *= 0.25;
      }
      if (!probe) {
        jacobian_ok = false;
        break;
      }
      J.col(j) = (to_eigen(probe->points.back().theta) - endpoint) / dv;
    }
    if (!jacobian_ok) break;

    const Vec delta = J.colPivHouseholderQr().solve(b - endpoint);
    if (!delta.allFinite()) break;

    // Backtrack on the Newton step until the residual actually drops.
    bool accepted = false;
    double step = 1.0;
    for (int k = 0; k < 10; ++k, step *= 0.5) {
      const Vec v_try = v + step * delta;
      std::optional<GeodesicPath> trial = shooter.try_shot(a, v_try);
      if (!trial) continue;
      if (shooter.residual(to_eigen(trial->points.back().theta)) < res) {
        v = v_try;
        path = std::move(trial);
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
  }

  std::ostringstream os;
  os << "shooting did not converge after " << iter
     << " iterations; best endpoint residual " << best.residual;
  throw ConvergenceError(os.str(), best.residual);
}

}  // namespace

ChristoffelTensor christoffel(const MetricField& g, std::size_t dim,
                              const std::vector<double>& theta,
                              const SolverConfig& cfg) {
  check_solver_config(cfg);
  return christoffel_impl(g, dim, theta, cfg, nullptr);
}

ChristoffelTensor christoffel(const ParametricFamily& fam, const ParamPoint& p,
                              const SolverConfig& cfg,
                              const QuadratureConfig& q) {
  check_solver_config(cfg);
  require_interior(fam, p);
  MetricField g = [&fam, q](const std::vector<double>& th) {
    return fisher_information(fam, {th}, q).entries;
  };
  auto inside = [&fam](const std::vector<double>& th) {
    return fam.in_domain(th, nullptr);
  };
  return christoffel_impl(g, fam.dim, p.theta, cfg, inside);
}

GeodesicPath geodesic_shoot(const ParametricFamily& fam, const ParamPoint& p0,
                            const TangentVector& v0, double arc_time,
                            const SolverConfig& cfg, const QuadratureConfig& q) {
  check_solver_config(cfg);
  if (!(arc_time >= 0.0) || !std::isfinite(arc_time))
    throw DomainError("arc_time must be finite and non-negative");
  require_interior(fam, p0);
  if (v0.dtheta.size() != fam.dim)
    throw DomainError("initial velocity length does not match family dimension");

  if (fam.chart) {
    const auto& chart = *fam.chart;
    GeodesicPath reduced = geodesic_shoot(
        *chart.family, {chart.to_chart(p0.theta)},
        {chart.push_tangent(v0.dtheta)}, arc_time, cfg, q);
    GeodesicPath out;
    out.length = reduced.length;
    out.points.reserve(reduced.points.size());
    out.velocities.reserve(reduced.velocities.size());
    for (const auto& p : reduced.points) out.points.push_back({chart.from_chart(p.theta)});
    for (const auto& v : reduced.velocities)
      out.velocities.push_back({chart.pull_tangent(v.dtheta)});
    return out;
  }

  const MetricProblem prob = problem_for(fam, q);
  return integrate_geodesic(prob, to_eigen(p0.theta), to_eigen(v0.dtheta),
                            arc_time, cfg);
}

RaoSolve rao_geodesic(const ParametricFamily& fam, const ParamPoint& a,
                      const ParamPoint& b, const SolverConfig& cfg,
                      const QuadratureConfig& q) {
  check_solver_config(cfg);
  require_interior(fam, a);
  require_interior(fam, b);

  if (a.theta == b.theta) {
    RaoSolve out;
    out.path.points = {a};
    out.path.velocities = {{std::vector<double>(fam.dim, 0.0)}};
    out.initial_velocity.assign(fam.dim, 0.0);
    return out;
  }

  if (fam.chart) {
    const auto& chart = *fam.chart;
    RaoSolve reduced = rao_geodesic(*chart.family, {chart.to_chart(a.theta)},
                                    {chart.to_chart(b.theta)}, cfg, q);
    RaoSolve out;
    out.distance = reduced.distance;
    out.iterations = reduced.iterations;
    out.residual = reduced.residual;
    out.initial_velocity = chart.pull_tangent(reduced.initial_velocity);
    out.path.length = reduced.path.length;
    for (const auto& p : reduced.path.points)
      out.path.points.push_back({chart.from_chart(p.theta)});
    for (const auto& v : reduced.path.velocities)
      out.path.velocities.push_back({chart.pull_tangent(v.dtheta)});
    return out;
  }

  const MetricProblem prob = problem_for(fam, q);
  return shoot_between(prob, to_eigen(a.theta), to_eigen(b.theta), cfg);
}

double rao_distance(const ParametricFamily& fam, const ParamPoint& a,
                    const ParamPoint& b, const SolverConfig& cfg,
                    const QuadratureConfig& q) {
  return rao_geodesic(fam, a, b, cfg, q).distance;
}

double rao_distance_1d(const ParametricFamily& fam, const ParamPoint& a,
                       const ParamPoint& b, const QuadratureConfig& q) {
  require_interior(fam, a);
  require_interior(fam, b);

  if (fam.chart && fam.chart->dim == 1) {
    const auto& chart = *fam.chart;
    return rao_distance_1d(*chart.family, {chart.to_chart(a.theta)},
                           {chart.to_chart(b.theta)}, q);
  }
  if (fam.dim != 1)
    throw DomainError("rao_distance_1d needs a one-parameter family");

  const double lo = std::min(a.theta[0], b.theta[0]);
  const double hi = std::max(a.theta[0], b.theta[0]);
  if (lo == hi) return 0.0;
  auto integrand = [&fam, &q](double t) {
    const double f = fisher_information(fam, {{t}}, q).entries(0, 0);
    if (!(f > 0.0))
      throw EvaluationError("line element requires positive Fisher information", {t});
    return std::sqrt(f);
  };
  return integrate(integrand, lo, hi, q).value;
}

}  // namespace raogeo
