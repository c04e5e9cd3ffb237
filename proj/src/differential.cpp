#include "raogeo/differential.hpp"

#include <cmath>
#include <sstream>

#include "raogeo/errors.hpp"

namespace raogeo {
namespace {

double norm2(const std::vector<double>& x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

double auto_step(const FiniteDiffConfig& cfg, const std::vector<double>& a) {
  if (cfg.step > 0.0) return cfg.step;
  if (cfg.step < 0.0) throw DomainError("finite-difference step must be positive");
  const double eps = std::numeric_limits<double>::epsilon();
  const double base =
      cfg.scheme == FdScheme::central ? std::cbrt(eps) : std::sqrt(eps);
  return base * std::max(1.0, norm2(a));
}

void check_levels(const FiniteDiffConfig& cfg) {
  if (cfg.richardson_levels < 0 || cfg.richardson_levels > 4)
    throw DomainError("richardson_levels must lie in [0, 4]");
}

Eigen::VectorXd eval_checked(const RealMap& f, const std::vector<double>& x) {
  if (!f.eval) throw DomainError("RealMap has no evaluator");
  if (x.size() != f.arity_in) {
    std::ostringstream os;
    os << "RealMap expects " << f.arity_in << " inputs, got " << x.size();
    throw DomainError(os.str());
  }
  const std::vector<double> out = f.eval(x);
  if (out.size() != f.arity_out) {
    std::ostringstream os;
    os << "RealMap declared " << f.arity_out << " outputs, produced "
       << out.size();
    throw DomainError(os.str());
  }
  Eigen::VectorXd v(static_cast<Eigen::Index>(out.size()));
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (!std::isfinite(out[i]))
      throw EvaluationError("map returned non-finite value", x);
    v[static_cast<Eigen::Index>(i)] = out[i];
  }
  return v;
}

// Richardson tableau for a difference quotient whose error expands in
// powers of h^order_step, evaluated at h, h/2, ..., h/2^levels.
Eigen::VectorXd richardson(const std::function<Eigen::VectorXd(double)>& d,
                           double h, int levels, int order_step) {
  std::vector<Eigen::VectorXd> row(static_cast<std::size_t>(levels) + 1);
  for (int i = 0; i <= levels; ++i) {
    Eigen::VectorXd t = d(h / std::pow(2.0, i));
    for (int j = 1; j <= i; ++j) {
      const double factor = std::pow(2.0, order_step * j);
      Eigen::VectorXd next = (factor * t - row[j - 1]) / (factor - 1.0);
      row[j - 1] = std::move(t);
      t = std::move(next);
    }
    row[static_cast<std::size_t>(i)] = std::move(t);
  }
  return row[static_cast<std::size_t>(levels)];
}

std::vector<double> axpy(const std::vector<double>& a, double h,
                         const std::vector<double>& v) {
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + h * v[i];
  return out;
}

std::complex<double> eval_complex(const ComplexMap& f, std::complex<double> z) {
  if (!f.eval) throw DomainError("ComplexMap has no evaluator");
  const std::complex<double> w = f.eval(z);
  if (!std::isfinite(w.real()) || !std::isfinite(w.imag()))
    throw EvaluationError("complex map returned non-finite value",
                          {z.real(), z.imag()});
  return w;
}

// The four partials u_x, v_x, u_y, v_y packed as a 4-vector; shares the
// two-probe stencil between the u and v components.
Eigen::VectorXd complex_partials(const ComplexMap& f, std::complex<double> z,
                                 const FiniteDiffConfig& cfg) {
  auto probe = [&](double h) {
    Eigen::VectorXd p(4);
    const std::complex<double> dx{h, 0.0};
    const std::complex<double> dy{0.0, h};
    if (cfg.scheme == FdScheme::central) {
      const std::complex<double> fx = eval_complex(f, z + dx) - eval_complex(f, z - dx);
      const std::complex<double> fy = eval_complex(f, z + dy) - eval_complex(f, z - dy);
      p << fx.real() / (2 * h), fx.imag() / (2 * h), fy.real() / (2 * h),
          fy.imag() / (2 * h);
    } else {
      const std::complex<double> f0 = eval_complex(f, z);
      const std::complex<double> fx = eval_complex(f, z + dx) - f0;
      const std::complex<double> fy = eval_complex(f, z + dy) - f0;
      p << fx.real() / h, fx.imag() / h, fy.real() / h, fy.imag() / h;
    }
    return p;
  };
  check_levels(cfg);
  const double h = auto_step(cfg, {z.real(), z.imag()});
  const int order = cfg.scheme == FdScheme::central ? 2 : 1;
  return richardson(probe, h, cfg.richardson_levels, order);
}

}  // namespace

JacobianMatrix jacobian(const RealMap& f, const std::vector<double>& a,
                        const FiniteDiffConfig& cfg) {
  check_levels(cfg);
  const double h0 = auto_step(cfg, a);
  const int order = cfg.scheme == FdScheme::central ? 2 : 1;

  JacobianMatrix J(static_cast<Eigen::Index>(f.arity_out),
                   static_cast<Eigen::Index>(f.arity_in));
  Eigen::VectorXd f0;
  if (cfg.scheme == FdScheme::forward) f0 = eval_checked(f, a);

  for (std::size_t j = 0; j < f.arity_in; ++j) {
    std::vector<double> e(f.arity_in, 0.0);
    e[j] = 1.0;
    auto column = [&](double h) -> Eigen::VectorXd {
      if (cfg.scheme == FdScheme::central)
        return (eval_checked(f, axpy(a, h, e)) - eval_checked(f, axpy(a, -h, e))) /
               (2 * h);
      return (eval_checked(f, axpy(a, h, e)) - f0) / h;
    };
    J.col(static_cast<Eigen::Index>(j)) =
        richardson(column, h0, cfg.richardson_levels, order);
  }
  return J;
}

std::vector<double> directional_derivative(const RealMap& f,
                                           const std::vector<double>& a,
                                           const std::vector<double>& v,
                                           const FiniteDiffConfig& cfg) {
  check_levels(cfg);
  if (v.size() != f.arity_in)
    throw DomainError("direction vector length does not match map arity");
  const double vnorm = norm2(v);
  if (vnorm == 0.0) throw DomainError("direction vector must be non-zero");

  // Keep the spatial probe size comparable to the plain-jacobian stencil.
  const double h0 = auto_step(cfg, a) / std::max(1.0, vnorm);
  const int order = cfg.scheme == FdScheme::central ? 2 : 1;
  Eigen::VectorXd f0;
  if (cfg.scheme == FdScheme::forward) f0 = eval_checked(f, a);
  auto quotient = [&](double h) -> Eigen::VectorXd {
    if (cfg.scheme == FdScheme::central)
      return (eval_checked(f, axpy(a, h, v)) - eval_checked(f, axpy(a, -h, v))) /
             (2 * h);
    return (eval_checked(f, axpy(a, h, v)) - f0) / h;
  };
  const Eigen::VectorXd d = richardson(quotient, h0, cfg.richardson_levels, order);
  return {d.data(), d.data() + d.size()};
}

CrResidual cauchy_riemann_residual(const ComplexMap& f, std::complex<double> z,
                                   const FiniteDiffConfig& cfg) {
  if (!f.domain.contains(z))
    throw DomainError("point lies outside the map's domain disc");
  const Eigen::VectorXd p = complex_partials(f, z, cfg);
  // p = (u_x, v_x, u_y, v_y)
  return {p[0] - p[3], p[1] + p[2]};
}

ComplexDerivative complex_derivative(const ComplexMap& f,
                                     std::complex<double> z,
                                     const FiniteDiffConfig& cfg,
                                     double cr_tol) {
  if (!f.domain.contains(z))
    throw DomainError("point lies outside the map's domain disc");
  const Eigen::VectorXd p = complex_partials(f, z, cfg);
  const CrResidual r{p[0] - p[3], p[1] + p[2]};
  ComplexDerivative out;
  out.value = {p[0], p[1]};
  out.cr_residual = r.max_abs();
  out.holomorphic = out.cr_residual <= cr_tol;
  return out;
}

HolomorphyReport is_holomorphic_on(const ComplexMap& f,
                                   std::span<const std::complex<double>> samples,
                                   double tol) {
  if (samples.empty()) throw DomainError("holomorphy check needs at least one sample");
  HolomorphyReport report;
  report.tolerance = tol;
  report.worst_residual = -1.0;
  for (const std::complex<double> z : samples) {
    if (!f.domain.contains(z))
      throw DomainError("holomorphy sample lies outside the map's domain disc");
    const double r = cauchy_riemann_residual(f, z).max_abs();
    if (r > report.worst_residual) {
      report.worst_residual = r;
      report.worst_point = z;
    }
  }
  report.holomorphic = report.worst_residual <= tol;
  return report;
}

}  // namespace raogeo
