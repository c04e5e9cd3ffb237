#include "raogeo/conformal.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <sstream>

#include "raogeo/errors.hpp"

namespace raogeo {
namespace {

constexpr double kTangentFloor = 1e-12;

std::complex<double> eval_arc(const Arc& arc, double t) {
  if (!arc.eval) throw DomainError("arc has no evaluator");
  const std::complex<double> z = arc.eval(t);
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw EvaluationError("arc evaluator returned non-finite value", {t});
  return z;
}

void check_arc_domain(const Arc& arc) {
  if (!(arc.a < arc.b)) throw DomainError("arc needs a < b");
}

// Central difference of the arc inside [a,b]; the stencil shifts to a
// one-sided second-order form near the endpoints.
std::complex<double> fd_tangent(const Arc& arc, double t) {
  const double h = 1e-6 * (arc.b - arc.a);
  if (t - h >= arc.a && t + h <= arc.b)
    return (eval_arc(arc, t + h) - eval_arc(arc, t - h)) / (2.0 * h);
  if (t + 2 * h <= arc.b)
    return (-3.0 * eval_arc(arc, t) + 4.0 * eval_arc(arc, t + h) -
            eval_arc(arc, t + 2 * h)) /
           (2.0 * h);
  return (3.0 * eval_arc(arc, t) - 4.0 * eval_arc(arc, t - h) +
          eval_arc(arc, t - 2 * h)) /
         (2.0 * h);
}

void require_in_range(const Arc& arc, double t) {
  if (t < arc.a || t > arc.b) {
    std::ostringstream os;
    os << "parameter " << t << " outside arc range [" << arc.a << ", " << arc.b << "]";
    throw DomainError(os.str());
  }
}

}  // namespace

Arc make_line(std::complex<double> z0, std::complex<double> z1) {
  Arc arc;
  arc.a = 0.0;
  arc.b = 1.0;
  arc.eval = [z0, z1](double t) { return z0 + t * (z1 - z0); };
  arc.deriv = [z0, z1](double) { return z1 - z0; };
  return arc;
}

Arc make_circle(std::complex<double> center, double radius, double t0, double t1) {
  if (!(radius > 0.0)) throw DomainError("circle radius must be positive");
  if (!(t0 < t1)) throw DomainError("circle arc needs t0 < t1");
  Arc arc;
  arc.a = t0;
  arc.b = t1;
  arc.eval = [center, radius](double t) {
    return center + radius * std::complex<double>(std::cos(t), std::sin(t));
  };
  arc.deriv = [radius](double t) {
    return radius * std::complex<double>(-std::sin(t), std::cos(t));
  };
  return arc;
}

Arc make_polyline(std::vector<std::complex<double>> pts) {
  if (pts.size() < 2) throw DomainError("polyline needs at least two points");
  Arc arc;
  arc.a = 0.0;
  arc.b = static_cast<double>(pts.size() - 1);
  auto shared = std::make_shared<std::vector<std::complex<double>>>(std::move(pts));
  arc.eval = [shared](double t) {
    const auto last = static_cast<double>(shared->size() - 1);
    t = std::clamp(t, 0.0, last);
    const auto k = std::min(static_cast<std::size_t>(t), shared->size() - 2);
    const double frac = t - static_cast<double>(k);
    return (*shared)[k] + frac * ((*shared)[k + 1] - (*shared)[k]);
  };
  arc.deriv = [shared](double t) {
    const auto last = static_cast<double>(shared->size() - 1);
    t = std::clamp(t, 0.0, last);
    const auto k = std::min(static_cast<std::size_t>(t), shared->size() - 2);
    return (*shared)[k + 1] - (*shared)[k];
  };
  return arc;
}

void validate_arc(const Arc& arc) {
  check_arc_domain(arc);
  constexpr int kSamples = 64;
  const double h = 1e-6 * (arc.b - arc.a);
  for (int i = 0; i <= kSamples; ++i) {
    const double t = arc.a + (arc.b - arc.a) * (i + 0.5) / (kSamples + 1);
    eval_arc(arc, t);
    if (!arc.deriv) continue;
    const std::complex<double> d = arc.deriv(t);
    // One-sided differences disagreeing with each other mark a corner
    // (polyline joints); the declared tangent is unconstrained there.
    if (t - h >= arc.a && t + h <= arc.b) {
      const std::complex<double> fwd = (eval_arc(arc, t + h) - eval_arc(arc, t)) / h;
      const std::complex<double> bwd = (eval_arc(arc, t) - eval_arc(arc, t - h)) / h;
      if (std::abs(fwd - bwd) > 1e-5 * (1.0 + std::abs(d))) continue;
    }
    const std::complex<double> fd = fd_tangent(arc, t);
    if (std::abs(d - fd) > 1e-5 * (1.0 + std::abs(d))) {
      std::ostringstream os;
      os << "declared arc derivative disagrees with finite differences at t=" << t;
      throw DomainError(os.str());
    }
  }
}

Parametrization identity_parametrization(double a, double b) {
  Parametrization rep;
  rep.alpha = a;
  rep.beta = b;
  rep.psi = [](double tau) { return tau; };
  rep.dpsi = [](double) { return 1.0; };
  return rep;
}

void validate_parametrization(const Parametrization& rep, const Arc& arc) {
  check_arc_domain(arc);
  if (!rep.psi || !rep.dpsi) throw DomainError("parametrization needs psi and dpsi");
  if (!(rep.alpha < rep.beta)) throw DomainError("parametrization needs alpha < beta");
  if (std::abs(rep.psi(rep.alpha) - arc.a) > 1e-9 ||
      std::abs(rep.psi(rep.beta) - arc.b) > 1e-9)
    throw DomainError("parametrization endpoints do not map onto the arc range");
  constexpr int kSamples = 256;
  double prev = rep.psi(rep.alpha);
  for (int i = 1; i <= kSamples; ++i) {
    const double tau = rep.alpha + (rep.beta - rep.alpha) * i / kSamples;
    const double t = rep.psi(tau);
    if (!(t > prev))
      throw DomainError("parametrization must be strictly increasing");
    prev = t;
  }
}

double wrap_angle(double angle) {
  double w = std::remainder(angle, 2.0 * std::numbers::pi);
  if (w <= -std::numbers::pi) w += 2.0 * std::numbers::pi;
  return w;
}

std::complex<double> arc_tangent(const Arc& arc, double t) {
  check_arc_domain(arc);
  require_in_range(arc, t);
  return arc.deriv ? arc.deriv(t) : fd_tangent(arc, t);
}

double tangent_angle(const Arc& arc, double t) {
  const std::complex<double> d = arc_tangent(arc, t);
  if (std::abs(d) <= kTangentFloor) {
    std::ostringstream os;
    os << "arc tangent vanishes at t=" << t;
    throw SingularTangentError(os.str());
  }
  return wrap_angle(std::arg(d));
}

Arc image_arc(const ComplexMap& f, const Arc& arc) {
  check_arc_domain(arc);
  if (!f.eval) throw DomainError("complex map has no evaluator");

  // The arc must stay inside the map's domain disc.
  constexpr int kSamples = 128;
  for (int i = 0; i <= kSamples; ++i) {
    const double t = arc.a + (arc.b - arc.a) * i / kSamples;
    if (!f.domain.contains(eval_arc(arc, t))) {
      std::ostringstream os;
      os << "arc leaves the map's domain disc at t=" << t;
      throw DomainError(os.str());
    }
  }

  Arc out;
  out.a = arc.a;
  out.b = arc.b;
  out.eval = [f, arc](double t) { return f.eval(arc.eval(t)); };
  Arc composed_only{out.eval, {}, arc.a, arc.b};
  out.deriv = [f, arc, composed_only](double t) -> std::complex<double> {
    const std::complex<double> z = arc.eval(t);
    const std::complex<double> zp = arc_tangent(arc, t);
    if (f.deriv) return f.deriv(z) * zp;
    const ComplexDerivative d = complex_derivative(f, z);
    if (d.holomorphic) return d.value * zp;
    return fd_tangent(composed_only, t);
  };
  return out;
}

ImageAngleReport image_tangent_angle(const ComplexMap& f, const Arc& arc,
                                     double c) {
  check_arc_domain(arc);
  require_in_range(arc, c);
  const std::complex<double> z = eval_arc(arc, c);
  if (!f.domain.contains(z))
    throw DomainError("arc point lies outside the map's domain disc");

  std::complex<double> fprime;
  if (f.deriv) {
    fprime = f.deriv(z);
  } else {
    const ComplexDerivative d = complex_derivative(f, z);
    if (!d.holomorphic) {
      std::ostringstream os;
      os << "map fails the Cauchy-Riemann check at the arc point (residual "
         << d.cr_residual << ")";
      throw DomainError(os.str());
    }
    fprime = d.value;
  }
  if (std::abs(fprime) < 1e-10) {
    std::ostringstream os;
    os << "map derivative vanishes at z=(" << z.real() << ", " << z.imag()
       << "); conformality fails there";
    throw CriticalPointError(os.str(), z);
  }

  ImageAngleReport report;
  report.source_angle = tangent_angle(arc, c);
  report.map_rotation = wrap_angle(std::arg(fprime));
  // Measured on the composed curve itself, so the chain-rule comparison
  // below is not circular.
  Arc composed{[&f, &arc](double t) { return f.eval(arc.eval(t)); }, {}, arc.a, arc.b};
  report.image_angle = tangent_angle(composed, c);
  report.chain_residual = std::abs(
      wrap_angle(report.image_angle - report.map_rotation - report.source_angle));
  return report;
}

AngleReport2D angle_preservation_check(const ComplexMap& f, const Arc& arc1,
                                       const Arc& arc2, double c, double tol) {
  validate_arc(arc1);
  validate_arc(arc2);
  require_in_range(arc1, c);
  require_in_range(arc2, c);
  const std::complex<double> z1 = eval_arc(arc1, c);
  const std::complex<double> z2 = eval_arc(arc2, c);
  if (std::abs(z1 - z2) > 1e-9)
    throw DomainError("arcs do not intersect at the given parameter");

  // A vanishing derivative of a holomorphic map breaks conformality; for
  // maps failing the CR check the flipped angle is part of the report.
  ComplexDerivative d;
  if (f.deriv) {
    d = {f.deriv(z1), true, 0.0};
  } else {
    d = complex_derivative(f, z1);
  }
  if (d.holomorphic && std::abs(d.value) < 1e-10) {
    std::ostringstream os;
    os << "map derivative vanishes at the intersection point";
    throw CriticalPointError(os.str(), z1);
  }

  AngleReport2D report;
  report.tolerance = tol;
  report.theta1 = tangent_angle(arc1, c);
  report.theta2 = tangent_angle(arc2, c);

  // Image tangents measured directly on the composed curves.
  Arc img1{[&f, &arc1](double t) { return f.eval(arc1.eval(t)); }, {}, arc1.a, arc1.b};
  Arc img2{[&f, &arc2](double t) { return f.eval(arc2.eval(t)); }, {}, arc2.a, arc2.b};
  report.image_theta1 = tangent_angle(img1, c);
  report.image_theta2 = tangent_angle(img2, c);

  report.source_angle = wrap_angle(report.theta2 - report.theta1);
  report.image_angle = wrap_angle(report.image_theta2 - report.image_theta1);
  report.defect = std::abs(wrap_angle(report.image_angle - report.source_angle));
  report.pass = report.defect <= tol;
  return report;
}

double arc_length(const Arc& arc, const Parametrization& rep,
                  const QuadratureConfig& q) {
  validate_arc(arc);
  validate_parametrization(rep, arc);
  auto integrand = [&](double tau) {
    const double t = std::clamp(rep.psi(tau), arc.a, arc.b);
    return std::abs(arc_tangent(arc, t)) * rep.dpsi(tau);
  };
  return integrate(integrand, rep.alpha, rep.beta, q).value;
}

Parametrization common_parametrization(std::span<const Parametrization> reps) {
  if (reps.empty()) throw DomainError("no parametrizations given");
  const Parametrization& first = reps[0];
  constexpr int kSamples = 64;
  for (std::size_t k = 1; k < reps.size(); ++k) {
    const Parametrization& other = reps[k];
    if (std::abs(other.alpha - first.alpha) > 1e-9 ||
        std::abs(other.beta - first.beta) > 1e-9) {
      std::ostringstream os;
      os << "parametrizations 0 and " << k << " have different domains";
      throw DomainError(os.str());
    }
    for (int i = 0; i <= kSamples; ++i) {
      const double tau = first.alpha + (first.beta - first.alpha) * i / kSamples;
      if (std::abs(first.psi(tau) - other.psi(tau)) > 1e-9) {
        std::ostringstream os;
        os << "parametrizations 0 and " << k << " diverge at tau=" << tau;
        throw DomainError(os.str());
      }
    }
  }
  return first;
}

}  // namespace raogeo
