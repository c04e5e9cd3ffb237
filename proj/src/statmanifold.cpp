#include "raogeo/statmanifold.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <sstream>

#include "raogeo/differential.hpp"
#include "raogeo/errors.hpp"

namespace raogeo {
namespace {

void check_point_shape(const ParametricFamily& fam, const ParamPoint& p) {
  if (p.theta.size() != fam.dim) {
    std::ostringstream os;
    os << "family '" << fam.name << "' expects " << fam.dim
       << " parameters, got " << p.theta.size();
    throw DomainError(os.str());
  }
  for (double t : p.theta)
    if (!std::isfinite(t)) throw DomainError("parameter vector has non-finite entry");
}

double density_checked(const ParametricFamily& fam, double x,
                       const std::vector<double>& theta) {
  const double rho = fam.density(x, theta);
  if (!std::isfinite(rho))
    throw EvaluationError("density returned non-finite value", {x});
  if (rho < 0.0) {
    std::ostringstream os;
    os << "density of '" << fam.name << "' is negative at x=" << x;
    throw EvaluationError(os.str(), {x});
  }
  return rho;
}

// Score vector d(log density)/d(theta) at a fixed outcome; analytic when
// the family provides it, otherwise central differences of log density
// (step shrunk until both probes stay in the valid region).
Eigen::VectorXd score_vector(const ParametricFamily& fam, double x,
                             const std::vector<double>& theta) {
  const auto n = static_cast<Eigen::Index>(fam.dim);
  Eigen::VectorXd s(n);
  if (fam.score) {
    for (Eigen::Index i = 0; i < n; ++i) {
      s[i] = fam.score(x, theta, static_cast<std::size_t>(i));
      if (!std::isfinite(s[i]))
        throw EvaluationError("score returned non-finite value", {x});
    }
    return s;
  }
  RealMap log_density{fam.dim, 1,
                      [&fam, x](const std::vector<double>& th) {
                        return std::vector<double>{
                            std::log(density_checked(fam, x, th))};
                      }};
  const double eps = std::numeric_limits<double>::epsilon();
  double h = std::cbrt(eps);
  for (double t : theta) h = std::max(h, std::cbrt(eps) * std::abs(t));
  for (int tries = 0; tries < 60; ++tries) {
    bool ok = true;
    for (std::size_t i = 0; i < fam.dim && ok; ++i) {
      std::vector<double> lo = theta, hi = theta;
      lo[i] -= h;
      hi[i] += h;
      ok = fam.in_domain(lo, nullptr) && fam.in_domain(hi, nullptr);
    }
    if (ok) {
      FiniteDiffConfig cfg;
      cfg.step = h;
      return jacobian(log_density, theta, cfg).row(0).transpose();
    }
    h *= 0.5;
  }
  throw DomainError("could not fit a finite-difference score stencil inside the valid region");
}

// E[density^(weight_exponent - 1) * s_i * s_j] with respect to the base
// measure: exponent 1 gives Fisher, exponent alpha the entropy tensor.
Eigen::MatrixXd weighted_score_outer(const ParametricFamily& fam,
                                     const ParamPoint& p, double exponent,
                                     const QuadratureConfig& q) {
  require_interior(fam, p);
  const auto n = static_cast<Eigen::Index>(fam.dim);
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n, n);

  if (fam.discrete()) {
    for (double x : fam.outcomes(p.theta)) {
      const double rho = density_checked(fam, x, p.theta);
      if (rho == 0.0) continue;
      const Eigen::VectorXd s = score_vector(fam, x, p.theta);
      M.selfadjointView<Eigen::Upper>().rankUpdate(s, std::pow(rho, exponent));
    }
    const Eigen::MatrixXd sym = M.selfadjointView<Eigen::Upper>();
    return sym;
  }

  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      auto integrand = [&](double x) {
        const double rho = fam.density(x, p.theta);
        if (!std::isfinite(rho) || rho < 0.0)
          throw EvaluationError("density returned invalid value", {x});
        if (rho == 0.0) return 0.0;
        const Eigen::VectorXd s = score_vector(fam, x, p.theta);
        return std::pow(rho, exponent) * s[i] * s[j];
      };
      const double value = integrate(integrand, fam.support_lo, fam.support_hi, q).value;
      M(i, j) = value;
      M(j, i) = value;
    }
  }
  return M;
}

bool in_open_simplex(const std::vector<double>& theta, double margin,
                     std::string* why) {
  double sum = 0.0;
  for (double t : theta) {
    if (!(t > margin)) {
      if (why) *why = "probability at or below the boundary margin";
      return false;
    }
    sum += t;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    if (why) *why = "probabilities do not sum to 1 within 1e-12";
    return false;
  }
  return true;
}

std::vector<double> iota_outcomes(std::size_t n) {
  std::vector<double> xs(n);
  for (std::size_t k = 0; k < n; ++k) xs[k] = static_cast<double>(k + 1);
  return xs;
}

std::size_t outcome_index(double x, std::size_t n) {
  const auto k = static_cast<long long>(std::llround(x));
  if (k < 1 || static_cast<std::size_t>(k) > n)
    throw DomainError("multinomial outcome outside {1..n}");
  return static_cast<std::size_t>(k) - 1;
}

}  // namespace

void require_interior(const ParametricFamily& fam, const ParamPoint& p) {
  check_point_shape(fam, p);
  std::string why;
  if (!fam.in_domain(p.theta, &why)) {
    std::ostringstream os;
    os << "parameter point rejected for family '" << fam.name << "': " << why;
    throw DomainError(os.str());
  }
}

void validate_family_point(const ParametricFamily& fam, const ParamPoint& p,
                           const QuadratureConfig& q) {
  require_interior(fam, p);
  double mass;
  if (fam.discrete()) {
    mass = 0.0;
    for (double x : fam.outcomes(p.theta)) mass += density_checked(fam, x, p.theta);
  } else {
    mass = integrate([&](double x) { return density_checked(fam, x, p.theta); },
                     fam.support_lo, fam.support_hi, q)
               .value;
  }
  if (std::abs(mass - 1.0) > 1e-6) {
    std::ostringstream os;
    os << "density of '" << fam.name << "' has total mass " << mass
       << " at the given point (expected 1 within 1e-6)";
    throw DomainError(os.str());
  }
}

MetricTensor fisher_information(const ParametricFamily& fam,
                                const ParamPoint& p,
                                const QuadratureConfig& q) {
  return {weighted_score_outer(fam, p, 1.0, q), std::nullopt};
}

double rao_line_element(const MetricTensor& F, const TangentVector& v) {
  const auto n = F.entries.rows();
  if (F.entries.cols() != n)
    throw DomainError("metric tensor is not square");
  if (static_cast<Eigen::Index>(v.dtheta.size()) != n)
    throw DomainError("tangent vector length does not match metric dimension");
  Eigen::Map<const Eigen::VectorXd> dv(v.dtheta.data(), n);
  return dv.dot(F.entries * dv);
}

MetricTensor burbea_rao_tensor(const ParametricFamily& fam,
                               const ParamPoint& p, double alpha,
                               const QuadratureConfig& q) {
  return {weighted_score_outer(fam, p, alpha, q), alpha};
}

MultinomialAlphaTensor multinomial_alpha_tensor(const ParamPoint& probs,
                                                double alpha) {
  const std::size_t n = probs.theta.size();
  if (n == 0) throw DomainError("empty probability vector");
  double sum = 0.0;
  for (double t : probs.theta) {
    if (!(t > 0.0))
      throw DomainError("multinomial probabilities must be strictly positive");
    sum += t;
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw DomainError("multinomial probabilities must sum to 1 within 1e-12");

  const auto nn = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd G = Eigen::MatrixXd::Zero(nn, nn);
  for (std::size_t k = 0; k < n; ++k) {
    const double rho = probs.theta[k];
    const double w = std::pow(rho, alpha - 2.0);
    // d(log rho_k)/d(theta_i) is 1/rho_k when i == k, else 0, so only the
    // diagonal receives a contribution.
    const double dlog = 1.0 / rho;
    G(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) += w * dlog * dlog;
  }
  MultinomialAlphaTensor out;
  out.tensor = {G, alpha};
  out.rank = tensor_rank(out.tensor, 1e-12);
  return out;
}

int tensor_rank(const MetricTensor& M, double tol) {
  for (Eigen::Index i = 0; i < M.entries.size(); ++i)
    if (!std::isfinite(M.entries(i))) throw DomainError("tensor has non-finite entries");
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(M.entries);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv[0] == 0.0) return 0;
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv[i] > tol * sv[0]) ++rank;
  return rank;
}

ParametricFamily bernoulli_family() {
  ParametricFamily fam;
  fam.name = "bernoulli";
  fam.dim = 1;
  fam.outcomes = [](const std::vector<double>&) {
    return std::vector<double>{0.0, 1.0};
  };
  fam.density = [](double x, const std::vector<double>& th) {
    return x > 0.5 ? th[0] : 1.0 - th[0];
  };
  fam.score = [](double x, const std::vector<double>& th, std::size_t) {
    return x > 0.5 ? 1.0 / th[0] : -1.0 / (1.0 - th[0]);
  };
  fam.in_domain = [](const std::vector<double>& th, std::string* why) {
    if (th[0] > kBoundaryMargin && th[0] < 1.0 - kBoundaryMargin) return true;
    if (why) *why = "p must stay in (0,1) away from the 1e-9 margin";
    return false;
  };
  fam.analytic_fisher = [](const std::vector<double>& th) {
    Eigen::MatrixXd F(1, 1);
    F(0, 0) = 1.0 / (th[0] * (1.0 - th[0]));
    return F;
  };
  return fam;
}

ParametricFamily poisson_family() {
  ParametricFamily fam;
  fam.name = "poisson";
  fam.dim = 1;
  // Truncate where the right tail mass drops below 1e-12.
  fam.outcomes = [](const std::vector<double>& th) {
    const double lambda = th[0];
    std::vector<double> xs;
    double pmf = std::exp(-lambda);
    double cum = pmf;
    std::size_t k = 0;
    xs.push_back(0.0);
    constexpr std::size_t kMaxOutcomes = 200000;
    while (1.0 - cum >= 1e-12 && k < kMaxOutcomes) {
      ++k;
      pmf *= lambda / static_cast<double>(k);
      cum += pmf;
      xs.push_back(static_cast<double>(k));
    }
    return xs;
  };
  fam.density = [](double x, const std::vector<double>& th) {
    const double lambda = th[0];
    return std::exp(x * std::log(lambda) - lambda - std::lgamma(x + 1.0));
  };
  fam.score = [](double x, const std::vector<double>& th, std::size_t) {
    return x / th[0] - 1.0;
  };
  fam.in_domain = [](const std::vector<double>& th, std::string* why) {
    if (th[0] > kBoundaryMargin && th[0] <= 1e6) return true;
    if (why) *why = "lambda must be positive (and at most 1e6)";
    return false;
  };
  fam.analytic_fisher = [](const std::vector<double>& th) {
    Eigen::MatrixXd F(1, 1);
    F(0, 0) = 1.0 / th[0];
    return F;
  };
  return fam;
}

ParametricFamily normal_family() {
  ParametricFamily fam;
  fam.name = "normal";
  fam.dim = 2;  // (mu, sigma)
  fam.support_lo = -std::numeric_limits<double>::infinity();
  fam.support_hi = std::numeric_limits<double>::infinity();
  fam.density = [](double x, const std::vector<double>& th) {
    const double z = (x - th[0]) / th[1];
    return std::exp(-0.5 * z * z) / (th[1] * std::sqrt(2.0 * std::numbers::pi));
  };
  fam.score = [](double x, const std::vector<double>& th, std::size_t i) {
    const double z = (x - th[0]) / th[1];
    return i == 0 ? z / th[1] : (z * z - 1.0) / th[1];
  };
  fam.in_domain = [](const std::vector<double>& th, std::string* why) {
    if (std::isfinite(th[0]) && th[1] > kBoundaryMargin) return true;
    if (why) *why = "sigma must be positive away from the 1e-9 margin";
    return false;
  };
  fam.analytic_fisher = [](const std::vector<double>& th) {
    Eigen::MatrixXd F = Eigen::MatrixXd::Zero(2, 2);
    F(0, 0) = 1.0 / (th[1] * th[1]);
    F(1, 1) = 2.0 / (th[1] * th[1]);
    return F;
  };
  return fam;
}

ParametricFamily multinomial_reduced_family(std::size_t n) {
  if (n < 2) throw DomainError("multinomial needs at least 2 outcomes");
  ParametricFamily fam;
  fam.name = "multinomial_reduced";
  fam.dim = n - 1;
  fam.outcomes = [n](const std::vector<double>&) { return iota_outcomes(n); };
  fam.density = [n](double x, const std::vector<double>& th) {
    const std::size_t k = outcome_index(x, n);
    if (k < n - 1) return th[k];
    double last = 1.0;
    for (double t : th) last -= t;
    return last;
  };
  fam.score = [n](double x, const std::vector<double>& th, std::size_t i) {
    const std::size_t k = outcome_index(x, n);
    if (k < n - 1) return k == i ? 1.0 / th[k] : 0.0;
    double last = 1.0;
    for (double t : th) last -= t;
    return -1.0 / last;
  };
  fam.in_domain = [](const std::vector<double>& th, std::string* why) {
    double sum = 0.0;
    for (double t : th) {
      if (!(t > kBoundaryMargin)) {
        if (why) *why = "free probability at or below the boundary margin";
        return false;
      }
      sum += t;
    }
    if (!(sum < 1.0 - kBoundaryMargin)) {
      if (why) *why = "implied last probability at or below the boundary margin";
      return false;
    }
    return true;
  };
  fam.analytic_fisher = [n](const std::vector<double>& th) {
    const auto d = static_cast<Eigen::Index>(n - 1);
    double last = 1.0;
    for (double t : th) last -= t;
    Eigen::MatrixXd F = Eigen::MatrixXd::Constant(d, d, 1.0 / last);
    for (Eigen::Index i = 0; i < d; ++i) F(i, i) += 1.0 / th[static_cast<std::size_t>(i)];
    return F;
  };
  return fam;
}

ParametricFamily multinomial_family(std::size_t n) {
  if (n < 2) throw DomainError("multinomial needs at least 2 outcomes");
  ParametricFamily fam;
  fam.name = "multinomial";
  fam.dim = n;
  fam.outcomes = [n](const std::vector<double>&) { return iota_outcomes(n); };
  fam.density = [n](double x, const std::vector<double>& th) {
    return th[outcome_index(x, n)];
  };
  fam.score = [n](double x, const std::vector<double>& th, std::size_t i) {
    const std::size_t k = outcome_index(x, n);
    return k == i ? 1.0 / th[k] : 0.0;
  };
  fam.in_domain = [](const std::vector<double>& th, std::string* why) {
    return in_open_simplex(th, kBoundaryMargin, why);
  };
  fam.analytic_fisher = [n](const std::vector<double>& th) {
    const auto d = static_cast<Eigen::Index>(n);
    Eigen::MatrixXd F = Eigen::MatrixXd::Zero(d, d);
    for (Eigen::Index i = 0; i < d; ++i) F(i, i) = 1.0 / th[static_cast<std::size_t>(i)];
    return F;
  };

  auto chart = std::make_shared<GeodesicChart>();
  chart->dim = n - 1;
  chart->to_chart = [](const std::vector<double>& th) {
    return std::vector<double>(th.begin(), th.end() - 1);
  };
  chart->from_chart = [](const std::vector<double>& th) {
    std::vector<double> full(th);
    double last = 1.0;
    for (double t : th) last -= t;
    full.push_back(last);
    return full;
  };
  chart->push_tangent = [](const std::vector<double>& v) {
    return std::vector<double>(v.begin(), v.end() - 1);
  };
  chart->pull_tangent = [](const std::vector<double>& v) {
    std::vector<double> full(v);
    double last = 0.0;
    for (double t : v) last -= t;
    full.push_back(last);
    return full;
  };
  chart->family = std::make_shared<ParametricFamily>(multinomial_reduced_family(n));
  fam.chart = chart;
  return fam;
}

ParametricFamily make_family(std::string_view name, std::size_t theta_dim) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (lower == "bernoulli") return bernoulli_family();
  if (lower == "poisson") return poisson_family();
  if (lower == "normal") return normal_family();
  if (lower == "multinomial") return multinomial_family(theta_dim);
  throw DomainError("unknown family '" + std::string(name) +
                    "' (expected bernoulli, poisson, normal, or multinomial)");
}

FamilySpec parse_family_spec(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  FamilySpec spec;
  bool have_family = false, have_theta = false;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t semi = std::min(text.find(';', pos), text.size());
    const std::string_view part = trim(text.substr(pos, semi - pos));
    if (!part.empty()) {
      const std::size_t eq = part.find('=');
      if (eq == std::string_view::npos)
        throw ParseError("family spec clause lacks '='", 1, static_cast<int>(pos + 1));
      const std::string_view key = trim(part.substr(0, eq));
      const std::string_view value = trim(part.substr(eq + 1));
      if (key == "family") {
        spec.family = std::string(value);
        have_family = true;
      } else if (key == "theta") {
        std::string buf(value);
        std::replace(buf.begin(), buf.end(), ',', ' ');
        std::istringstream is(buf);
        double x;
        while (is >> x) spec.theta.push_back(x);
        if (!is.eof())
          throw ParseError("theta list contains a non-numeric token", 1,
                           static_cast<int>(pos + eq + 2));
        have_theta = true;
      } else {
        throw ParseError("unknown family spec key '" + std::string(key) + "'", 1,
                         static_cast<int>(pos + 1));
      }
    }
    pos = semi + 1;
  }
  if (!have_family) throw ParseError("family spec missing 'family=' clause", 1, 1);
  if (!have_theta || spec.theta.empty())
    throw ParseError("family spec missing a non-empty 'theta=' clause", 1, 1);
  return spec;
}

}  // namespace raogeo
