#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace raogeo {

// Base class for everything this library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad arguments or violated preconditions.
class DomainError : public Error {
 public:
  using Error::Error;
};

// A user-supplied callable produced a non-finite value.
class EvaluationError : public Error {
 public:
  EvaluationError(const std::string& msg, std::vector<double> point)
      : Error(msg), point_(std::move(point)) {}
  const std::vector<double>& point() const { return point_; }

 private:
  std::vector<double> point_;
};

// An iterative scheme ran out of budget. `achieved` is the best
// error estimate (or residual) reached before giving up.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& msg, double achieved)
      : Error(msg), achieved_(achieved) {}
  double achieved() const { return achieved_; }

 private:
  double achieved_;
};

// Metric not invertible at the requested point.
class SingularMetricError : public Error {
 public:
  SingularMetricError(const std::string& msg, double condition)
      : Error(msg), condition_(condition) {}
  double condition() const { return condition_; }

 private:
  double condition_;
};

// A geodesic left the family's valid parameter region mid-integration.
class BoundaryExitError : public Error {
 public:
  BoundaryExitError(const std::string& msg, std::vector<double> exit_point,
                    double fraction_completed)
      : Error(msg),
        exit_point_(std::move(exit_point)),
        fraction_completed_(fraction_completed) {}
  const std::vector<double>& exit_point() const { return exit_point_; }
  double fraction_completed() const { return fraction_completed_; }

 private:
  std::vector<double> exit_point_;
  double fraction_completed_;
};

// Arc tangent shorter than the resolvable threshold.
class SingularTangentError : public Error {
 public:
  using Error::Error;
};

// Conformality genuinely fails where the map derivative vanishes.
class CriticalPointError : public Error {
 public:
  CriticalPointError(const std::string& msg, std::complex<double> where)
      : Error(msg), where_(where) {}
  std::complex<double> where() const { return where_; }

 private:
  std::complex<double> where_;
};

// Text input rejected; carries 1-based line/column of the first defect.
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, int line, int column)
      : Error(msg), line_(line), column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace raogeo
