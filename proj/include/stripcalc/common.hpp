#pragma once

#include <complex>
#include <limits>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace stripcalc {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double inf = std::numeric_limits<double>::infinity();
inline constexpr cplx I1{0.0, 1.0};

// precondition / admissibility violations (CLI status 2)
struct DomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct SizingError : DomainError {
  using DomainError::DomainError;
};

// numerical failures (CLI status 3)
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConditioningError : NumericalError {
  double estimate = 0;
  ConditioningError(const std::string& what, double est) : NumericalError(what), estimate(est) {}
};

struct ConvergenceError : NumericalError {
  double residual = 0;
  int iterations = 0;
  ConvergenceError(const std::string& what, double res, int it)
      : NumericalError(what), residual(res), iterations(it) {}
};

inline void require(bool ok, const std::string& msg) {
  if (!ok) throw DomainError(msg);
}

}  // namespace stripcalc
