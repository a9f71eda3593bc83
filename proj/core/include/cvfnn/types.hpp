#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

/// Shared scalar/vector types and error taxonomy for the complex-valued
/// fractional-order Hopfield network toolkit.
namespace cvfnn {

using Complex = std::complex<double>;
using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

inline constexpr double kPi = std::numbers::pi;

/// Principal argument in (-pi, pi].  std::arg may return -pi for points on
/// the negative real axis (depending on the sign of the zero imaginary
/// part); that value is folded to +pi so the branch cut is half-open.
[[nodiscard]] inline double principal_arg(const Complex& z) {
  const double a = std::arg(z);
  return a == -kPi ? kPi : a;
}

/// A request that is structurally well-formed but mathematically outside the
/// domain of an analysis (degenerate spectrum, non-uniform coefficients,
/// missing complex derivative, oracle window exceeded).
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed user-facing input: JSON configs, CLI arguments, file contents.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace cvfnn
