#include "cvfnn/spectral.hpp"

#include <Eigen/Eigenvalues>

#include <limits>

namespace cvfnn {
namespace {

constexpr double kZeroEigRel = 1e-12;
constexpr double kMarginalBand = 1e-12;
constexpr double kEigResidualRel = 1e-10;

}  // namespace

std::string to_string(StabilityVerdict v) {
  switch (v) {
    case StabilityVerdict::Stable: return "stable";
    case StabilityVerdict::Marginal: return "marginal";
    case StabilityVerdict::Unstable: return "unstable";
    case StabilityVerdict::Degenerate: return "degenerate";
  }
  return "?";
}

std::string to_string(StableRange r) {
  switch (r) {
    case StableRange::AllOrders: return "all q in (0,1)";
    case StableRange::BelowCritical: return "q in (0, q_star)";
    case StableRange::None: return "none";
    case StableRange::Degenerate: return "degenerate";
  }
  return "?";
}

ComplexMatrix jacobian_m(const NetworkSpec& spec, const EquilibriumState& eq) {
  const Eigen::Index n = spec.n;
  if (eq.z.size() != n) {
    throw std::invalid_argument("equilibrium has wrong dimension");
  }
  ComplexVector d(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const auto deriv = act_complex_derivative(spec.activations[k], eq.z[k]);
    if (!deriv) {
      throw DomainError(
          "activation of component " + std::to_string(k) +
          " has no complex derivative at the equilibrium value; the "
          "linearization M = -A + T diag(g') is undefined there");
    }
    d[k] = *deriv;
  }
  ComplexMatrix M = spec.T * d.asDiagonal();
  M.diagonal() -= spec.a.cast<Complex>();
  return M;
}

std::vector<Complex> eig_complex(const ComplexMatrix& M) {
  if (M.rows() != M.cols() || M.rows() == 0) {
    throw std::invalid_argument("eig_complex expects a nonempty square matrix");
  }
  Eigen::ComplexEigenSolver<ComplexMatrix> solver(M, /*computeEigenvectors=*/true);
  if (solver.info() != Eigen::Success) {
    throw DomainError("complex eigensolver did not converge");
  }
  const double scale = std::max(M.norm(), 1e-300);
  for (Eigen::Index k = 0; k < M.rows(); ++k) {
    const ComplexVector v = solver.eigenvectors().col(k);
    const double res = (M * v - solver.eigenvalues()[k] * v).norm();
    if (res > kEigResidualRel * scale) {
      throw DomainError("eigenpair residual " + std::to_string(res) +
                        " exceeds tolerance; spectrum untrusted");
    }
  }
  const auto& vals = solver.eigenvalues();
  return {vals.data(), vals.data() + vals.size()};
}

SpectrumReport matignon_report(const std::vector<Complex>& eigs, double q) {
  if (!(q > 0.0 && q < 1.0)) {
    throw std::invalid_argument("order q must lie in (0, 1)");
  }
  if (eigs.empty()) throw std::invalid_argument("empty spectrum");

  SpectrumReport report;
  report.q = q;
  report.eigenvalues = eigs;

  double scale = 0.0;
  for (const Complex& lambda : eigs) scale = std::max(scale, std::abs(lambda));
  const double zero_tol = kZeroEigRel * scale;

  double min_abs_arg = std::numeric_limits<double>::infinity();
  double min_margin = std::numeric_limits<double>::infinity();
  for (const Complex& lambda : eigs) {
    const double arg = principal_arg(lambda);
    report.args.push_back(arg);
    report.margins.push_back(std::abs(arg) - q * kPi / 2.0);
    if (std::abs(lambda) <= zero_tol) {
      report.degenerate = true;
      continue;
    }
    min_abs_arg = std::min(min_abs_arg, std::abs(arg));
    min_margin = std::min(min_margin, report.margins.back());
  }

  report.q_star =
      std::isfinite(min_abs_arg) ? (2.0 / kPi) * min_abs_arg : 0.0;
  report.stable_all_q = !report.degenerate && report.q_star >= 1.0;

  if (report.degenerate) {
    report.verdict = StabilityVerdict::Degenerate;
    report.stable_for = StableRange::Degenerate;
  } else {
    if (min_margin > kMarginalBand) {
      report.verdict = StabilityVerdict::Stable;
    } else if (min_margin >= -kMarginalBand) {
      report.verdict = StabilityVerdict::Marginal;
    } else {
      report.verdict = StabilityVerdict::Unstable;
    }
    if (report.q_star >= 1.0) {
      report.stable_for = StableRange::AllOrders;
    } else if (report.q_star > 0.0) {
      report.stable_for = StableRange::BelowCritical;
    } else {
      report.stable_for = StableRange::None;
    }
  }
  return report;
}

double critical_order(const std::vector<Complex>& eigs) {
  if (eigs.empty()) throw std::invalid_argument("empty spectrum");
  double scale = 0.0;
  for (const Complex& lambda : eigs) scale = std::max(scale, std::abs(lambda));
  const double zero_tol = kZeroEigRel * scale;

  double min_abs_arg = std::numeric_limits<double>::infinity();
  for (const Complex& lambda : eigs) {
    if (std::abs(lambda) <= zero_tol) {
      throw DomainError(
          "spectrum contains a zero eigenvalue; its argument and hence the "
          "critical order are undefined");
    }
    min_abs_arg = std::min(min_abs_arg, std::abs(principal_arg(lambda)));
  }
  return (2.0 / kPi) * min_abs_arg;
}

std::vector<Complex> real_split_spectrum(const NetworkSpec& spec,
                                         const EquilibriumState& eq) {
  const ComplexMatrix M = jacobian_m(spec, eq);
  const Eigen::Index n = M.rows();
  RealMatrix J(2 * n, 2 * n);
  J.topLeftCorner(n, n) = M.real();
  J.topRightCorner(n, n) = -M.imag();
  J.bottomLeftCorner(n, n) = M.imag();
  J.bottomRightCorner(n, n) = M.real();

  Eigen::EigenSolver<RealMatrix> solver(J, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw DomainError("real eigensolver did not converge");
  }
  const auto& vals = solver.eigenvalues();
  return {vals.data(), vals.data() + vals.size()};
}

}  // namespace cvfnn
