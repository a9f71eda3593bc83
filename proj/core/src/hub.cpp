#include "cvfnn/hub.hpp"

namespace cvfnn {
namespace {

constexpr double kUniformTol = 1e-10;
constexpr double kCosZeroTol = 1e-14;
constexpr double kClampSlack = 1e-9;
constexpr double kCrossCheckTol = 1e-10;

double clamp_to_unit(double x) {
  if (x > 1.0) {
    if (x > 1.0 + kClampSlack) {
      throw std::logic_error("arccos argument overshoots [-1, 1]");
    }
    return 1.0;
  }
  if (x < -1.0) {
    if (x < -1.0 - kClampSlack) {
      throw std::logic_error("arccos argument overshoots [-1, 1]");
    }
    return -1.0;
  }
  return x;
}

/// Closed-form q** of the quadratic factor, branch-matched to the root
/// arguments: 2*phi equals theta2 -+ 2B shifted by 0 or +-2pi per branch,
/// so q** = (2/pi) min |phi| evaluates to the listed expressions.
double quadratic_critical_order(const HubRootArgs& r) {
  const double t2 = r.theta2;
  const double B = r.angle_b;
  switch (r.branch) {
    case HubBranch::CaseA:
    case HubBranch::ZeroSum:
    case HubBranch::RightAngle:
      return std::min(std::abs(t2 - 2.0 * B), std::abs(t2 + 2.0 * B)) / kPi;
    case HubBranch::CaseB1:
      return std::min(std::abs(t2 + 2.0 * kPi - 2.0 * B),
                      std::abs(t2 + 2.0 * kPi + 2.0 * B)) /
             kPi;
    case HubBranch::CaseB2:
      return std::min(std::abs(t2 + 2.0 * kPi - 2.0 * B),
                      std::abs(t2 - 2.0 * kPi + 2.0 * B)) /
             kPi;
    case HubBranch::CaseB3:
      return std::min(std::abs(t2 - 2.0 * kPi + 2.0 * B),
                      std::abs(t2 - 2.0 * kPi - 2.0 * B)) /
             kPi;
  }
  throw std::logic_error("unhandled branch");
}

}  // namespace

std::string to_string(HubBranch b) {
  switch (b) {
    case HubBranch::CaseA: return "a";
    case HubBranch::CaseB1: return "b.1";
    case HubBranch::CaseB2: return "b.2";
    case HubBranch::CaseB3: return "b.3";
    case HubBranch::ZeroSum: return "zero-sum";
    case HubBranch::RightAngle: return "cos-A-zero";
  }
  return "?";
}

HubRootArgs lemma1_root_args(Complex alpha, Complex beta, Complex gamma) {
  const Complex s = alpha + beta;
  const Complex p = alpha * beta - gamma;

  HubRootArgs r;
  r.rho2 = std::abs(p);
  if (r.rho2 == 0.0) {
    throw DomainError(
        "alpha*beta - gamma = 0: a quadratic root sits at the origin and "
        "has no argument");
  }
  r.theta2 = principal_arg(p);
  r.rho1 = std::abs(s);

  if (r.rho1 == 0.0) {
    // Roots are the two square roots of -(alpha*beta - gamma).
    r.theta1 = 0.0;
    r.angle_a = -r.theta2 / 2.0;
    r.angle_b = kPi / 2.0;
    r.branch = HubBranch::ZeroSum;
    r.phi1 = r.theta2 / 2.0 + kPi / 2.0;
    r.phi2 = r.theta2 / 2.0 - kPi / 2.0;
    return r;
  }

  r.theta1 = principal_arg(s);
  r.angle_a = r.theta1 - r.theta2 / 2.0;
  const double cos_a = std::cos(r.angle_a);

  if (std::abs(cos_a) <= kCosZeroTol) {
    // Root difference phi1 - phi2 is exactly pi; B = pi/2 without roundoff.
    r.angle_b = kPi / 2.0;
    r.branch = HubBranch::RightAngle;
    r.phi1 = r.theta2 / 2.0 + kPi / 2.0;
    r.phi2 = r.theta2 / 2.0 - kPi / 2.0;
    return r;
  }

  const double u = r.rho1 * r.rho1 / (2.0 * r.rho2);
  const double cos_2a = std::cos(2.0 * r.angle_a);
  const double disc = u * u - 4.0 * u * cos_2a + 4.0;
  const double cos_phi = clamp_to_unit((u - std::sqrt(disc)) / 2.0);
  r.angle_b = 0.5 * std::acos(cos_phi);
  const double B = r.angle_b;

  if (cos_a > 0.0) {
    r.branch = HubBranch::CaseA;
    r.phi1 = r.theta2 / 2.0 + B;
    r.phi2 = r.theta2 / 2.0 - B;
  } else if (r.theta2 <= -2.0 * B) {
    r.branch = HubBranch::CaseB1;
    r.phi1 = r.theta2 / 2.0 + kPi + B;
    r.phi2 = r.theta2 / 2.0 + kPi - B;
  } else if (r.theta2 <= 2.0 * B) {
    r.branch = HubBranch::CaseB2;
    r.phi1 = r.theta2 / 2.0 + (kPi - B);
    r.phi2 = r.theta2 / 2.0 - (kPi - B);
  } else {
    r.branch = HubBranch::CaseB3;
    r.phi1 = r.theta2 / 2.0 - kPi + B;
    r.phi2 = r.theta2 / 2.0 - kPi - B;
  }
  return r;
}

HubCoefficients hub_coefficients(const NetworkSpec& spec,
                                 const EquilibriumState& eq) {
  if (classify_topology(spec) != TopologyTag::Hub) {
    throw std::invalid_argument("network is not a hub topology");
  }
  const Eigen::Index n = spec.n;
  ComplexVector d(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const auto deriv = act_complex_derivative(spec.activations[k], eq.z[k]);
    if (!deriv) {
      throw DomainError("activation of component " + std::to_string(k) +
                        " has no complex derivative at the equilibrium value; "
                        "the hub reduction is undefined there");
    }
    d[k] = *deriv;
  }

  HubCoefficients c;
  c.n = spec.n;
  c.alpha = -spec.a[0] + spec.T(0, 0) * d[0];
  c.gamma = Complex{0.0, 0.0};
  for (Eigen::Index j = 1; j < n; ++j) {
    const Complex beta_j = -spec.a[j] + spec.T(j, j) * d[j];
    if (j == 1) {
      c.beta = beta_j;
    } else if (std::abs(beta_j - c.beta) > kUniformTol) {
      throw DomainError(
          "non-uniform peripheral diagonal: -a_j + T(j,j) g'_j differs "
          "across peripheral neurons; the hub reduction is inapplicable "
          "(use the dense spectral route)");
    }
    c.gamma += spec.T(0, j) * spec.T(j, 0) * d[0] * d[j];
  }
  return c;
}

HubReport hub_report(const HubCoefficients& coeffs) {
  HubReport report;
  report.coeffs = coeffs;
  report.roots = lemma1_root_args(coeffs.alpha, coeffs.beta, coeffs.gamma);
  report.q_double_star = quadratic_critical_order(report.roots);

  const double from_args =
      (2.0 / kPi) *
      std::min(std::abs(report.roots.phi1), std::abs(report.roots.phi2));
  if (std::abs(report.q_double_star - from_args) > kCrossCheckTol) {
    throw std::logic_error(
        "closed-form critical order disagrees with root arguments");
  }

  if (coeffs.n >= 3) {
    if (coeffs.beta == Complex{0.0, 0.0}) {
      throw DomainError(
          "beta = 0 with n >= 3: the spectrum contains a zero eigenvalue of "
          "multiplicity n-2 and the critical order is undefined");
    }
    const double beta_order = (2.0 / kPi) * std::abs(principal_arg(coeffs.beta));
    report.q_star = std::min(beta_order, report.q_double_star);
  } else {
    report.q_star = report.q_double_star;
  }
  return report;
}

double hub_critical_order(const HubCoefficients& coeffs) {
  return hub_report(coeffs).q_star;
}

}  // namespace cvfnn
