#pragma once

#include "cvfnn/spectral.hpp"

namespace cvfnn {

/// Reduced coefficients of a hub linearization.  With center 0 and
/// peripheral neurons 1..n-1, the characteristic polynomial of M factors as
///
///   (lambda - beta)^(n-2) * (lambda^2 - (alpha+beta) lambda + alpha beta - gamma)
///
/// where alpha = -a_0 + T(0,0) g'_0, beta is the common value of
/// -a_j + T(j,j) g'_j over the periphery, and
/// gamma = sum_j T(0,j) T(j,0) g'_0 g'_j.
struct HubCoefficients {
  Complex alpha{};
  Complex beta{};
  Complex gamma{};
  int n = 0;
};

/// Which branch of the closed-form root-argument analysis applied.
///  - CaseA:      cos A > 0
///  - CaseB1/2/3: cos A < 0, split on theta2 vs -2B / 2B
///  - ZeroSum:    rho1 = 0 (roots are the two square roots of alpha*beta-gamma)
///  - RightAngle: cos A = 0 (within 1e-14), where B = pi/2 exactly
enum class HubBranch { CaseA, CaseB1, CaseB2, CaseB3, ZeroSum, RightAngle };

[[nodiscard]] std::string to_string(HubBranch b);

/// Closed-form principal arguments of the roots of
/// lambda^2 - rho1 e^{i theta1} lambda + rho2 e^{i theta2}, where
/// rho1 e^{i theta1} = alpha + beta and rho2 e^{i theta2} = alpha beta - gamma.
/// A = theta1 - theta2/2 lies in (-3pi/2, 3pi/2); B in [0, pi/2] solves
/// cos 2B = ... via the discriminant identity; phi1 >= phi2 are the root
/// arguments in (-pi, pi].
struct HubRootArgs {
  double rho1 = 0.0;
  double theta1 = 0.0;
  double rho2 = 0.0;
  double theta2 = 0.0;
  double angle_a = 0.0;  // A
  double angle_b = 0.0;  // B
  HubBranch branch = HubBranch::CaseA;
  double phi1 = 0.0;
  double phi2 = 0.0;
};

/// Throws DomainError when alpha*beta - gamma = 0 (a quadratic root sits at
/// the origin and has no argument).
[[nodiscard]] HubRootArgs lemma1_root_args(Complex alpha, Complex beta,
                                           Complex gamma);

/// Critical order of the hub spectrum.
///  - q_double_star: (2/pi) * min(|phi1|, |phi2|), evaluated through the
///    branch-specific closed form and cross-checked against the root
///    arguments.
///  - q_star: min((2/pi)|Arg beta|, q_double_star) for n >= 3 (beta is an
///    eigenvalue of multiplicity n-2), q_double_star for n = 2.
struct HubReport {
  HubCoefficients coeffs;
  HubRootArgs roots;
  double q_double_star = 0.0;
  double q_star = 0.0;
};

/// Extracts (alpha, beta, gamma) from a hub-topology network at an
/// equilibrium.  Throws DomainError if some activation lacks a complex
/// derivative there, or if the peripheral diagonal -a_j + T(j,j) g'_j is
/// non-uniform beyond 1e-10 (the closed-form analysis is then inapplicable
/// and the caller should fall back to the dense spectral route).
[[nodiscard]] HubCoefficients hub_coefficients(const NetworkSpec& spec,
                                               const EquilibriumState& eq);

[[nodiscard]] HubReport hub_report(const HubCoefficients& coeffs);

/// Shorthand for hub_report(coeffs).q_star.  Throws DomainError when
/// beta = 0 with n >= 3 (zero eigenvalue of multiplicity n-2).
[[nodiscard]] double hub_critical_order(const HubCoefficients& coeffs);

}  // namespace cvfnn
