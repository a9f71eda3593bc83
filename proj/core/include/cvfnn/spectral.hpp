#pragma once

#include "cvfnn/equilibrium.hpp"

namespace cvfnn {

/// Stability of a fractional order q per the Matignon criterion: the
/// linearization is asymptotically stable iff |arg(lambda)| > q*pi/2 for
/// every eigenvalue lambda.
enum class StabilityVerdict { Stable, Marginal, Unstable, Degenerate };

/// The q-range with a stable verdict.
enum class StableRange { AllOrders, BelowCritical, None, Degenerate };

[[nodiscard]] std::string to_string(StabilityVerdict v);
[[nodiscard]] std::string to_string(StableRange r);

/// Spectrum of the complex linearization at a queried order q.
///
/// q_star = (2/pi) * min |arg(lambda)|: the supremum of orders q in (0, 1)
/// with a stable verdict (values >= 1 mean stable for every admissible
/// order).  q_star = 0 iff some eigenvalue has argument 0.  Eigenvalues
/// with |lambda| <= 1e-12 * max|lambda| have an undefined argument; they
/// set degenerate and are excluded from q_star.
struct SpectrumReport {
  std::vector<Complex> eigenvalues;
  std::vector<double> args;     // principal arguments, (-pi, pi]
  std::vector<double> margins;  // |arg(lambda)| - q*pi/2
  double q = 0.0;
  double q_star = 0.0;
  bool stable_all_q = false;
  bool degenerate = false;
  StabilityVerdict verdict = StabilityVerdict::Unstable;
  StableRange stable_for = StableRange::None;
};

/// Complex linearization M = -A + T * diag(g'(z*)) at an equilibrium.
/// Throws DomainError naming the offending component if some activation has
/// no complex derivative at its equilibrium value (Cauchy-Riemann fails).
[[nodiscard]] ComplexMatrix jacobian_m(const NetworkSpec& spec,
                                       const EquilibriumState& eq);

/// Eigenvalues of a complex matrix.  Every (lambda, v) pair is verified to
/// satisfy ||Mv - lambda v|| <= 1e-10 * ||M||_F; failures and solver
/// non-convergence raise DomainError.
[[nodiscard]] std::vector<Complex> eig_complex(const ComplexMatrix& M);

/// Matignon verdict for a spectrum at order q in (0, 1).  Marginal means
/// the minimum margin lies within 1e-12 of zero.
[[nodiscard]] SpectrumReport matignon_report(const std::vector<Complex>& eigs,
                                             double q);

/// q* = (2/pi) * min |arg(lambda)|.  Throws DomainError when the spectrum
/// contains a (numerically) zero eigenvalue.
[[nodiscard]] double critical_order(const std::vector<Complex>& eigs);

/// Eigenvalues of the 2n x 2n real-split Jacobian
/// J_tilde = [[Re M, -Im M], [Im M, Re M]], computed with a real
/// eigensolver.  As a multiset this equals spec(M) union spec(conj(M)).
[[nodiscard]] std::vector<Complex> real_split_spectrum(
    const NetworkSpec& spec, const EquilibriumState& eq);

}  // namespace cvfnn
