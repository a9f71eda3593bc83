#pragma once

#include "cvfnn/network.hpp"

namespace cvfnn {

/// A candidate fixed point of the network field.  residual_norm is always
/// recomputed from the complex-form field (max norm over component moduli),
/// never trusted from a solver.
struct EquilibriumState {
  ComplexVector z;
  double residual_norm = 0.0;
  bool converged = false;
};

/// Max norm over k of |-a_k z_k + (T g(z))_k + I_k|.
[[nodiscard]] double residual(const NetworkSpec& spec, const ComplexVector& z);

[[nodiscard]] EquilibriumState make_equilibrium(const NetworkSpec& spec,
                                                ComplexVector z,
                                                bool converged);

/// Damped Newton iteration on the 2n-dimensional real-split residual with
/// the analytic block Jacobian.  Steps are halved (up to 20 times) until the
/// residual decreases; converged means residual_norm <= tol within max_iter
/// iterations.  A guess that already satisfies the tolerance is returned
/// unchanged with zero iterations taken.
[[nodiscard]] EquilibriumState find_equilibrium(const NetworkSpec& spec,
                                                const ComplexVector& guess,
                                                double tol = 1e-12,
                                                int max_iter = 100);

/// Equilibria with all components equal, z_k = z for all k, for a network
/// whose rows act identically on such states: the n-dimensional fixed-point
/// equation collapses to the scalar equation a0 * z = S * g(z), with S the
/// common row sum of T.  Returns one-component states for the scalar
/// problem: z = 0 first (always a root since g(0) = 0 for the supported
/// activations), then the converged results of Newton started from each
/// seed, deduplicated with radius 1e-8 in max norm over (Re, Im).
/// Non-convergent seeds are dropped.
[[nodiscard]] std::vector<EquilibriumState> equal_component_equilibria(
    double a0, Complex S, const ActivationSpec& act,
    const std::vector<Complex>& seeds, double tol = 1e-12, int max_iter = 100);

/// Expands a one-component equal-component root to the full n-vector.
[[nodiscard]] ComplexVector lift_equal_component(const EquilibriumState& state,
                                                 int n);

}  // namespace cvfnn
