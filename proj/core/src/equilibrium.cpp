#include "cvfnn/equilibrium.hpp"

namespace cvfnn {
namespace {

/// -A_tilde + T_tilde * Dg_tilde(u), the Jacobian of the split field.
RealMatrix split_jacobian(const NetworkSpec& spec, const RealSplitSystem& split,
                          const RealVector& u) {
  const Eigen::Index n = spec.n;
  RealMatrix dg = RealMatrix::Zero(2 * n, 2 * n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const RealJacobian2x2 j =
        act_real_jacobian(spec.activations[k], Complex{u[k], u[n + k]});
    dg(k, k) = j.dRdx;
    dg(k, n + k) = j.dRdy;
    dg(n + k, k) = j.dIdx;
    dg(n + k, n + k) = j.dIdy;
  }
  RealMatrix jac = split.T_tilde * dg;
  jac -= split.A_tilde;
  return jac;
}

}  // namespace

double residual(const NetworkSpec& spec, const ComplexVector& z) {
  return complex_field(spec, z).cwiseAbs().maxCoeff();
}

EquilibriumState make_equilibrium(const NetworkSpec& spec, ComplexVector z,
                                  bool converged) {
  EquilibriumState state;
  state.residual_norm = residual(spec, z);
  state.z = std::move(z);
  state.converged = converged;
  return state;
}

EquilibriumState find_equilibrium(const NetworkSpec& spec,
                                  const ComplexVector& guess, double tol,
                                  int max_iter) {
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
  if (max_iter < 0) throw std::invalid_argument("max_iter must be >= 0");
  if (guess.size() != spec.n) {
    throw std::invalid_argument("guess has wrong dimension");
  }

  const RealSplitSystem split = real_split(spec);
  RealVector u = pack_split(guess);
  double res = residual(spec, unpack_split(u));
  bool converged = res <= tol;

  for (int it = 0; it < max_iter && !converged; ++it) {
    const RealMatrix jac = split_jacobian(spec, split, u);
    const RealVector f = split_field(spec, split, u);
    const RealVector step = jac.partialPivLu().solve(-f);
    if (!step.allFinite()) break;

    double lambda = 1.0;
    bool accepted = false;
    for (int half = 0; half <= 20; ++half) {
      const RealVector trial = u + lambda * step;
      const double trial_res = residual(spec, unpack_split(trial));
      if (trial_res < res) {
        u = trial;
        res = trial_res;
        accepted = true;
        break;
      }
      lambda *= 0.5;
    }
    if (!accepted) break;
    converged = res <= tol;
  }
  return make_equilibrium(spec, unpack_split(u), converged);
}

std::vector<EquilibriumState> equal_component_equilibria(
    double a0, Complex S, const ActivationSpec& act,
    const std::vector<Complex>& seeds, double tol, int max_iter) {
  NetworkSpec scalar;
  scalar.n = 1;
  scalar.a = RealVector::Constant(1, a0);
  scalar.T = ComplexMatrix::Constant(1, 1, S);
  scalar.activations = {act};
  scalar.inputs = ComplexVector::Zero(1);

  std::vector<EquilibriumState> roots;
  roots.push_back(make_equilibrium(scalar, ComplexVector::Zero(1), true));

  constexpr double kDedupRadius = 1e-8;
  for (const Complex& seed : seeds) {
    ComplexVector guess(1);
    guess[0] = seed;
    EquilibriumState state = find_equilibrium(scalar, guess, tol, max_iter);
    if (!state.converged) continue;
    bool duplicate = false;
    for (const EquilibriumState& existing : roots) {
      const Complex d = state.z[0] - existing.z[0];
      if (std::max(std::abs(d.real()), std::abs(d.imag())) < kDedupRadius) {
        duplicate = true;
        break;
      }
    }
    if (!duplicate) roots.push_back(std::move(state));
  }
  return roots;
}

ComplexVector lift_equal_component(const EquilibriumState& state, int n) {
  if (state.z.size() != 1) {
    throw std::invalid_argument("expected a one-component state");
  }
  return ComplexVector::Constant(n, state.z[0]);
}

}  // namespace cvfnn
