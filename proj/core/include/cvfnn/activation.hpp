#pragma once

#include <optional>

#include "cvfnn/types.hpp"

namespace cvfnn {

enum class ActivationKind { Georgiou, Linear };

/// Per-neuron activation function g : C -> C.
///
/// Catalog:
///  - Georgiou: g(z) = z / (c1 + c2*|z|), a bounded saturating map with
///    |g(z)| < 1/c2.  Requires c1 > 0 and c2 > 0.
///  - Linear: g(z) = gain * z.
struct ActivationSpec {
  ActivationKind kind = ActivationKind::Georgiou;
  double c1 = 1.0;
  double c2 = 1.0;
  Complex gain{1.0, 0.0};

  [[nodiscard]] static ActivationSpec georgiou(double c1, double c2) {
    ActivationSpec s;
    s.kind = ActivationKind::Georgiou;
    s.c1 = c1;
    s.c2 = c2;
    return s;
  }

  [[nodiscard]] static ActivationSpec linear(Complex gain) {
    ActivationSpec s;
    s.kind = ActivationKind::Linear;
    s.gain = gain;
    return s;
  }
};

/// Jacobian of the real-split map (x, y) -> (Re g, Im g) at one point.
struct RealJacobian2x2 {
  double dRdx = 0.0;
  double dRdy = 0.0;
  double dIdx = 0.0;
  double dIdy = 0.0;
};

/// g(z).  Assumes a parameter-valid spec (see validate_network).
[[nodiscard]] Complex act_eval(const ActivationSpec& act, Complex z);

/// Exact partial derivatives of (Re g, Im g) with respect to (Re z, Im z).
/// The Georgiou map has a removable singularity at z = 0; the continuous
/// extension (1/c1) * Id is returned there.
[[nodiscard]] RealJacobian2x2 act_real_jacobian(const ActivationSpec& act,
                                                Complex z);

/// Complex derivative g'(z) when the Cauchy-Riemann conditions hold at z
/// (within tolerance 1e-10 on both residuals), nullopt otherwise.
/// The Georgiou map is complex-differentiable only at z = 0, where
/// g'(0) = 1/c1; the linear map everywhere, with g' = gain.
[[nodiscard]] std::optional<Complex> act_complex_derivative(
    const ActivationSpec& act, Complex z);

}  // namespace cvfnn
