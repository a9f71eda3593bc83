#include "cvfnn/activation.hpp"

namespace cvfnn {
namespace {

constexpr double kCauchyRiemannTol = 1e-10;

}  // namespace

Complex act_eval(const ActivationSpec& act, Complex z) {
  switch (act.kind) {
    case ActivationKind::Georgiou:
      return z / (act.c1 + act.c2 * std::abs(z));
    case ActivationKind::Linear:
      return act.gain * z;
  }
  throw std::logic_error("unhandled activation kind");
}

RealJacobian2x2 act_real_jacobian(const ActivationSpec& act, Complex z) {
  RealJacobian2x2 jac;
  switch (act.kind) {
    case ActivationKind::Georgiou: {
      const double x = z.real();
      const double y = z.imag();
      const double r = std::abs(z);
      if (r == 0.0) {
        jac.dRdx = jac.dIdy = 1.0 / act.c1;
        return jac;
      }
      const double d = act.c1 + act.c2 * r;
      const double d2 = d * d;
      jac.dRdx = (d - act.c2 * x * x / r) / d2;
      jac.dRdy = -act.c2 * x * y / (r * d2);
      jac.dIdx = jac.dRdy;
      jac.dIdy = (d - act.c2 * y * y / r) / d2;
      return jac;
    }
    case ActivationKind::Linear: {
      jac.dRdx = act.gain.real();
      jac.dRdy = -act.gain.imag();
      jac.dIdx = act.gain.imag();
      jac.dIdy = act.gain.real();
      return jac;
    }
  }
  throw std::logic_error("unhandled activation kind");
}

std::optional<Complex> act_complex_derivative(const ActivationSpec& act,
                                              Complex z) {
  const RealJacobian2x2 jac = act_real_jacobian(act, z);
  if (std::abs(jac.dRdx - jac.dIdy) > kCauchyRiemannTol ||
      std::abs(jac.dRdy + jac.dIdx) > kCauchyRiemannTol) {
    return std::nullopt;
  }
  return Complex{jac.dRdx, jac.dIdx};
}

}  // namespace cvfnn
