#pragma once

#include <vector>

#include "cvfnn/activation.hpp"
#include "cvfnn/types.hpp"

namespace cvfnn {

/// Connection structure recognized by the closed-form analyses.
enum class TopologyTag { General, Hub, Ring };

/// A complex-valued Hopfield network with Caputo-fractional dynamics
///
///   D^q z_k = -a_k z_k + sum_j T(k,j) g_j(z_j) + I_k,   q in (0, 1),
///
/// where a_k > 0 are self-decay rates, T is the complex connection matrix,
/// g_j the per-neuron activations and I_k constant external inputs.
struct NetworkSpec {
  int n = 0;
  RealVector a;
  ComplexMatrix T;
  std::vector<ActivationSpec> activations;
  ComplexVector inputs;
};

/// Structural checks: n >= 1, consistent dimensions, a_k > 0, finite
/// entries, valid activation parameters.  Returns one message per
/// violation; empty means valid.
[[nodiscard]] std::vector<std::string> validate_network(const NetworkSpec& spec);

/// Classifies the exact zero pattern of T.
///  - Hub: neuron 0 is the center; the only nonzeros outside row/column 0
///    are the diagonal.  Requires n >= 2 (n = 2 is vacuously a hub).
///  - Ring: nonzeros only on the diagonal, the two cyclic off-diagonals and
///    the wraparound corners.  Requires n >= 3.
/// Hub wins when both patterns match.  Anything else is General.
[[nodiscard]] TopologyTag classify_topology(const NetworkSpec& spec);

/// True iff n >= 3 and T is zero off the diagonal and the two cyclic
/// off-diagonal bands.  Wider than classify_topology(...) == Ring: a
/// network whose pattern also matches a hub (every n = 3 matrix, or a
/// decoupled diagonal T) still qualifies for the circulant reduction.
[[nodiscard]] bool has_ring_pattern(const NetworkSpec& spec);

/// The equivalent 2n-dimensional real system obtained by stacking real
/// parts over imaginary parts, u = (Re z; Im z):
///
///   u' = -A_tilde u + T_tilde g_tilde(u) + I_tilde,
///   T_tilde = [[Re T, -Im T], [Im T, Re T]].
struct RealSplitSystem {
  RealMatrix A_tilde;
  RealMatrix T_tilde;
  RealVector I_tilde;
};

[[nodiscard]] RealSplitSystem real_split(const NetworkSpec& spec);

/// Right-hand side -a.*z + T g(z) + I in complex form.
[[nodiscard]] ComplexVector complex_field(const NetworkSpec& spec,
                                          const ComplexVector& z);

/// Right-hand side of the real-split system at u = (Re z; Im z).  Agrees
/// with complex_field after stacking, up to floating-point rounding.
[[nodiscard]] RealVector split_field(const NetworkSpec& spec,
                                     const RealSplitSystem& split,
                                     const RealVector& u);

/// Stacks a complex vector as (Re z; Im z).
[[nodiscard]] RealVector pack_split(const ComplexVector& z);

/// Inverse of pack_split.
[[nodiscard]] ComplexVector unpack_split(const RealVector& u);

}  // namespace cvfnn
