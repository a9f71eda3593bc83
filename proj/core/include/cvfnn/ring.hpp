#pragma once

#include <cstdint>

#include "cvfnn/spectral.hpp"

namespace cvfnn {

/// Reduced coefficients of a ring linearization.  The Jacobian at an
/// equilibrium of a uniform ring is the circulant matrix
/// circ(alpha, beta, 0, ..., 0, gamma) with
///   alpha = -a_j + T(j,j) g'_j          (common diagonal),
///   beta  = T(j,j+1) g'_{j+1}           (common forward weight),
///   gamma = T(j,j-1) g'_{j-1}           (common backward weight),
/// indices cyclic.
struct RingCoefficients {
  Complex alpha{};
  Complex beta{};
  Complex gamma{};
  int n = 0;
};

/// Critical-order field q*(theta1, theta2) of the parametric ring family
/// alpha = -1, beta = e^{i theta1}, gamma = e^{i theta2}, sampled at cell
/// centers theta = -pi + (k + 1/2) * 2pi / resolution, row-major with
/// theta1 as the slow index.  q_star values >= 1 are stored as computed
/// (not clamped); stable_all_q records q_star >= 1.  Cells whose spectrum
/// touches zero get q_star = 0 (the conservative verdict: an eigenvalue
/// continuously crossing the origin passes through argument 0).
struct DensityGrid {
  int n_neurons = 0;
  int resolution = 0;
  std::vector<double> q_star;
  std::vector<std::uint8_t> stable_all_q;

  [[nodiscard]] double theta1_at(int i) const {
    return -kPi + (i + 0.5) * 2.0 * kPi / resolution;
  }
  [[nodiscard]] double theta2_at(int j) const { return theta1_at(j); }
  [[nodiscard]] std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) * resolution + j;
  }
};

/// Extracts (alpha, beta, gamma) from a ring-banded network (see
/// has_ring_pattern) at an equilibrium.  Throws DomainError if some
/// activation lacks a complex derivative there or if any of the three
/// bands is non-uniform beyond 1e-10.
[[nodiscard]] RingCoefficients ring_coefficients(const NetworkSpec& spec,
                                                 const EquilibriumState& eq);

/// lambda_p = alpha + beta w^p + gamma w^{-p}, w = e^{2 pi i / n},
/// for p = 0..n-1.
[[nodiscard]] std::vector<Complex> circulant_eigenvalues(
    const RingCoefficients& coeffs);

/// Sufficient condition for stability at every order q in (0, 1):
/// Re(alpha) + |beta + conj(gamma)| < 0 puts the whole spectrum in the
/// open left half-plane.
[[nodiscard]] bool ring_sufficient_stable(const RingCoefficients& coeffs);

/// q* = (2/pi) min_p |arg lambda_p|.  Throws DomainError when the spectrum
/// contains a (numerically) zero eigenvalue.
[[nodiscard]] double ring_critical_order(const RingCoefficients& coeffs);

/// Closed form for the parametric family alpha = -1, beta = e^{i theta1},
/// gamma = e^{i theta2}:
///   lambda_p = -1 + 2 cos((theta1 - theta2)/2 + 2 p pi / n)
///                  * e^{i (theta1 + theta2)/2}.
[[nodiscard]] std::vector<Complex> parametric_eigs(double theta1,
                                                   double theta2, int n);

/// Full grid of ring_critical_order over the parametric family.
/// resolution >= 16; threads >= 1 partitions rows (output is independent
/// of the thread count).
[[nodiscard]] DensityGrid density_scan(int n, int resolution, int threads = 1);

}  // namespace cvfnn
