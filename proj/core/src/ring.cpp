#include "cvfnn/ring.hpp"

#include <thread>

namespace cvfnn {
namespace {

constexpr double kUniformTol = 1e-10;
constexpr double kZeroEigRel = 1e-12;

/// q* of one spectrum without allocating; zero eigenvalues force 0.
double grid_critical_order(const std::vector<Complex>& eigs) {
  double scale = 0.0;
  for (const Complex& lambda : eigs) scale = std::max(scale, std::abs(lambda));
  const double zero_tol = kZeroEigRel * scale;
  double min_abs_arg = kPi;
  for (const Complex& lambda : eigs) {
    if (std::abs(lambda) <= zero_tol) return 0.0;
    min_abs_arg = std::min(min_abs_arg, std::abs(principal_arg(lambda)));
  }
  return (2.0 / kPi) * min_abs_arg;
}

}  // namespace

RingCoefficients ring_coefficients(const NetworkSpec& spec,
                                   const EquilibriumState& eq) {
  if (!has_ring_pattern(spec)) {
    throw std::invalid_argument(
        "network does not have a ring band structure");
  }
  const Eigen::Index n = spec.n;
  ComplexVector d(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const auto deriv = act_complex_derivative(spec.activations[k], eq.z[k]);
    if (!deriv) {
      throw DomainError("activation of component " + std::to_string(k) +
                        " has no complex derivative at the equilibrium value; "
                        "the circulant reduction is undefined there");
    }
    d[k] = *deriv;
  }

  RingCoefficients c;
  c.n = spec.n;
  for (Eigen::Index j = 0; j < n; ++j) {
    const Eigen::Index fwd = (j + 1) % n;
    const Eigen::Index bwd = (j + n - 1) % n;
    const Complex alpha_j = -spec.a[j] + spec.T(j, j) * d[j];
    const Complex beta_j = spec.T(j, fwd) * d[fwd];
    const Complex gamma_j = spec.T(j, bwd) * d[bwd];
    if (j == 0) {
      c.alpha = alpha_j;
      c.beta = beta_j;
      c.gamma = gamma_j;
    } else if (std::abs(alpha_j - c.alpha) > kUniformTol ||
               std::abs(beta_j - c.beta) > kUniformTol ||
               std::abs(gamma_j - c.gamma) > kUniformTol) {
      throw DomainError(
          "non-uniform ring bands: the linearization is not circulant and "
          "the closed-form analysis is inapplicable (use the dense spectral "
          "route)");
    }
  }
  return c;
}

std::vector<Complex> circulant_eigenvalues(const RingCoefficients& coeffs) {
  if (coeffs.n < 3) throw std::invalid_argument("ring needs n >= 3");
  std::vector<Complex> eigs(coeffs.n);
  for (int p = 0; p < coeffs.n; ++p) {
    const double angle = 2.0 * kPi * p / coeffs.n;
    const Complex w = std::polar(1.0, angle);
    eigs[p] = coeffs.alpha + coeffs.beta * w + coeffs.gamma * std::conj(w);
  }
  return eigs;
}

bool ring_sufficient_stable(const RingCoefficients& coeffs) {
  return coeffs.alpha.real() + std::abs(coeffs.beta + std::conj(coeffs.gamma)) <
         0.0;
}

double ring_critical_order(const RingCoefficients& coeffs) {
  return critical_order(circulant_eigenvalues(coeffs));
}

std::vector<Complex> parametric_eigs(double theta1, double theta2, int n) {
  if (n < 3) throw std::invalid_argument("ring needs n >= 3");
  std::vector<Complex> eigs(n);
  const double half_diff = (theta1 - theta2) / 2.0;
  const Complex phase = std::polar(1.0, (theta1 + theta2) / 2.0);
  for (int p = 0; p < n; ++p) {
    const double c = 2.0 * std::cos(half_diff + 2.0 * kPi * p / n);
    eigs[p] = -1.0 + c * phase;
  }
  return eigs;
}

DensityGrid density_scan(int n, int resolution, int threads) {
  if (n < 3) throw std::invalid_argument("ring needs n >= 3");
  if (resolution < 16) throw std::invalid_argument("resolution must be >= 16");
  if (threads < 1) throw std::invalid_argument("threads must be >= 1");

  DensityGrid grid;
  grid.n_neurons = n;
  grid.resolution = resolution;
  grid.q_star.assign(static_cast<std::size_t>(resolution) * resolution, 0.0);
  grid.stable_all_q.assign(grid.q_star.size(), 0);

  // Roots of unity are shared by every cell.
  std::vector<Complex> w(n);
  for (int p = 0; p < n; ++p) w[p] = std::polar(1.0, 2.0 * kPi * p / n);

  auto scan_rows = [&grid, &w, n, resolution](int row_begin, int row_end) {
    RingCoefficients c;
    c.alpha = Complex{-1.0, 0.0};
    c.n = n;
    std::vector<Complex> eigs(n);
    for (int i = row_begin; i < row_end; ++i) {
      c.beta = std::polar(1.0, grid.theta1_at(i));
      for (int j = 0; j < resolution; ++j) {
        c.gamma = std::polar(1.0, grid.theta2_at(j));
        for (int p = 0; p < n; ++p) {
          eigs[p] = c.alpha + c.beta * w[p] + c.gamma * std::conj(w[p]);
        }
        const double q = grid_critical_order(eigs);
        const std::size_t idx = grid.index(i, j);
        grid.q_star[idx] = q;
        grid.stable_all_q[idx] = q >= 1.0 ? 1 : 0;
      }
    }
  };

  if (threads == 1) {
    scan_rows(0, resolution);
  } else {
    const int used = std::min(threads, resolution);
    std::vector<std::thread> pool;
    pool.reserve(used);
    const int chunk = (resolution + used - 1) / used;
    for (int t = 0; t < used; ++t) {
      const int begin = t * chunk;
      const int end = std::min(resolution, begin + chunk);
      if (begin >= end) break;
      pool.emplace_back(scan_rows, begin, end);
    }
    for (std::thread& th : pool) th.join();
  }
  return grid;
}

}  // namespace cvfnn
