#pragma once

#include <limits>
#include <random>
#include <vector>

#include "cvfnn/network.hpp"

namespace cvfnn::testing {

/// Three-neuron hub: center 0 with a = (1, 2, 2), Georgiou activations
/// z/(1+|z|), no inputs.  At the origin the reduction gives
/// alpha = 1-5i, beta = -1+i, gamma = -3-4i and q* = 0.844976.
inline NetworkSpec hub_example() {
  NetworkSpec spec;
  spec.n = 3;
  spec.a = (RealVector(3) << 1.0, 2.0, 2.0).finished();
  spec.T = ComplexMatrix::Zero(3, 3);
  spec.T(0, 0) = {2.0, -5.0};
  spec.T(0, 1) = {-2.0, -1.0};
  spec.T(0, 2) = {2.0, 1.0};
  spec.T(1, 0) = {3.0, 0.0};
  spec.T(1, 1) = {1.0, 1.0};
  spec.T(2, 0) = {1.0, -1.0};
  spec.T(2, 2) = {1.0, 1.0};
  spec.activations = {ActivationSpec::georgiou(1.0, 1.0),
                      ActivationSpec::georgiou(1.0, 1.0),
                      ActivationSpec::georgiou(1.0, 1.0)};
  spec.inputs = ComplexVector::Zero(3);
  return spec;
}

/// Three-neuron ring with uniform bands: diagonal 1-2i, forward 1+i,
/// backward i, a = 1, Georgiou activations z/(1+|z|).  At the origin the
/// circulant reduction gives alpha = -2i, beta = 1+i, gamma = i with
/// lambda_0 = 1 (unstable at every order).
inline NetworkSpec ring_example() {
  NetworkSpec spec;
  spec.n = 3;
  spec.a = RealVector::Ones(3);
  spec.T = ComplexMatrix::Zero(3, 3);
  const Complex diag{1.0, -2.0};
  const Complex fwd{1.0, 1.0};
  const Complex bwd{0.0, 1.0};
  for (int j = 0; j < 3; ++j) {
    spec.T(j, j) = diag;
    spec.T(j, (j + 1) % 3) = fwd;
    spec.T(j, (j + 2) % 3) = bwd;
  }
  spec.activations = {ActivationSpec::georgiou(1.0, 1.0),
                      ActivationSpec::georgiou(1.0, 1.0),
                      ActivationSpec::georgiou(1.0, 1.0)};
  spec.inputs = ComplexVector::Zero(3);
  return spec;
}

inline Complex random_complex(std::mt19937_64& rng, double radius) {
  std::uniform_real_distribution<double> dist(-radius, radius);
  return {dist(rng), dist(rng)};
}

/// Dense random network with positive decay rates and zero inputs, so the
/// origin is an exact equilibrium.  use_linear mixes in linear activations
/// (complex-differentiable everywhere).
inline NetworkSpec random_network(std::mt19937_64& rng, int n,
                                  bool use_linear = false) {
  std::uniform_real_distribution<double> pos(0.5, 3.0);
  std::bernoulli_distribution coin(0.5);
  NetworkSpec spec;
  spec.n = n;
  spec.a.resize(n);
  for (int k = 0; k < n; ++k) spec.a[k] = pos(rng);
  spec.T.resize(n, n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) spec.T(r, c) = random_complex(rng, 2.0);
  }
  spec.activations.reserve(n);
  for (int k = 0; k < n; ++k) {
    if (use_linear && coin(rng)) {
      spec.activations.push_back(
          ActivationSpec::linear(random_complex(rng, 1.5)));
    } else {
      spec.activations.push_back(ActivationSpec::georgiou(pos(rng), pos(rng)));
    }
  }
  spec.inputs = ComplexVector::Zero(n);
  return spec;
}

/// Greedy nearest-neighbor multiset comparison; returns the largest match
/// distance (infinity when the sizes differ).
inline double multiset_distance(std::vector<Complex> a, std::vector<Complex> b) {
  if (a.size() != b.size()) {
    return std::numeric_limits<double>::infinity();
  }
  double worst = 0.0;
  for (const Complex& x : a) {
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < b.size(); ++j) {
      const double d = std::abs(x - b[j]);
      if (d < best_d) {
        best_d = d;
        best = j;
      }
    }
    worst = std::max(worst, best_d);
    b.erase(b.begin() + static_cast<std::ptrdiff_t>(best));
  }
  return worst;
}

/// |x - y| on the circle, in [0, pi].
inline double circular_distance(double x, double y) {
  double d = std::fmod(std::abs(x - y), 2.0 * kPi);
  if (d > kPi) d = 2.0 * kPi - d;
  return d;
}

}  // namespace cvfnn::testing
