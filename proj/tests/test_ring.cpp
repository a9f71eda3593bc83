#include <catch2/catch_amalgamated.hpp>

#include "cvfnn/equilibrium.hpp"
#include "cvfnn/ring.hpp"
#include "helpers.hpp"

using namespace cvfnn;

namespace {

EquilibriumState origin_state(const NetworkSpec& spec) {
  return make_equilibrium(spec, ComplexVector::Zero(spec.n), true);
}

ComplexMatrix dense_circulant(const RingCoefficients& c) {
  ComplexMatrix m = ComplexMatrix::Zero(c.n, c.n);
  for (int j = 0; j < c.n; ++j) {
    m(j, j) = c.alpha;
    m(j, (j + 1) % c.n) = c.beta;
    m(j, (j + c.n - 1) % c.n) = c.gamma;
  }
  return m;
}

}  // namespace

TEST_CASE("ring coefficients of the worked example are exact") {
  const NetworkSpec spec = testing::ring_example();
  const RingCoefficients c = ring_coefficients(spec, origin_state(spec));
  CHECK(c.n == 3);
  CHECK(c.alpha == Complex{0.0, -2.0});
  CHECK(c.beta == Complex{1.0, 1.0});
  CHECK(c.gamma == Complex{0.0, 1.0});
}

TEST_CASE("decoupled linear ring reduces to pure diagonal coefficients") {
  // Identical linear neurons, gain w, no neighbor coupling: the reduction
  // must produce (-a0 + T0*w, 0, 0) at any point, not only the origin.
  const Complex gain{0.5, -0.25};
  const Complex diag{2.0, 1.0};
  NetworkSpec spec;
  spec.n = 4;
  spec.a = RealVector::Constant(4, 1.5);
  spec.T = ComplexMatrix::Zero(4, 4);
  for (int j = 0; j < 4; ++j) {
    spec.T(j, j) = diag;
    spec.T(j, (j + 1) % 4) = Complex{0.0, 0.0};
    spec.T(j, (j + 3) % 4) = Complex{0.0, 0.0};
  }
  spec.activations.assign(4, ActivationSpec::linear(gain));
  spec.inputs = ComplexVector::Zero(4);

  ComplexVector z = ComplexVector::Constant(4, Complex{0.3, -0.7});
  const RingCoefficients c =
      ring_coefficients(spec, make_equilibrium(spec, z, true));
  CHECK(std::abs(c.alpha - (-1.5 + diag * gain)) == 0.0);
  CHECK(c.beta == Complex{0.0, 0.0});
  CHECK(c.gamma == Complex{0.0, 0.0});
}

TEST_CASE("ring coefficients reject non-uniform bands") {
  NetworkSpec spec = testing::ring_example();
  spec.T(1, 2) += Complex{1e-6, 0.0};
  REQUIRE(classify_topology(spec) == TopologyTag::Ring);
  CHECK_THROWS_AS(ring_coefficients(spec, origin_state(spec)), DomainError);
  CHECK_THROWS_WITH(ring_coefficients(spec, origin_state(spec)),
                    Catch::Matchers::ContainsSubstring("non-uniform"));
}

TEST_CASE("ring coefficients reject unbanded matrices") {
  std::mt19937_64 rng(0xd37e);
  const NetworkSpec spec = testing::random_network(rng, 4, true);
  CHECK_THROWS_AS(ring_coefficients(spec, origin_state(spec)),
                  std::invalid_argument);
}

TEST_CASE("a three-neuron hub is ring-banded but not uniform") {
  // At n = 3 every matrix fits within the cyclic bands, so the reduction
  // is attempted and fails on uniformity instead.
  const NetworkSpec spec = testing::hub_example();
  CHECK_THROWS_AS(ring_coefficients(spec, origin_state(spec)), DomainError);
}

TEST_CASE("ring coefficients need a complex derivative at the point") {
  const NetworkSpec spec = testing::ring_example();
  ComplexVector z = ComplexVector::Constant(3, Complex{0.4, 0.1});
  CHECK_THROWS_AS(ring_coefficients(spec, make_equilibrium(spec, z, true)),
                  DomainError);
  CHECK_THROWS_WITH(ring_coefficients(spec, make_equilibrium(spec, z, true)),
                    Catch::Matchers::ContainsSubstring("complex derivative"));
}

TEST_CASE("circulant eigenvalues of the worked example") {
  const NetworkSpec spec = testing::ring_example();
  const RingCoefficients c = ring_coefficients(spec, origin_state(spec));
  const std::vector<Complex> eigs = circulant_eigenvalues(c);
  REQUIRE(eigs.size() == 3);
  // lambda_0 = alpha + beta + gamma = 1, exact in double arithmetic.
  CHECK(std::abs(eigs[0] - Complex{1.0, 0.0}) <= 1e-15);
  CHECK(std::abs(eigs[1] - Complex{-0.5, -2.1339745962155614}) <= 1e-14);
  CHECK(std::abs(eigs[2] - Complex{-0.5, -3.8660254037844386}) <= 1e-14);
}

TEST_CASE("diagonal circulant has a constant spectrum") {
  RingCoefficients c;
  c.alpha = Complex{-0.7, 0.3};
  c.beta = Complex{0.0, 0.0};
  c.gamma = Complex{0.0, 0.0};
  c.n = 6;
  for (const Complex& lambda : circulant_eigenvalues(c)) {
    CHECK(lambda == c.alpha);
  }
}

TEST_CASE("circulant eigenvalues need n >= 3") {
  RingCoefficients c;
  c.alpha = Complex{1.0, 0.0};
  c.n = 2;
  CHECK_THROWS_AS(circulant_eigenvalues(c), std::invalid_argument);
}

TEST_CASE("circulant formula matches the dense eigensolver") {
  std::mt19937_64 rng(0x5eed);
  std::uniform_int_distribution<int> size(3, 50);
  for (int trial = 0; trial < 1000; ++trial) {
    RingCoefficients c;
    c.alpha = testing::random_complex(rng, 2.0);
    c.beta = testing::random_complex(rng, 2.0);
    c.gamma = testing::random_complex(rng, 2.0);
    c.n = size(rng);
    const std::vector<Complex> closed = circulant_eigenvalues(c);
    const std::vector<Complex> dense = eig_complex(dense_circulant(c));
    REQUIRE(testing::multiset_distance(closed, dense) <= 1e-10);
  }
}

TEST_CASE("sufficient stability condition on pinned examples") {
  SECTION("antipodal unit weights cancel") {
    RingCoefficients c;
    c.alpha = Complex{-1.0, 0.0};
    const double theta1 = 0.8;
    const double theta2 = kPi - theta1;
    c.beta = std::polar(1.0, theta1);
    c.gamma = std::polar(1.0, theta2);
    c.n = 5;
    CHECK(ring_sufficient_stable(c));
  }
  SECTION("worked example fails the test") {
    const NetworkSpec spec = testing::ring_example();
    CHECK_FALSE(
        ring_sufficient_stable(ring_coefficients(spec, origin_state(spec))));
  }
  SECTION("pure decay passes") {
    RingCoefficients c;
    c.alpha = Complex{-1.0, 0.0};
    c.beta = Complex{0.0, 0.0};
    c.gamma = Complex{0.0, 0.0};
    c.n = 3;
    CHECK(ring_sufficient_stable(c));
  }
}

TEST_CASE("sufficient condition is sound") {
  // Re(lambda_p) <= Re(alpha) + |beta + conj(gamma)| for every p, so a
  // negative bound forces the whole spectrum into the left half-plane.
  std::mt19937_64 rng(0x0416);
  std::uniform_int_distribution<int> size(3, 12);
  int accepted = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    RingCoefficients c;
    c.alpha = testing::random_complex(rng, 2.0) - Complex{1.0, 0.0};
    c.beta = testing::random_complex(rng, 1.0);
    c.gamma = testing::random_complex(rng, 1.0);
    c.n = size(rng);
    const double bound =
        c.alpha.real() + std::abs(c.beta + std::conj(c.gamma));
    for (const Complex& lambda : circulant_eigenvalues(c)) {
      REQUIRE(lambda.real() <= bound + 1e-12);
      if (ring_sufficient_stable(c)) REQUIRE(lambda.real() < 0.0);
    }
    if (ring_sufficient_stable(c)) ++accepted;
  }
  CHECK(accepted > 100);
}

TEST_CASE("ring critical order on pinned examples") {
  SECTION("worked example is unstable at every order") {
    const NetworkSpec spec = testing::ring_example();
    const RingCoefficients c = ring_coefficients(spec, origin_state(spec));
    CHECK(ring_critical_order(c) <= 1e-15);
  }
  SECTION("pure decay is stable at every order") {
    RingCoefficients c;
    c.alpha = Complex{-1.0, 0.0};
    c.beta = Complex{0.0, 0.0};
    c.gamma = Complex{0.0, 0.0};
    c.n = 4;
    CHECK(ring_critical_order(c) == Catch::Approx(2.0).margin(1e-14));
  }
  SECTION("parametric theta1 = theta2 = pi/2, n = 4") {
    RingCoefficients c;
    c.alpha = Complex{-1.0, 0.0};
    c.beta = std::polar(1.0, kPi / 2.0);
    c.gamma = std::polar(1.0, kPi / 2.0);
    c.n = 4;
    // Spectrum {-1+2i, -1, -1-2i, -1}; the binding argument is pi - atan(2).
    CHECK(ring_critical_order(c) ==
          Catch::Approx(1.2951672353008665).margin(1e-12));
  }
  SECTION("zero eigenvalue is degenerate") {
    RingCoefficients c;
    c.alpha = Complex{-2.0, 0.0};
    c.beta = Complex{1.0, 0.0};
    c.gamma = Complex{1.0, 0.0};
    c.n = 3;
    CHECK_THROWS_AS(ring_critical_order(c), DomainError);
  }
}

TEST_CASE("parametric spectrum matches the circulant formula") {
  std::mt19937_64 rng(0xfeed);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  std::uniform_int_distribution<int> size(3, 50);
  for (int trial = 0; trial < 1000; ++trial) {
    const double theta1 = angle(rng);
    const double theta2 = angle(rng);
    const int n = size(rng);
    RingCoefficients c;
    c.alpha = Complex{-1.0, 0.0};
    c.beta = std::polar(1.0, theta1);
    c.gamma = std::polar(1.0, theta2);
    c.n = n;
    const std::vector<Complex> para = parametric_eigs(theta1, theta2, n);
    const std::vector<Complex> circ = circulant_eigenvalues(c);
    REQUIRE(para.size() == circ.size());
    for (int p = 0; p < n; ++p) {
      REQUIRE(std::abs(para[p] - circ[p]) <= 1e-12);
    }
  }
}

TEST_CASE("parametric spectrum is real on the anti-diagonal") {
  const int n = 64;
  const double theta1 = 1.1;
  const std::vector<Complex> eigs = parametric_eigs(theta1, -theta1, n);
  for (int p = 0; p < n; ++p) {
    CHECK(std::abs(eigs[p].imag()) <= 1e-14);
    CHECK(eigs[p].real() ==
          Catch::Approx(-1.0 + 2.0 * std::cos(theta1 + 2.0 * kPi * p / n))
              .margin(1e-13));
  }
}

TEST_CASE("parametric spectrum at theta1 = theta2 = pi") {
  const std::vector<Complex> eigs = parametric_eigs(kPi, kPi, 3);
  for (int p = 0; p < 3; ++p) {
    const double expected = -1.0 - 2.0 * std::cos(2.0 * kPi * p / 3.0);
    CHECK(std::abs(eigs[p] - Complex{expected, 0.0}) <= 1e-13);
  }
}

TEST_CASE("parametric formula collapses at p = 0") {
  std::mt19937_64 rng(0x9a11);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  for (int trial = 0; trial < 200; ++trial) {
    const double theta1 = angle(rng);
    const double theta2 = angle(rng);
    const Complex direct =
        -1.0 + std::polar(1.0, theta1) + std::polar(1.0, theta2);
    CHECK(std::abs(parametric_eigs(theta1, theta2, 7)[0] - direct) <= 1e-15);
  }
}

TEST_CASE("density scan validates its arguments") {
  CHECK_THROWS_AS(density_scan(2, 32), std::invalid_argument);
  CHECK_THROWS_AS(density_scan(5, 15), std::invalid_argument);
  CHECK_THROWS_AS(density_scan(5, 32, 0), std::invalid_argument);
}

TEST_CASE("density scan grid geometry") {
  const DensityGrid grid = density_scan(5, 16);
  CHECK(grid.n_neurons == 5);
  CHECK(grid.resolution == 16);
  CHECK(grid.q_star.size() == 256);
  CHECK(grid.stable_all_q.size() == 256);
  CHECK(grid.theta1_at(0) == Catch::Approx(-kPi + kPi / 16.0).margin(1e-15));
  CHECK(grid.theta1_at(15) == Catch::Approx(kPi - kPi / 16.0).margin(1e-15));
  // Cell values reproduce the per-cell closed form.
  RingCoefficients c;
  c.alpha = Complex{-1.0, 0.0};
  c.n = 5;
  for (int i : {0, 3, 9, 15}) {
    for (int j : {1, 7, 12}) {
      c.beta = std::polar(1.0, grid.theta1_at(i));
      c.gamma = std::polar(1.0, grid.theta2_at(j));
      CHECK(grid.q_star[grid.index(i, j)] ==
            Catch::Approx(ring_critical_order(c)).margin(1e-14));
    }
  }
}

TEST_CASE("density scan flags the always-stable band at n = 5") {
  const DensityGrid grid = density_scan(5, 64);
  int flagged = 0;
  for (int i = 0; i < 64; ++i) {
    for (int j = 0; j < 64; ++j) {
      const double s = std::abs(grid.theta1_at(i) + grid.theta2_at(j));
      if (s > 2.0 * kPi / 3.0 && s < 4.0 * kPi / 3.0) {
        REQUIRE(grid.stable_all_q[grid.index(i, j)] == 1);
        REQUIRE(grid.q_star[grid.index(i, j)] >= 1.0);
        ++flagged;
      }
    }
  }
  CHECK(flagged > 500);
}

TEST_CASE("density scan anti-diagonal is unstable at n = 100") {
  const DensityGrid grid = density_scan(100, 64);
  int hit = 0;
  for (int i = 0; i < 64; ++i) {
    const int j = 63 - i;
    REQUIRE(std::abs(grid.theta1_at(i) + grid.theta2_at(j)) <= 1e-9);
    // Some lambda_p lies on the positive real axis up to rounding.
    REQUIRE(grid.q_star[grid.index(i, j)] <= 1e-12);
    CHECK(grid.stable_all_q[grid.index(i, j)] == 0);
    ++hit;
  }
  CHECK(hit == 64);
}

TEST_CASE("denser rings narrow the stability region") {
  // The n = 5 eigenvalue set is a subset of the n = 100 set at every cell
  // (5 divides 100), so q_star can only shrink.
  const DensityGrid g5 = density_scan(5, 32);
  const DensityGrid g100 = density_scan(100, 32);
  for (std::size_t idx = 0; idx < g5.q_star.size(); ++idx) {
    REQUIRE(g100.q_star[idx] <= g5.q_star[idx] + 1e-12);
    if (g100.stable_all_q[idx] == 1) {
      REQUIRE(g5.stable_all_q[idx] == 1);
    }
  }
}

TEST_CASE("density scan output is independent of the thread count") {
  const DensityGrid base = density_scan(7, 32, 1);
  for (int threads : {2, 3, 8}) {
    const DensityGrid grid = density_scan(7, 32, threads);
    REQUIRE(grid.q_star == base.q_star);
    REQUIRE(grid.stable_all_q == base.stable_all_q);
  }
}

TEST_CASE("stability verdict flips exactly at the scanned critical order") {
  // Matignon verdict at order q is stable iff q < q_star, strictly.
  const DensityGrid grid = density_scan(5, 16);
  for (int i : {2, 6, 11}) {
    for (int j : {4, 9, 14}) {
      const double qs = grid.q_star[grid.index(i, j)];
      if (qs <= 1e-12) continue;
      const std::vector<Complex> eigs =
          parametric_eigs(grid.theta1_at(i), grid.theta2_at(j), 5);
      const double below = std::min(1.0 - 1e-9, qs * (1.0 - 1e-9));
      CHECK(matignon_report(eigs, below).verdict == StabilityVerdict::Stable);
      if (qs < 1.0) {
        CHECK(matignon_report(eigs, qs * (1.0 + 1e-9)).verdict !=
              StabilityVerdict::Stable);
      }
    }
  }
}
