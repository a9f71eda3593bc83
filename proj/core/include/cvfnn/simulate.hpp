#pragma once

#include <optional>

#include "cvfnn/network.hpp"

namespace cvfnn {

/// Integration parameters for the Caputo fractional initial value problem
/// D^q z = f(z), z(0) = z0, on the uniform grid t_k = k h.
///
/// memory_window: nullopt runs the full-memory predictor-corrector (O(N^2)
/// work).  A window L keeps only the most recent L history terms in both
/// convolution sums; L >= N reproduces the full-memory result bit for bit.
struct SimConfig {
  double q = 0.9;
  double h = 1e-2;
  double t_end = 1.0;
  std::optional<std::size_t> memory_window;
};

/// Trajectory on t_k = k h.  states[0] equals the initial condition
/// exactly.  diverged marks an overflow: the trajectory is truncated at
/// the last finite state.
struct Trajectory {
  std::vector<double> times;
  std::vector<ComplexVector> states;
  bool diverged = false;
};

/// Adams-Bashforth-Moulton predictor-corrector (one corrector pass) for
/// the network field in complex form.
[[nodiscard]] Trajectory abm_simulate(const NetworkSpec& spec,
                                      const ComplexVector& z0,
                                      const SimConfig& config);

/// The same scheme driven by the 2n-dimensional real-split field.  States
/// are repacked as complex vectors.  Agrees with abm_simulate up to
/// floating-point rounding in the field evaluation.
[[nodiscard]] Trajectory abm_simulate_split(const NetworkSpec& spec,
                                            const ComplexVector& z0,
                                            const SimConfig& config);

/// One-parameter Mittag-Leffler function E_q(x) = sum_m x^m / Gamma(qm+1),
/// summed until |term| < term_tol.  Trusted reference window: q in (0, 1],
/// x in [-5, 0]; outside it (or when the series fails to converge within
/// max_terms) the oracle refuses with DomainError rather than return a
/// degraded value.  The scalar test equation D^q z = lambda z has the
/// solution z(t) = z0 E_q(lambda t^q).
[[nodiscard]] double mittag_leffler(double q, double x,
                                    double term_tol = 1e-16,
                                    int max_terms = 600);

enum class TailClass { Decayed, SustainedOscillation, Diverged, Indeterminate };

[[nodiscard]] std::string to_string(TailClass t);

/// Inspects the trailing window (last window_fraction of the samples;
/// at least 10, else std::invalid_argument).  The amplitude curve is
/// s_t = max_k |z_k(t)|; the swing is the largest peak-to-peak excursion
/// among the 2n real coordinates (a phase-rotating orbit oscillates in the
/// coordinates while s_t stays flat):
///  - Diverged: the trajectory was truncated by overflow.
///  - Decayed: max s_t <= eps_decay over the window.
///  - SustainedOscillation: swing >= eps_osc and the drift of s_t
///    (difference of half-window means, doubled) stays within 10% of its
///    window mean (the oscillation neither grows nor dies).
///  - Indeterminate otherwise.
[[nodiscard]] TailClass classify_tail(const Trajectory& traj,
                                      double window_fraction = 0.2,
                                      double eps_decay = 1e-3,
                                      double eps_osc = 1e-3);

/// Distance of the trailing window from the equal-component unit-modulus
/// locus: max over the window of the largest pairwise component distance
/// (spread) and of ||mean_k z_k| - 1| (modulus defect).
struct RingAttractorReport {
  double max_spread = 0.0;
  double modulus_defect = 0.0;
};

[[nodiscard]] RingAttractorReport ring_attractor_check(
    const Trajectory& traj, double window_fraction = 0.2);

}  // namespace cvfnn
