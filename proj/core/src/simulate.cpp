#include "cvfnn/simulate.hpp"

#include <functional>
#include <limits>

namespace cvfnn {
namespace {

/// (m+1)^q - m^q without cancellation for large m.
double forward_power_diff(double m, double q) {
  if (m == 0.0) return 1.0;
  return std::pow(m, q) * std::expm1(q * std::log1p(1.0 / m));
}

/// (m+2)^{q+1} + m^{q+1} - 2 (m+1)^{q+1} without cancellation.
double second_power_diff(double m, double q) {
  const double e = q + 1.0;
  if (m == 0.0) return std::pow(2.0, e) - 2.0;
  const double mid = m + 1.0;
  const double t = 1.0 / mid;
  return std::pow(mid, e) * (std::expm1(e * std::log1p(t)) +
                             std::expm1(e * std::log1p(-t)));
}

void check_config(const NetworkSpec& spec, const ComplexVector& z0,
                  const SimConfig& config) {
  if (!(config.q > 0.0 && config.q <= 1.0)) {
    throw std::invalid_argument("order q must lie in (0, 1]");
  }
  if (!(config.h > 0.0) || !std::isfinite(config.h)) {
    throw std::invalid_argument("step h must be positive");
  }
  if (!(config.t_end >= config.h) || !std::isfinite(config.t_end)) {
    throw std::invalid_argument("t_end must be at least one step");
  }
  if (config.memory_window && *config.memory_window < 1) {
    throw std::invalid_argument("memory window must be >= 1");
  }
  if (z0.size() != spec.n) {
    throw std::invalid_argument("initial condition has wrong dimension");
  }
}

/// Shared predictor-corrector engine on the stacked real representation
/// u = (Re z; Im z).  The two public entry points differ only in how the
/// field is evaluated.
Trajectory abm_engine(const NetworkSpec& spec, const ComplexVector& z0,
                      const SimConfig& config,
                      const std::function<RealVector(const RealVector&)>& field) {
  const Eigen::Index dim = 2 * spec.n;
  const double q = config.q;
  const Eigen::Index num_steps = static_cast<Eigen::Index>(
      std::floor(config.t_end / config.h + 1e-9));
  const Eigen::Index window =
      config.memory_window
          ? static_cast<Eigen::Index>(std::min<std::size_t>(
                *config.memory_window, static_cast<std::size_t>(num_steps) + 1))
          : num_steps + 1;

  // Convolution weights stored with lag m at index num_steps - m, so the
  // lags [0, k - j0] used at step k form one contiguous segment.
  RealVector pred_w(num_steps + 1);
  RealVector corr_w(num_steps + 1);
  corr_w[0] = 0.0;
  for (Eigen::Index m = 0; m <= num_steps; ++m) {
    pred_w[num_steps - m] = forward_power_diff(static_cast<double>(m), q);
    if (m < num_steps) {
      corr_w[num_steps - m] = second_power_diff(static_cast<double>(m), q);
    }
  }

  const double hq = std::pow(config.h, q);
  const double pred_scale = hq / std::tgamma(q + 1.0);
  const double corr_scale = hq / std::tgamma(q + 2.0);

  RealMatrix states(dim, num_steps + 1);
  RealMatrix fields(dim, num_steps + 1);
  const RealVector u0 = pack_split(z0);
  states.col(0) = u0;
  fields.col(0) = field(u0);

  bool diverged = false;
  Eigen::Index last = 0;
  for (Eigen::Index k = 0; k < num_steps; ++k) {
    const Eigen::Index j0 = std::max<Eigen::Index>(0, k + 1 - window);
    const Eigen::Index len = k - j0 + 1;

    RealVector predicted =
        u0 + pred_scale * (fields.middleCols(j0, len) *
                           pred_w.segment(num_steps - (k - j0), len));
    RealVector sum = field(predicted);

    const Eigen::Index jc = std::max<Eigen::Index>(1, j0);
    const Eigen::Index clen = k - jc + 1;
    if (clen > 0) {
      sum += fields.middleCols(jc, clen) *
             corr_w.segment(num_steps - (k - jc), clen);
    }
    if (j0 == 0) {
      const double kd = static_cast<double>(k);
      const double head_w =
          q * std::pow(kd + 1.0, q) - kd * forward_power_diff(kd, q);
      sum += head_w * fields.col(0);
    }

    const RealVector next = u0 + corr_scale * sum;
    if (!next.allFinite()) {
      diverged = true;
      break;
    }
    states.col(k + 1) = next;
    fields.col(k + 1) = field(next);
    last = k + 1;
  }

  Trajectory traj;
  traj.diverged = diverged;
  traj.times.reserve(last + 1);
  traj.states.reserve(last + 1);
  for (Eigen::Index k = 0; k <= last; ++k) {
    traj.times.push_back(static_cast<double>(k) * config.h);
    traj.states.push_back(unpack_split(states.col(k)));
  }
  return traj;
}

}  // namespace

Trajectory abm_simulate(const NetworkSpec& spec, const ComplexVector& z0,
                        const SimConfig& config) {
  check_config(spec, z0, config);
  auto field = [&spec](const RealVector& u) {
    return pack_split(complex_field(spec, unpack_split(u)));
  };
  return abm_engine(spec, z0, config, field);
}

Trajectory abm_simulate_split(const NetworkSpec& spec, const ComplexVector& z0,
                              const SimConfig& config) {
  check_config(spec, z0, config);
  const RealSplitSystem split = real_split(spec);
  auto field = [&spec, &split](const RealVector& u) {
    return split_field(spec, split, u);
  };
  return abm_engine(spec, z0, config, field);
}

double mittag_leffler(double q, double x, double term_tol, int max_terms) {
  if (!(q > 0.0 && q <= 1.0)) {
    throw std::invalid_argument("order q must lie in (0, 1]");
  }
  if (!(term_tol > 0.0)) throw std::invalid_argument("term_tol must be positive");
  if (x > 0.0 || x < -5.0 || !std::isfinite(x)) {
    throw DomainError(
        "Mittag-Leffler oracle: x outside the trusted window [-5, 0]");
  }
  if (x == 0.0) return 1.0;

  const double log_ax = std::log(-x);
  double sum = 1.0;  // m = 0 term
  double comp = 0.0; // Kahan compensation
  for (int m = 1; m <= max_terms; ++m) {
    const double magnitude =
        std::exp(m * log_ax - std::lgamma(q * m + 1.0));
    const double term = (m % 2 == 0) ? magnitude : -magnitude;
    const double y = term - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    // log-terms are concave in m, so once below the cutoff they stay there
    if (magnitude < term_tol) return sum;
  }
  throw DomainError(
      "Mittag-Leffler oracle: series did not converge within the term budget");
}

std::string to_string(TailClass t) {
  switch (t) {
    case TailClass::Decayed: return "Decayed";
    case TailClass::SustainedOscillation: return "SustainedOscillation";
    case TailClass::Diverged: return "Diverged";
    case TailClass::Indeterminate: return "Indeterminate";
  }
  return "?";
}

TailClass classify_tail(const Trajectory& traj, double window_fraction,
                        double eps_decay, double eps_osc) {
  if (traj.diverged) return TailClass::Diverged;
  if (!(window_fraction > 0.0 && window_fraction <= 1.0)) {
    throw std::invalid_argument("window_fraction must lie in (0, 1]");
  }
  const std::size_t total = traj.states.size();
  const auto start = static_cast<std::size_t>(
      std::floor((1.0 - window_fraction) * static_cast<double>(total)));
  const std::size_t count = total - start;
  if (count < 10) {
    throw std::invalid_argument("tail window has fewer than 10 samples");
  }

  const Eigen::Index n = traj.states[start].size();
  const std::size_t mid = start + count / 2;
  double s_max = 0.0;
  double mean_s = 0.0, first_half = 0.0, second_half = 0.0;
  RealVector coord_min = RealVector::Constant(
      2 * n, std::numeric_limits<double>::infinity());
  RealVector coord_max = RealVector::Constant(
      2 * n, -std::numeric_limits<double>::infinity());
  for (std::size_t k = start; k < total; ++k) {
    const double s = traj.states[k].cwiseAbs().maxCoeff();
    s_max = std::max(s_max, s);
    mean_s += s;
    (k < mid ? first_half : second_half) += s;
    const RealVector u = pack_split(traj.states[k]);
    coord_min = coord_min.cwiseMin(u);
    coord_max = coord_max.cwiseMax(u);
  }
  mean_s /= static_cast<double>(count);
  first_half /= static_cast<double>(mid - start);
  second_half /= static_cast<double>(total - mid);

  if (s_max <= eps_decay) return TailClass::Decayed;

  // A phase-rotating attractor keeps |z| nearly constant while the real
  // coordinates swing, so the swing is measured coordinatewise.  The trend
  // compares half-window means of the amplitude curve: a raw least-squares
  // slope would pick up the oscillation itself, half-means average it out.
  const double swing = (coord_max - coord_min).maxCoeff();
  const double drift = 2.0 * (second_half - first_half);
  const bool trend_flat = std::abs(drift) <= 0.1 * mean_s;
  if (swing >= eps_osc && trend_flat) {
    return TailClass::SustainedOscillation;
  }
  return TailClass::Indeterminate;
}

RingAttractorReport ring_attractor_check(const Trajectory& traj,
                                         double window_fraction) {
  if (!(window_fraction > 0.0 && window_fraction <= 1.0)) {
    throw std::invalid_argument("window_fraction must lie in (0, 1]");
  }
  const std::size_t total = traj.states.size();
  if (total == 0) throw std::invalid_argument("empty trajectory");
  std::size_t start = static_cast<std::size_t>(
      std::floor((1.0 - window_fraction) * static_cast<double>(total)));
  if (start >= total) start = total - 1;

  RingAttractorReport report;
  for (std::size_t k = start; k < total; ++k) {
    const ComplexVector& z = traj.states[k];
    const Eigen::Index n = z.size();
    double spread = 0.0;
    Complex mean{0.0, 0.0};
    for (Eigen::Index i = 0; i < n; ++i) {
      mean += z[i];
      for (Eigen::Index j = i + 1; j < n; ++j) {
        spread = std::max(spread, std::abs(z[i] - z[j]));
      }
    }
    mean /= static_cast<double>(n);
    report.max_spread = std::max(report.max_spread, spread);
    report.modulus_defect =
        std::max(report.modulus_defect, std::abs(std::abs(mean) - 1.0));
  }
  return report;
}

}  // namespace cvfnn
