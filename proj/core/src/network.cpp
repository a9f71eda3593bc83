#include "cvfnn/network.hpp"

#include <sstream>

namespace cvfnn {
namespace {

bool is_finite(const Complex& z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

bool hub_pattern(const ComplexMatrix& T) {
  const Eigen::Index n = T.rows();
  for (Eigen::Index j = 1; j < n; ++j) {
    for (Eigen::Index k = 1; k < n; ++k) {
      if (j != k && T(j, k) != Complex{0.0, 0.0}) return false;
    }
  }
  return true;
}

bool ring_pattern(const ComplexMatrix& T) {
  const Eigen::Index n = T.rows();
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = 0; k < n; ++k) {
      const bool allowed =
          k == j || k == (j + 1) % n || k == (j + n - 1) % n;
      if (!allowed && T(j, k) != Complex{0.0, 0.0}) return false;
    }
  }
  return true;
}

}  // namespace

std::vector<std::string> validate_network(const NetworkSpec& spec) {
  std::vector<std::string> violations;
  auto add = [&violations](const std::string& msg) { violations.push_back(msg); };

  if (spec.n < 1) {
    add("n must be >= 1 (got " + std::to_string(spec.n) + ")");
    return violations;
  }
  const Eigen::Index n = spec.n;

  if (spec.a.size() != n) {
    add("a has " + std::to_string(spec.a.size()) + " entries, expected " +
        std::to_string(n));
  }
  if (spec.T.rows() != n || spec.T.cols() != n) {
    std::ostringstream os;
    os << "T has shape " << spec.T.rows() << "x" << spec.T.cols()
       << ", expected " << n << "x" << n;
    add(os.str());
  }
  if (spec.inputs.size() != n) {
    add("I has " + std::to_string(spec.inputs.size()) + " entries, expected " +
        std::to_string(n));
  }
  if (static_cast<Eigen::Index>(spec.activations.size()) != n) {
    add("activations has " + std::to_string(spec.activations.size()) +
        " entries, expected " + std::to_string(n));
  }

  for (Eigen::Index k = 0; k < spec.a.size(); ++k) {
    if (!std::isfinite(spec.a[k])) {
      add("a[" + std::to_string(k) + "] is not finite");
    } else if (spec.a[k] <= 0.0) {
      add("a[" + std::to_string(k) + "] must be positive (got " +
          std::to_string(spec.a[k]) + ")");
    }
  }
  for (Eigen::Index j = 0; j < spec.T.rows(); ++j) {
    for (Eigen::Index k = 0; k < spec.T.cols(); ++k) {
      if (!is_finite(spec.T(j, k))) {
        add("T[" + std::to_string(j) + "][" + std::to_string(k) +
            "] is not finite");
      }
    }
  }
  for (Eigen::Index k = 0; k < spec.inputs.size(); ++k) {
    if (!is_finite(spec.inputs[k])) {
      add("I[" + std::to_string(k) + "] is not finite");
    }
  }
  for (std::size_t k = 0; k < spec.activations.size(); ++k) {
    const ActivationSpec& act = spec.activations[k];
    if (act.kind == ActivationKind::Georgiou) {
      if (!(act.c1 > 0.0) || !std::isfinite(act.c1)) {
        add("activation[" + std::to_string(k) + "]: c1 must be positive");
      }
      if (!(act.c2 > 0.0) || !std::isfinite(act.c2)) {
        add("activation[" + std::to_string(k) + "]: c2 must be positive");
      }
    } else if (!is_finite(act.gain)) {
      add("activation[" + std::to_string(k) + "]: gain is not finite");
    }
  }
  return violations;
}

TopologyTag classify_topology(const NetworkSpec& spec) {
  if (spec.n >= 2 && hub_pattern(spec.T)) return TopologyTag::Hub;
  if (spec.n >= 3 && ring_pattern(spec.T)) return TopologyTag::Ring;
  return TopologyTag::General;
}

bool has_ring_pattern(const NetworkSpec& spec) {
  return spec.n >= 3 && spec.T.rows() == spec.n && spec.T.cols() == spec.n &&
         ring_pattern(spec.T);
}

RealSplitSystem real_split(const NetworkSpec& spec) {
  const Eigen::Index n = spec.n;
  RealSplitSystem s;
  s.A_tilde = RealMatrix::Zero(2 * n, 2 * n);
  s.A_tilde.diagonal().head(n) = spec.a;
  s.A_tilde.diagonal().tail(n) = spec.a;
  s.T_tilde.resize(2 * n, 2 * n);
  s.T_tilde.topLeftCorner(n, n) = spec.T.real();
  s.T_tilde.topRightCorner(n, n) = -spec.T.imag();
  s.T_tilde.bottomLeftCorner(n, n) = spec.T.imag();
  s.T_tilde.bottomRightCorner(n, n) = spec.T.real();
  s.I_tilde.resize(2 * n);
  s.I_tilde.head(n) = spec.inputs.real();
  s.I_tilde.tail(n) = spec.inputs.imag();
  return s;
}

ComplexVector complex_field(const NetworkSpec& spec, const ComplexVector& z) {
  const Eigen::Index n = spec.n;
  ComplexVector g(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    g[k] = act_eval(spec.activations[k], z[k]);
  }
  ComplexVector f = spec.T * g + spec.inputs;
  f.array() -= spec.a.cast<Complex>().array() * z.array();
  return f;
}

RealVector split_field(const NetworkSpec& spec, const RealSplitSystem& split,
                       const RealVector& u) {
  const Eigen::Index n = spec.n;
  RealVector g(2 * n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const Complex gk = act_eval(spec.activations[k], Complex{u[k], u[n + k]});
    g[k] = gk.real();
    g[n + k] = gk.imag();
  }
  RealVector f = split.T_tilde * g + split.I_tilde;
  f -= split.A_tilde.diagonal().cwiseProduct(u);
  return f;
}

RealVector pack_split(const ComplexVector& z) {
  const Eigen::Index n = z.size();
  RealVector u(2 * n);
  u.head(n) = z.real();
  u.tail(n) = z.imag();
  return u;
}

ComplexVector unpack_split(const RealVector& u) {
  const Eigen::Index n = u.size() / 2;
  ComplexVector z(n);
  z.real() = u.head(n);
  z.imag() = u.tail(n);
  return z;
}

}  // namespace cvfnn
