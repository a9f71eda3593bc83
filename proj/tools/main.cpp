#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "cvfnn/equilibrium.hpp"
#include "cvfnn/hub.hpp"
#include "cvfnn/ring.hpp"
#include "cvfnn/serialization.hpp"
#include "cvfnn/simulate.hpp"
#include "cvfnn/spectral.hpp"

using json = nlohmann::json;
using namespace cvfnn;

namespace {

// ---------------------------------------------------------------------------
// Small helpers

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw ConfigError("cannot open output path: " + tmp.string());
    }
    out << content;
    out.flush();
    if (!out) {
      throw ConfigError("failed while writing: " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw ConfigError("cannot move output into place at " + path + ": " +
                      ec.message());
  }
}

void emit(const std::string& out_path, const json& doc) {
  const std::string text = doc.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    write_atomic(out_path, text);
  }
}

json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
}

NetworkSpec parse_network(const json& cfg) {
  const NetworkSpec spec =
      network_from_json(require_field(cfg, "network", "config"));
  const std::vector<std::string> violations = validate_network(spec);
  if (!violations.empty()) {
    std::string msg = "invalid network:";
    for (const std::string& v : violations) msg += "\n  - " + v;
    throw ConfigError(msg);
  }
  return spec;
}

ComplexVector parse_complex_vector(const json& j, Eigen::Index n,
                                   const std::string& context) {
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != n) {
    throw ConfigError(context + ": expected an array of " + std::to_string(n) +
                      " [re, im] pairs");
  }
  ComplexVector z(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    z[k] = complex_from_json(j[static_cast<std::size_t>(k)],
                             context + "[" + std::to_string(k) + "]");
  }
  return z;
}

json complex_vector_to_json(const ComplexVector& z) {
  json arr = json::array();
  for (Eigen::Index k = 0; k < z.size(); ++k) {
    arr.push_back(complex_to_json(z[k]));
  }
  return arr;
}

const char* topology_name(TopologyTag tag) {
  switch (tag) {
    case TopologyTag::Hub: return "hub";
    case TopologyTag::Ring: return "ring";
    case TopologyTag::General: return "general";
  }
  return "?";
}

double get_number(const json& section, const char* key, double fallback,
                  const std::string& ctx) {
  if (!section.contains(key)) return fallback;
  return require_number(section.at(key), ctx + "." + key);
}

int get_int(const json& section, const char* key, int fallback,
            const std::string& ctx) {
  if (!section.contains(key)) return fallback;
  return require_int(section.at(key), ctx + "." + key);
}

Complex random_in_square(std::mt19937_64& rng, double radius) {
  std::uniform_real_distribution<double> dist(-radius, radius);
  const double re = dist(rng);
  const double im = dist(rng);
  return {re, im};
}

// ---------------------------------------------------------------------------
// analyze

json hub_section(const HubReport& report) {
  json h;
  h["alpha"] = complex_to_json(report.coeffs.alpha);
  h["beta"] = complex_to_json(report.coeffs.beta);
  h["gamma"] = complex_to_json(report.coeffs.gamma);
  h["n"] = report.coeffs.n;
  h["rho1"] = report.roots.rho1;
  h["theta1"] = report.roots.theta1;
  h["rho2"] = report.roots.rho2;
  h["theta2"] = report.roots.theta2;
  h["angle_a"] = report.roots.angle_a;
  h["angle_b"] = report.roots.angle_b;
  h["branch"] = to_string(report.roots.branch);
  h["phi"] = json::array({report.roots.phi1, report.roots.phi2});
  h["q_double_star"] = report.q_double_star;
  h["q_star"] = report.q_star;
  return h;
}

int run_analyze(const std::string& config_path, const std::string& out_path) {
  const json cfg = load_config(config_path);
  require_known_keys(cfg, {"network", "analyze"}, "config");
  const NetworkSpec spec = parse_network(cfg);
  const json& section = require_field(cfg, "analyze", "config");
  require_known_keys(section,
                     {"q", "guess", "topology", "tol", "max_iter"},
                     "analyze");

  const double q = require_number(require_field(section, "q", "analyze"),
                                  "analyze.q");
  if (!(q > 0.0 && q < 1.0)) {
    throw ConfigError("analyze.q: must lie in (0, 1)");
  }
  const double tol = get_number(section, "tol", 1e-12, "analyze");
  const int max_iter = get_int(section, "max_iter", 100, "analyze");
  std::string topology = "auto";
  if (section.contains("topology")) {
    const json& t = section.at("topology");
    if (!t.is_string()) throw ConfigError("analyze.topology: expected a string");
    topology = t.get<std::string>();
    if (topology != "auto" && topology != "hub" && topology != "ring" &&
        topology != "general") {
      throw ConfigError("analyze.topology: expected auto, hub, ring or general");
    }
  }

  ComplexVector guess = ComplexVector::Zero(spec.n);
  if (section.contains("guess")) {
    guess = parse_complex_vector(section.at("guess"), spec.n, "analyze.guess");
  }

  const EquilibriumState eq = find_equilibrium(spec, guess, tol, max_iter);
  if (!eq.converged) {
    throw DomainError("equilibrium search did not converge (residual " +
                      std::to_string(eq.residual_norm) +
                      "); analysis requires an equilibrium");
  }

  json doc;
  doc["network"]["n"] = spec.n;
  const TopologyTag tag = classify_topology(spec);
  doc["network"]["topology"] = topology_name(tag);
  doc["equilibrium"]["z"] = complex_vector_to_json(eq.z);
  doc["equilibrium"]["residual"] = eq.residual_norm;
  json notes = json::array();

  const std::vector<Complex> eigs = eig_complex(jacobian_m(spec, eq));
  const SpectrumReport spectrum = matignon_report(eigs, q);
  json s;
  s["eigenvalues"] = json::array();
  for (const Complex& lambda : spectrum.eigenvalues) {
    s["eigenvalues"].push_back(complex_to_json(lambda));
  }
  s["args"] = spectrum.args;
  s["margins"] = spectrum.margins;
  s["q"] = spectrum.q;
  s["q_star"] = spectrum.q_star;
  s["stable_all_q"] = spectrum.stable_all_q;
  s["degenerate"] = spectrum.degenerate;
  s["verdict"] = to_string(spectrum.verdict);
  s["stable_for"] = to_string(spectrum.stable_for);
  s["hopf_candidate"] = !spectrum.degenerate && spectrum.q_star > 0.0 &&
                        spectrum.q_star < 1.0;
  doc["spectrum"] = s;

  const bool want_hub = topology == "hub" || (topology == "auto" && tag == TopologyTag::Hub);
  const bool want_ring =
      topology == "ring" || (topology == "auto" && tag == TopologyTag::Ring);
  const bool forced = topology != "auto";

  if (want_hub) {
    try {
      const HubReport report = hub_report(hub_coefficients(spec, eq));
      doc["hub"] = hub_section(report);
    } catch (const std::invalid_argument& e) {
      if (forced) {
        throw DomainError(std::string("hub analysis inapplicable: ") + e.what());
      }
      notes.push_back(std::string("hub reduction skipped: ") + e.what());
    } catch (const DomainError& e) {
      if (forced) throw;
      notes.push_back(std::string("hub reduction skipped: ") + e.what());
    }
  }
  if (want_ring) {
    try {
      const RingCoefficients coeffs = ring_coefficients(spec, eq);
      json r;
      r["alpha"] = complex_to_json(coeffs.alpha);
      r["beta"] = complex_to_json(coeffs.beta);
      r["gamma"] = complex_to_json(coeffs.gamma);
      r["n"] = coeffs.n;
      r["eigenvalues"] = json::array();
      for (const Complex& lambda : circulant_eigenvalues(coeffs)) {
        r["eigenvalues"].push_back(complex_to_json(lambda));
      }
      r["sufficient_stable"] = ring_sufficient_stable(coeffs);
      try {
        r["q_star"] = ring_critical_order(coeffs);
      } catch (const DomainError& e) {
        r["q_star"] = nullptr;
        notes.push_back(std::string("ring critical order undefined: ") +
                        e.what());
      }
      doc["ring"] = r;
    } catch (const std::invalid_argument& e) {
      if (forced) {
        throw DomainError(std::string("ring analysis inapplicable: ") + e.what());
      }
      notes.push_back(std::string("ring reduction skipped: ") + e.what());
    } catch (const DomainError& e) {
      if (forced) throw;
      notes.push_back(std::string("ring reduction skipped: ") + e.what());
    }
  }

  doc["notes"] = notes;
  emit(out_path, doc);
  return spectrum.degenerate ? 1 : 0;
}

// ---------------------------------------------------------------------------
// simulate

int run_simulate(const std::string& config_path, const std::string& out_path,
                 std::uint64_t seed) {
  const json cfg = load_config(config_path);
  require_known_keys(cfg, {"network", "simulate"}, "config");
  const NetworkSpec spec = parse_network(cfg);
  const json& section = require_field(cfg, "simulate", "config");
  require_known_keys(section,
                     {"q", "h", "t_end", "z0", "perturbation", "memory_window",
                      "classify"},
                     "simulate");

  SimConfig sim;
  sim.q = require_number(require_field(section, "q", "simulate"), "simulate.q");
  sim.h = require_number(require_field(section, "h", "simulate"), "simulate.h");
  sim.t_end = require_number(require_field(section, "t_end", "simulate"),
                             "simulate.t_end");
  if (section.contains("memory_window")) {
    const int w = require_int(section.at("memory_window"),
                              "simulate.memory_window");
    if (w < 1) throw ConfigError("simulate.memory_window: must be >= 1");
    sim.memory_window = static_cast<std::size_t>(w);
  }

  const bool has_z0 = section.contains("z0");
  const bool has_pert = section.contains("perturbation");
  if (has_z0 == has_pert) {
    throw ConfigError(
        "simulate: exactly one of \"z0\" and \"perturbation\" is required");
  }
  ComplexVector z0 = ComplexVector::Zero(spec.n);
  bool used_seed = false;
  if (has_z0) {
    z0 = parse_complex_vector(section.at("z0"), spec.n, "simulate.z0");
  } else {
    const json& pert = section.at("perturbation");
    require_known_keys(pert, {"scale", "center"}, "simulate.perturbation");
    const double scale = require_number(
        require_field(pert, "scale", "simulate.perturbation"),
        "simulate.perturbation.scale");
    if (pert.contains("center")) {
      z0 = parse_complex_vector(pert.at("center"), spec.n,
                                "simulate.perturbation.center");
    }
    std::mt19937_64 rng(seed);
    for (Eigen::Index k = 0; k < spec.n; ++k) {
      z0[k] += random_in_square(rng, scale);
    }
    used_seed = true;
  }

  double window_fraction = 0.2, eps_decay = 1e-3, eps_osc = 1e-3;
  if (section.contains("classify")) {
    const json& c = section.at("classify");
    require_known_keys(c, {"window_fraction", "eps_decay", "eps_osc"},
                       "simulate.classify");
    window_fraction =
        get_number(c, "window_fraction", window_fraction, "simulate.classify");
    eps_decay = get_number(c, "eps_decay", eps_decay, "simulate.classify");
    eps_osc = get_number(c, "eps_osc", eps_osc, "simulate.classify");
  }

  const Trajectory traj = abm_simulate(spec, z0, sim);

  std::ostringstream csv;
  csv << "t";
  for (int k = 1; k <= spec.n; ++k) {
    csv << ",z" << k << "_re,z" << k << "_im";
  }
  csv << "\n";
  for (std::size_t row = 0; row < traj.times.size(); ++row) {
    csv << fmt17(traj.times[row]);
    for (Eigen::Index k = 0; k < spec.n; ++k) {
      csv << ',' << fmt17(traj.states[row][k].real()) << ','
          << fmt17(traj.states[row][k].imag());
    }
    csv << "\n";
  }
  write_atomic(out_path, csv.str());

  json meta;
  meta["config"] = section;
  meta["z0"] = complex_vector_to_json(z0);
  meta["seed"] = used_seed ? json(seed) : json(nullptr);
  meta["steps"] = traj.times.size() - 1;
  meta["diverged"] = traj.diverged;
  try {
    meta["classification"] =
        to_string(classify_tail(traj, window_fraction, eps_decay, eps_osc));
  } catch (const std::invalid_argument& e) {
    meta["classification"] = nullptr;
    meta["classification_note"] = e.what();
  }
  if (has_ring_pattern(spec)) {
    const RingAttractorReport report =
        ring_attractor_check(traj, window_fraction);
    meta["ring_attractor"]["max_spread"] = report.max_spread;
    meta["ring_attractor"]["modulus_defect"] = report.modulus_defect;
  }
  write_atomic(out_path + ".meta.json", meta.dump(2) + "\n");
  return 0;
}

// ---------------------------------------------------------------------------
// equilibria

bool near_duplicate(const std::vector<EquilibriumState>& kept,
                    const ComplexVector& z) {
  for (const EquilibriumState& state : kept) {
    if ((state.z - z).cwiseAbs().maxCoeff() <= 1e-8) return true;
  }
  return false;
}

int run_equilibria(const std::string& config_path, const std::string& out_path,
                   std::uint64_t seed) {
  const json cfg = load_config(config_path);
  require_known_keys(cfg, {"network", "equilibria"}, "config");
  const NetworkSpec spec = parse_network(cfg);
  const json& section = require_field(cfg, "equilibria", "config");
  require_known_keys(
      section,
      {"seeds", "random", "tol", "max_iter", "equal_component", "scalar_seeds"},
      "equilibria");

  const double tol = get_number(section, "tol", 1e-12, "equilibria");
  const int max_iter = get_int(section, "max_iter", 100, "equilibria");

  std::vector<ComplexVector> guesses;
  guesses.push_back(ComplexVector::Zero(spec.n));
  if (section.contains("seeds")) {
    const json& seeds = section.at("seeds");
    if (!seeds.is_array()) {
      throw ConfigError("equilibria.seeds: expected an array of state vectors");
    }
    for (std::size_t i = 0; i < seeds.size(); ++i) {
      guesses.push_back(parse_complex_vector(
          seeds[i], spec.n, "equilibria.seeds[" + std::to_string(i) + "]"));
    }
  }
  bool used_seed = false;
  if (section.contains("random")) {
    const json& rnd = section.at("random");
    require_known_keys(rnd, {"count", "radius"}, "equilibria.random");
    const int count = require_int(require_field(rnd, "count", "equilibria.random"),
                                  "equilibria.random.count");
    const double radius = require_number(
        require_field(rnd, "radius", "equilibria.random"),
        "equilibria.random.radius");
    if (count < 0) throw ConfigError("equilibria.random.count: must be >= 0");
    if (!(radius > 0.0)) {
      throw ConfigError("equilibria.random.radius: must be positive");
    }
    std::mt19937_64 rng(seed);
    for (int i = 0; i < count; ++i) {
      ComplexVector z(spec.n);
      for (Eigen::Index k = 0; k < spec.n; ++k) {
        z[k] = random_in_square(rng, radius);
      }
      guesses.push_back(std::move(z));
    }
    used_seed = true;
  }

  std::vector<EquilibriumState> found;
  for (const ComplexVector& guess : guesses) {
    const EquilibriumState state = find_equilibrium(spec, guess, tol, max_iter);
    if (state.converged && !near_duplicate(found, state.z)) {
      found.push_back(state);
    }
  }

  json doc;
  doc["attempts"] = guesses.size();
  doc["seed"] = used_seed ? json(seed) : json(nullptr);
  doc["equilibria"] = json::array();
  for (const EquilibriumState& state : found) {
    json e;
    e["z"] = complex_vector_to_json(state.z);
    e["residual"] = state.residual_norm;
    doc["equilibria"].push_back(std::move(e));
  }

  bool equal_component = false;
  if (section.contains("equal_component")) {
    const json& flag = section.at("equal_component");
    if (!flag.is_boolean()) {
      throw ConfigError("equilibria.equal_component: expected a boolean");
    }
    equal_component = flag.get<bool>();
  }
  if (equal_component) {
    // The scalar reduction needs every row to act identically on
    // equal-component states.
    for (Eigen::Index k = 1; k < spec.n; ++k) {
      if (std::abs(spec.a[k] - spec.a[0]) > 1e-10) {
        throw DomainError("equal-component reduction needs uniform decay rates");
      }
      const ActivationSpec& base = spec.activations[0];
      const ActivationSpec& act = spec.activations[static_cast<std::size_t>(k)];
      if (act.kind != base.kind || act.c1 != base.c1 || act.c2 != base.c2 ||
          act.gain != base.gain) {
        throw DomainError(
            "equal-component reduction needs identical activations");
      }
    }
    if (spec.inputs.cwiseAbs().maxCoeff() > 1e-10) {
      throw DomainError("equal-component reduction assumes zero inputs");
    }
    const ComplexVector row_sums = spec.T.rowwise().sum();
    for (Eigen::Index k = 1; k < spec.n; ++k) {
      if (std::abs(row_sums[k] - row_sums[0]) > 1e-10) {
        throw DomainError("equal-component reduction needs uniform row sums");
      }
    }

    std::vector<Complex> scalar_seeds;
    if (section.contains("scalar_seeds")) {
      const json& seeds = section.at("scalar_seeds");
      if (!seeds.is_array()) {
        throw ConfigError(
            "equilibria.scalar_seeds: expected an array of [re, im] pairs");
      }
      for (std::size_t i = 0; i < seeds.size(); ++i) {
        scalar_seeds.push_back(complex_from_json(
            seeds[i], "equilibria.scalar_seeds[" + std::to_string(i) + "]"));
      }
    } else {
      for (int ring = 0; ring < 2; ++ring) {
        const double r = ring == 0 ? 0.5 : 2.0;
        for (int k = 0; k < 8; ++k) {
          scalar_seeds.push_back(std::polar(r, 2.0 * kPi * k / 8.0));
        }
      }
    }

    const std::vector<EquilibriumState> roots = equal_component_equilibria(
        spec.a[0], row_sums[0], spec.activations[0], scalar_seeds, tol,
        max_iter);
    json ec;
    ec["a0"] = spec.a[0];
    ec["row_sum"] = complex_to_json(row_sums[0]);
    ec["roots"] = json::array();
    for (const EquilibriumState& root : roots) {
      const ComplexVector lifted = lift_equal_component(root, spec.n);
      json r;
      r["z"] = complex_to_json(root.z[0]);
      r["scalar_residual"] = root.residual_norm;
      r["lifted_residual"] = residual(spec, lifted);
      ec["roots"].push_back(std::move(r));
    }
    doc["equal_component"] = ec;
  }

  emit(out_path, doc);
  return 0;
}

// ---------------------------------------------------------------------------
// scan

int run_scan(const std::string& config_path, const std::string& out_path,
             int n_flag, int resolution_flag, int threads) {
  int n = n_flag;
  int resolution = resolution_flag;
  if (!config_path.empty()) {
    const json cfg = load_config(config_path);
    require_known_keys(cfg, {"scan"}, "config");
    const json& section = require_field(cfg, "scan", "config");
    require_known_keys(section, {"n", "resolution"}, "scan");
    if (n <= 0) n = get_int(section, "n", 0, "scan");
    if (resolution <= 0) {
      resolution = get_int(section, "resolution", 0, "scan");
    }
  }
  if (n <= 0) {
    throw ConfigError("scan: ring size --n is required (flag or config)");
  }
  if (resolution <= 0) resolution = 256;

  const DensityGrid grid = density_scan(n, resolution, threads);

  std::ostringstream csv;
  csv << "theta1,theta2,q_star,stable_all_q\n";
  for (int i = 0; i < resolution; ++i) {
    const std::string theta1 = fmt17(grid.theta1_at(i));
    for (int j = 0; j < resolution; ++j) {
      const std::size_t idx = grid.index(i, j);
      csv << theta1 << ',' << fmt17(grid.theta2_at(j)) << ','
          << fmt17(grid.q_star[idx]) << ','
          << static_cast<int>(grid.stable_all_q[idx]) << "\n";
    }
  }
  write_atomic(out_path, csv.str());

  std::size_t stable_cells = 0;
  for (const std::uint8_t flag : grid.stable_all_q) stable_cells += flag;
  json meta;
  meta["n"] = grid.n_neurons;
  meta["resolution"] = grid.resolution;
  meta["threads"] = threads;
  meta["rows"] = static_cast<std::size_t>(resolution) * resolution;
  meta["stable_all_q_cells"] = stable_cells;
  meta["theta_convention"] =
      "cell centers theta = -pi + (k + 0.5) * 2 * pi / resolution, "
      "theta1 is the slow (row) index";
  write_atomic(out_path + ".meta.json", meta.dump(2) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Stability analysis and simulation of complex-valued fractional-order "
      "Hopfield networks"};
  app.require_subcommand(1);

  std::string config_path, out_path;
  std::uint64_t seed = 0;
  int threads = 1;
  int n_flag = 0;
  int resolution_flag = 0;

  CLI::App* analyze =
      app.add_subcommand("analyze", "Equilibrium, spectrum and critical order");
  analyze->add_option("--config", config_path, "JSON config path")->required();
  analyze->add_option("--out", out_path, "report path (default: stdout)");

  CLI::App* simulate =
      app.add_subcommand("simulate", "Integrate a trajectory, write CSV");
  simulate->add_option("--config", config_path, "JSON config path")->required();
  simulate->add_option("--out", out_path, "trajectory CSV path")->required();
  simulate->add_option("--seed", seed, "RNG seed for seeded perturbations");

  CLI::App* equilibria =
      app.add_subcommand("equilibria", "Search for fixed points");
  equilibria->add_option("--config", config_path, "JSON config path")
      ->required();
  equilibria->add_option("--out", out_path, "report path (default: stdout)");
  equilibria->add_option("--seed", seed, "RNG seed for random starts");

  CLI::App* scan = app.add_subcommand(
      "scan", "Critical-order density grid of the parametric ring family");
  scan->add_option("--config", config_path, "JSON config path (optional)");
  scan->add_option("--out", out_path, "grid CSV path")->required();
  scan->add_option("--n", n_flag, "ring size");
  scan->add_option("--resolution", resolution_flag,
                   "cells per axis (default 256)");
  scan->add_option("--threads", threads, "worker threads (default 1)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (analyze->parsed()) return run_analyze(config_path, out_path);
    if (simulate->parsed()) return run_simulate(config_path, out_path, seed);
    if (equilibria->parsed()) {
      return run_equilibria(config_path, out_path, seed);
    }
    if (scan->parsed()) {
      return run_scan(config_path, out_path, n_flag, resolution_flag, threads);
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "analysis error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
