#include "cvfnn/serialization.hpp"

namespace cvfnn {

using nlohmann::json;

void require_known_keys(const json& obj,
                        std::initializer_list<const char*> allowed,
                        const std::string& context) {
  if (!obj.is_object()) {
    throw ConfigError(context + ": expected an object");
  }
  std::string unknown;
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    bool known = false;
    for (const char* a : allowed) {
      if (key == a) {
        known = true;
        break;
      }
    }
    if (!known) {
      if (!unknown.empty()) unknown += ", ";
      unknown += key;
    }
  }
  if (!unknown.empty()) {
    throw ConfigError(context + ": unknown key(s): " + unknown);
  }
}

const json& require_field(const json& obj, const char* key,
                          const std::string& context) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw ConfigError(context + ": missing required key \"" + key + "\"");
  }
  return obj.at(key);
}

double require_number(const json& v, const std::string& context) {
  if (!v.is_number()) {
    throw ConfigError(context + ": expected a number");
  }
  return v.get<double>();
}

int require_int(const json& v, const std::string& context) {
  if (!v.is_number_integer()) {
    throw ConfigError(context + ": expected an integer");
  }
  return v.get<int>();
}

Complex complex_from_json(const json& j, const std::string& context) {
  if (!j.is_array() || j.size() != 2) {
    throw ConfigError(context + ": expected a [re, im] pair");
  }
  return {require_number(j[0], context + "[0]"),
          require_number(j[1], context + "[1]")};
}

json complex_to_json(const Complex& z) {
  return json::array({z.real(), z.imag()});
}

ActivationSpec activation_from_json(const json& j, const std::string& context) {
  require_known_keys(j, {"kind", "c1", "c2", "gain"}, context);
  const json& kind = require_field(j, "kind", context);
  if (!kind.is_string()) {
    throw ConfigError(context + ".kind: expected a string");
  }
  const std::string name = kind.get<std::string>();
  if (name == "georgiou") {
    require_known_keys(j, {"kind", "c1", "c2"}, context);
    return ActivationSpec::georgiou(
        require_number(require_field(j, "c1", context), context + ".c1"),
        require_number(require_field(j, "c2", context), context + ".c2"));
  }
  if (name == "linear") {
    require_known_keys(j, {"kind", "gain"}, context);
    return ActivationSpec::linear(
        complex_from_json(require_field(j, "gain", context), context + ".gain"));
  }
  throw ConfigError(context + ".kind: unknown activation \"" + name + "\"");
}

json activation_to_json(const ActivationSpec& act) {
  json j;
  switch (act.kind) {
    case ActivationKind::Georgiou:
      j["kind"] = "georgiou";
      j["c1"] = act.c1;
      j["c2"] = act.c2;
      break;
    case ActivationKind::Linear:
      j["kind"] = "linear";
      j["gain"] = complex_to_json(act.gain);
      break;
  }
  return j;
}

NetworkSpec network_from_json(const json& j) {
  const std::string ctx = "network";
  require_known_keys(j, {"n", "a", "T", "I", "activations"}, ctx);

  NetworkSpec spec;
  spec.n = require_int(require_field(j, "n", ctx), ctx + ".n");
  if (spec.n < 1) throw ConfigError(ctx + ".n: must be >= 1");
  const auto n = static_cast<std::size_t>(spec.n);

  const json& a = require_field(j, "a", ctx);
  if (!a.is_array() || a.size() != n) {
    throw ConfigError(ctx + ".a: expected an array of " + std::to_string(n) +
                      " numbers");
  }
  spec.a.resize(spec.n);
  for (std::size_t k = 0; k < n; ++k) {
    spec.a[static_cast<Eigen::Index>(k)] =
        require_number(a[k], ctx + ".a[" + std::to_string(k) + "]");
  }

  const json& T = require_field(j, "T", ctx);
  if (!T.is_array() || T.size() != n) {
    throw ConfigError(ctx + ".T: expected " + std::to_string(n) + " rows");
  }
  spec.T.resize(spec.n, spec.n);
  for (std::size_t r = 0; r < n; ++r) {
    const json& row = T[r];
    const std::string rctx = ctx + ".T[" + std::to_string(r) + "]";
    if (!row.is_array() || row.size() != n) {
      throw ConfigError(rctx + ": expected " + std::to_string(n) +
                        " [re, im] pairs");
    }
    for (std::size_t c = 0; c < n; ++c) {
      spec.T(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          complex_from_json(row[c], rctx + "[" + std::to_string(c) + "]");
    }
  }

  const json& inputs = require_field(j, "I", ctx);
  if (!inputs.is_array() || inputs.size() != n) {
    throw ConfigError(ctx + ".I: expected an array of " + std::to_string(n) +
                      " [re, im] pairs");
  }
  spec.inputs.resize(spec.n);
  for (std::size_t k = 0; k < n; ++k) {
    spec.inputs[static_cast<Eigen::Index>(k)] =
        complex_from_json(inputs[k], ctx + ".I[" + std::to_string(k) + "]");
  }

  const json& acts = require_field(j, "activations", ctx);
  if (!acts.is_array() || acts.size() != n) {
    throw ConfigError(ctx + ".activations: expected an array of " +
                      std::to_string(n) + " activation objects");
  }
  spec.activations.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    spec.activations.push_back(activation_from_json(
        acts[k], ctx + ".activations[" + std::to_string(k) + "]"));
  }
  return spec;
}

json network_to_json(const NetworkSpec& spec) {
  json j;
  j["n"] = spec.n;
  j["a"] = json::array();
  for (Eigen::Index k = 0; k < spec.a.size(); ++k) j["a"].push_back(spec.a[k]);
  j["T"] = json::array();
  for (Eigen::Index r = 0; r < spec.T.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < spec.T.cols(); ++c) {
      row.push_back(complex_to_json(spec.T(r, c)));
    }
    j["T"].push_back(std::move(row));
  }
  j["I"] = json::array();
  for (Eigen::Index k = 0; k < spec.inputs.size(); ++k) {
    j["I"].push_back(complex_to_json(spec.inputs[k]));
  }
  j["activations"] = json::array();
  for (const ActivationSpec& act : spec.activations) {
    j["activations"].push_back(activation_to_json(act));
  }
  return j;
}

}  // namespace cvfnn
