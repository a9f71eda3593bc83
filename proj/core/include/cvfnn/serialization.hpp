#pragma once

#include <nlohmann/json.hpp>

#include "cvfnn/network.hpp"

namespace cvfnn {

/// JSON layout (parsing is strict: unknown keys are rejected, listing the
/// offenders and their location):
///
///   network:    {"n": 3, "a": [1, 2, 2], "T": [[[re, im], ...], ...],
///                "I": [[re, im], ...], "activations": [act, ...]}
///   activation: {"kind": "georgiou", "c1": 1.0, "c2": 1.0}
///               {"kind": "linear", "gain": [re, im]}
///   complex:    [re, im]

[[nodiscard]] Complex complex_from_json(const nlohmann::json& j,
                                        const std::string& context);
[[nodiscard]] nlohmann::json complex_to_json(const Complex& z);

[[nodiscard]] ActivationSpec activation_from_json(const nlohmann::json& j,
                                                  const std::string& context);
[[nodiscard]] nlohmann::json activation_to_json(const ActivationSpec& act);

[[nodiscard]] NetworkSpec network_from_json(const nlohmann::json& j);
[[nodiscard]] nlohmann::json network_to_json(const NetworkSpec& spec);

/// Throws ConfigError when obj (an object) holds keys outside allowed.
void require_known_keys(const nlohmann::json& obj,
                        std::initializer_list<const char*> allowed,
                        const std::string& context);

/// Member access helpers that raise ConfigError with the offending path.
[[nodiscard]] const nlohmann::json& require_field(const nlohmann::json& obj,
                                                  const char* key,
                                                  const std::string& context);
[[nodiscard]] double require_number(const nlohmann::json& v,
                                    const std::string& context);
[[nodiscard]] int require_int(const nlohmann::json& v,
                              const std::string& context);

}  // namespace cvfnn
