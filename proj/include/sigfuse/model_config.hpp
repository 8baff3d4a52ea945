#pragma once

#include <cstdint>
#include <string>

#include <nlohmann/json.hpp>

namespace sigfuse {

// One embedding model slot. endpoint is a base URL or the literal
// "offline" for the deterministic feature-hash embedder.
struct ModelConfig {
  std::string model_name;
  int dimension = 0;
  std::int64_t context_window = 0;  // tokens
  double tokens_per_char = 0.25;
  std::string endpoint = "offline";

  nlohmann::json to_json() const {
    return nlohmann::json{{"model_name", model_name},
                          {"dimension", dimension},
                          {"context_window", context_window},
                          {"tokens_per_char", tokens_per_char},
                          {"endpoint", endpoint}};
  }
};

}  // namespace sigfuse
