#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dabe/protocols.hpp"

namespace dabe {

/// A run configuration:
///   {"model": "hur2", "prime": "default" | "<decimal>", "seed": "<decimal>",
///    "authorities": 3,
///    "attributes": [{"name": "Doctor", "authority": 1, "weight": "2", "h_index": 1}, ...],
///    "users": {"alice": ["Doctor"]}, "policies": ["Doctor and Nurse"]}
struct ScenarioConfig {
  Model model = Model::secured;
  std::uint64_t prime = kDefaultPrime;
  std::uint64_t seed = 0;
  std::uint32_t authorities = 2;
  AttributeRegistry registry;
  std::map<std::string, AttributeSet> users;
  std::vector<std::string> policies;

  ModelConfig model_config() const { return ModelConfig{authorities, registry}; }
  GroupContext context() const { return GroupContext::create(prime); }
};

/// Validates every reference: user attributes and policy leaves must be in the
/// registry, hur2 authorities in range. Throws BadConfig naming the offender,
/// SyntaxError for a bad policy. `seed_override` replaces a missing or present seed.
ScenarioConfig scenario_from_json(const nlohmann::ordered_json& j, std::optional<std::uint64_t> seed_override = {});

/// Reads DABE_SEED; throws BadConfig when it is set but not a decimal integer.
std::optional<std::uint64_t> seed_from_env();

}  // namespace dabe
