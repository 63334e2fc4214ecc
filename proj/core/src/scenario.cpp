#include "dabe/scenario.hpp"

#include <charconv>
#include <cstdlib>

namespace dabe {

namespace {

using Json = nlohmann::ordered_json;

std::uint64_t decimal(const std::string& s, std::string_view what) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
    throw Error(Errc::BadConfig, std::string(what) + " is not a decimal integer: \"" + s + "\"");
  return v;
}

std::uint64_t integer(const Json& j, std::string_view what) {
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  if (j.is_string()) return decimal(j.get<std::string>(), what);
  throw Error(Errc::BadConfig, std::string(what) + " must be an integer");
}

void require_known(const AttributeRegistry& registry, const std::string& attr, std::string_view where) {
  if (!registry.contains(attr))
    throw Error(Errc::BadConfig, "attribute \"" + attr + "\" in " + std::string(where) + " is not in the registry");
}

}  // namespace

std::optional<std::uint64_t> seed_from_env() {
  const char* v = std::getenv("DABE_SEED");
  if (v == nullptr || *v == '\0') return std::nullopt;
  return decimal(v, "DABE_SEED");
}

ScenarioConfig scenario_from_json(const Json& j, std::optional<std::uint64_t> seed_override) {
  if (!j.is_object()) throw Error(Errc::BadConfig, "scenario must be a JSON object");
  ScenarioConfig cfg;
  if (!j.contains("model") || !j.at("model").is_string()) throw Error(Errc::BadConfig, "scenario needs a model");
  cfg.model = model_from_string(j.at("model").get<std::string>());

  if (j.contains("prime")) {
    const Json& p = j.at("prime");
    if (!(p.is_string() && p.get<std::string>() == "default")) cfg.prime = integer(p, "prime");
  }
  if (!is_prime(cfg.prime)) throw Error(Errc::NotPrime, std::to_string(cfg.prime) + " is not prime");

  if (seed_override) {
    cfg.seed = *seed_override;
  } else if (j.contains("seed")) {
    cfg.seed = integer(j.at("seed"), "seed");
  } else {
    throw Error(Errc::BadConfig, "scenario needs a seed (or DABE_SEED)");
  }

  if (j.contains("authorities")) cfg.authorities = static_cast<std::uint32_t>(integer(j.at("authorities"), "authorities"));

  if (j.contains("attributes")) {
    const Json& attrs = j.at("attributes");
    if (!attrs.is_array()) throw Error(Errc::BadConfig, "attributes must be an array");
    for (const auto& a : attrs) {
      if (!a.is_object() || !a.contains("name") || !a.at("name").is_string())
        throw Error(Errc::BadConfig, "each attribute needs a name");
      RegistryEntry e;
      if (a.contains("authority")) e.authority = static_cast<std::uint32_t>(integer(a.at("authority"), "authority"));
      if (a.contains("weight")) e.weight = integer(a.at("weight"), "weight");
      if (a.contains("h_index")) e.h_index = static_cast<std::uint32_t>(integer(a.at("h_index"), "h_index"));
      const std::string name = a.at("name").get<std::string>();
      if (!cfg.registry.emplace(name, e).second) throw Error(Errc::BadConfig, "attribute \"" + name + "\" listed twice");
    }
  }

  if (j.contains("users")) {
    for (const auto& [user, list] : j.at("users").items()) {
      if (!list.is_array()) throw Error(Errc::BadConfig, "user \"" + user + "\" needs an attribute array");
      AttributeSet set;
      for (const auto& a : list) {
        const std::string attr = a.get<std::string>();
        require_known(cfg.registry, attr, "user \"" + user + "\"");
        set.insert(attr);
      }
      cfg.users.emplace(user, std::move(set));
    }
  }

  if (j.contains("policies")) {
    for (const auto& p : j.at("policies")) {
      const std::string text = p.get<std::string>();
      const AccessTree tree = parse_policy(text);
      for (const auto& leaf : tree.leaves()) require_known(cfg.registry, leaf.attribute, "policy \"" + text + "\"");
      cfg.policies.push_back(text);
    }
  }

  if (cfg.model == Model::hur2) {
    if (cfg.authorities < 1) throw Error(Errc::BadConfig, "hur2 needs at least one authority");
    for (const auto& [name, e] : cfg.registry) {
      if (e.authority < 1 || e.authority > cfg.authorities)
        throw Error(Errc::BadConfig, "attribute \"" + name + "\" names authority " + std::to_string(e.authority) +
                                         " outside 1.." + std::to_string(cfg.authorities));
    }
  }
  if (cfg.model == Model::lin) {
    for (const auto& [name, e] : cfg.registry)
      if (e.h_index == 0) throw Error(Errc::BadConfig, "attribute \"" + name + "\" has h_index 0");
  }
  return cfg;
}

}  // namespace dabe
