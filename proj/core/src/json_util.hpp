#pragma once

#include <nlohmann/json.hpp>

#include "dabe/group.hpp"
#include "dabe/transcript.hpp"

namespace dabe::detail {

/// Canonical element encoding as a JSON object (same bytes as encode_text when dumped).
inline nlohmann::ordered_json element_json(const Element& e) {
  return nlohmann::ordered_json::parse(encode_text(e));
}

inline nlohmann::ordered_json payload_json(const Payload& payload) {
  nlohmann::ordered_json out = nlohmann::ordered_json::object();
  for (const auto& item : payload) out[item.name] = element_json(item.value);
  return out;
}

}  // namespace dabe::detail
