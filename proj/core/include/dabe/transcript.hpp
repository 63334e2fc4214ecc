#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "dabe/group.hpp"

namespace dabe {

enum class Model { hur1, hur2, wang, lin, secured };

std::string_view to_string(Model model) noexcept;
/// Throws BadConfig for unknown names.
Model model_from_string(std::string_view name);

enum class Role { TI, KGC, AA, CA, Ai, KA, CSP, CS, DS, DU, DO, All };

struct PartyId {
  Role role = Role::DU;
  /// 1-based authority number for Role::Ai, otherwise 0.
  std::uint32_t index = 0;

  /// "KGC", "A2", "DU", "*" for broadcasts.
  std::string label() const;

  friend auto operator<=>(const PartyId&, const PartyId&) = default;
};

inline constexpr PartyId kTI{Role::TI}, kKGC{Role::KGC}, kAA{Role::AA}, kCA{Role::CA}, kKA{Role::KA},
    kCSP{Role::CSP}, kCS{Role::CS}, kDS{Role::DS}, kDU{Role::DU}, kBroadcast{Role::All};
inline constexpr PartyId authority(std::uint32_t i) { return PartyId{Role::Ai, i}; }

struct NamedElement {
  std::string name;
  Element value;
};
using Payload = std::vector<NamedElement>;

struct Message {
  std::uint64_t seq = 0;
  PartyId from;
  PartyId to;
  /// Numbered step of the model's key-generation script, or "setup" / "dec".
  std::string step;
  std::vector<std::string> attributes;
  Payload payload;
};

/// An invocation of the ideal two-party functionality. Inputs are never logged.
struct IdealRecord {
  std::uint64_t seq = 0;
  std::string ideal;
  std::vector<PartyId> outputs_to;
};

using TranscriptEntry = std::variant<Message, IdealRecord>;

/// Ordered log of one protocol run.
class Transcript {
 public:
  Transcript(Model model, std::optional<std::uint64_t> seed) : model_(model), seed_(seed) {}

  void send(PartyId from, PartyId to, std::string step, Payload payload, std::vector<std::string> attributes = {});
  void ideal(std::string name, std::vector<PartyId> outputs_to);
  void output(PartyId party, Payload values);

  Model model() const noexcept { return model_; }
  std::optional<std::uint64_t> seed() const noexcept { return seed_; }
  const std::vector<TranscriptEntry>& entries() const noexcept { return entries_; }
  const std::vector<std::pair<PartyId, Payload>>& outputs() const noexcept { return outputs_; }
  std::vector<const Message*> messages() const;
  std::size_t ideal_count() const;

  /// JSON lines: a header, one record per entry, then one per party output.
  std::string to_jsonl() const;

 private:
  Model model_;
  std::optional<std::uint64_t> seed_;
  std::uint64_t next_seq_ = 1;
  std::vector<TranscriptEntry> entries_;
  std::vector<std::pair<PartyId, Payload>> outputs_;
};

/// Step labels a model's transcript may contain.
const std::vector<std::string>& step_script(Model model);

}  // namespace dabe
