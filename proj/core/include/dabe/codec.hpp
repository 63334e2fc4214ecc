#pragma once

// JSON documents for keys, party states, per-run sessions and attack reports.
// Every integer is written as a decimal string; every group value uses the
// canonical element encoding.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "dabe/attacks.hpp"
#include "dabe/cpabe.hpp"
#include "dabe/protocols.hpp"

namespace dabe::codec {

using Json = nlohmann::ordered_json;

Json params_to_json(const GroupParams& params);
/// Throws MalformedEncoding, NotPrime.
GroupContext context_from_json(const Json& j);

Json element_to_json(const Element& e);
Element element_from_json(const GroupContext& ctx, const Json& j);

/// Ordered name -> element map. Per-attribute values use "name[attr]" keys,
/// per-authority values "name[i]".
class ValueMap {
 public:
  void put(std::string name, Element value);
  bool contains(std::string_view name) const;
  /// Throws MissingInput.
  const Element& get(std::string_view name) const;
  Scalar scalar(std::string_view name) const;
  GElem g0(std::string_view name) const;
  GtElem gt(std::string_view name) const;
  template <class T>
  std::map<std::string, T> indexed(std::string_view prefix) const;

  const std::vector<std::pair<std::string, Element>>& items() const noexcept { return items_; }

  Json to_json() const;
  static ValueMap from_json(const GroupContext& ctx, const Json& j);

 private:
  std::vector<std::pair<std::string, Element>> items_;
};

/// Envelope shared by every file the CLI writes.
struct Document {
  std::string kind;  // "public-key", "party-state", "session", "secret-key"
  Model model = Model::hur1;
  std::string party;
  GroupContext ctx;
  ValueMap values;
  /// Non-element fields (counts, registry, form).
  Json extra = Json::object();
};

Json to_json(const Document& doc);
/// Throws MalformedEncoding.
Document document_from_json(const Json& j);

Json registry_to_json(const AttributeRegistry& registry);
AttributeRegistry registry_from_json(const Json& j);

// Keys.
ValueMap to_values(const SecretKey& key);
SecretKey secret_key_from(const ValueMap& v);
ValueMap to_values(const WatersKey& key);
WatersKey waters_key_from_values(const ValueMap& v);
ValueMap to_values(const LinKeyShares& shares);
LinKeyShares lin_shares_from_values(const ValueMap& v);

ValueMap to_values(const PublicKey& pk);
PublicKey public_key_from_values(const GroupContext& ctx, const ValueMap& v);
ValueMap to_values(const WangPublicKey& pk);
WangPublicKey wang_public_key_from_values(const GroupContext& ctx, const ValueMap& v);
ValueMap to_values(const LinPublicKey& pk);
LinPublicKey lin_public_key_from_values(const GroupContext& ctx, const ValueMap& v);

// Master states.
ValueMap to_values(const Hur1Kgc& s);
ValueMap to_values(const Hur1Aa& s);
ValueMap to_values(const Hur2Ca& s);
ValueMap to_values(const Hur2Authority& s);
ValueMap to_values(const WangKa& s);
ValueMap to_values(const WangCsp& s);
ValueMap to_values(const LinKa& s);
ValueMap to_values(const LinCs& s);
ValueMap to_values(const SecuredKgc& s);
ValueMap to_values(const SecuredAa& s);
Hur1Kgc hur1_kgc_from(const ValueMap& v);
Hur1Aa hur1_aa_from(const ValueMap& v);
Hur2Ca hur2_ca_from(const ValueMap& v, std::uint32_t authorities);
Hur2Authority hur2_authority_from(const ValueMap& v, std::uint32_t index);
WangKa wang_ka_from(const ValueMap& v);
WangCsp wang_csp_from(const ValueMap& v);
LinKa lin_ka_from(const ValueMap& v);
LinCs lin_cs_from(const ValueMap& v);
SecuredKgc secured_kgc_from(const ValueMap& v);
SecuredAa secured_aa_from(const ValueMap& v);

// Per-run sessions (what each party retains after key generation).
ValueMap to_values(const Hur1KgcSession& s);
ValueMap to_values(const Hur1AaSession& s);
ValueMap to_values(const Hur1DuSession& s);
ValueMap to_values(const Hur2CaSession& s);
ValueMap to_values(const Hur2AuthoritySession& s);
ValueMap to_values(const WangKaSession& s);
ValueMap to_values(const WangCspSession& s);
ValueMap to_values(const LinKaSession& s);
ValueMap to_values(const LinCsSession& s);
ValueMap to_values(const LinDsView& s);
ValueMap to_values(const SecuredKgcSession& s);
ValueMap to_values(const SecuredAaSession& s);
Hur1KgcSession hur1_kgc_session_from(const ValueMap& v);
Hur1AaSession hur1_aa_session_from(const ValueMap& v);
Hur2CaSession hur2_ca_session_from(const ValueMap& v);
WangKaSession wang_ka_session_from(const ValueMap& v);
WangCspSession wang_csp_session_from(const ValueMap& v);
LinKaSession lin_ka_session_from(const ValueMap& v);
SecuredAaSession secured_aa_session_from(const ValueMap& v);

Json forged_to_json(const ForgedKey& key);
/// Single record in the transcript style, with a "verdict" field.
Json report_to_json(const AttackReport& report);

}  // namespace dabe::codec
