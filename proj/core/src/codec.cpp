#include "dabe/codec.hpp"

#include <charconv>

#include "json_util.hpp"

namespace dabe::codec {

namespace {

std::uint64_t parse_u64(const Json& j, std::string_view what) {
  if (!j.is_string()) throw Error(Errc::MalformedEncoding, std::string(what) + " must be a decimal string");
  const auto& s = j.get_ref<const std::string&>();
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
    throw Error(Errc::MalformedEncoding, std::string(what) + " is not a decimal integer");
  return v;
}

const Json& field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name))
    throw Error(Errc::MalformedEncoding, std::string("missing field \"") + name + "\"");
  return j.at(name);
}

std::string key_of(std::string_view prefix, std::string_view index) {
  std::string out(prefix);
  out += '[';
  out += index;
  out += ']';
  return out;
}

}  // namespace

Json params_to_json(const GroupParams& params) {
  Json j;
  j["backend"] = std::string(to_string(params.backend));
  j["p"] = std::to_string(params.p);
  j["hash_salt"] = params.hash_salt;
  return j;
}

GroupContext context_from_json(const Json& j) {
  const Json& backend = field(j, "backend");
  Backend b = Backend::transparent;
  if (backend == "external") {
    b = Backend::external;
  } else if (backend != "transparent") {
    throw Error(Errc::MalformedEncoding, "unknown backend");
  }
  const Json& salt = field(j, "hash_salt");
  if (!salt.is_string()) throw Error(Errc::MalformedEncoding, "hash_salt must be a string");
  return GroupContext::create(parse_u64(field(j, "p"), "p"), salt.get<std::string>(), b);
}

Json element_to_json(const Element& e) { return detail::element_json(e); }

Element element_from_json(const GroupContext& ctx, const Json& j) {
  if (!j.is_object()) throw Error(Errc::MalformedEncoding, "element must be an object");
  return decode_text(ctx, j.dump());
}

void ValueMap::put(std::string name, Element value) {
  for (auto& item : items_) {
    if (item.first == name) {
      item.second = std::move(value);
      return;
    }
  }
  items_.emplace_back(std::move(name), std::move(value));
}

bool ValueMap::contains(std::string_view name) const {
  for (const auto& item : items_)
    if (item.first == name) return true;
  return false;
}

const Element& ValueMap::get(std::string_view name) const {
  for (const auto& item : items_)
    if (item.first == name) return item.second;
  throw Error(Errc::MissingInput, "missing value \"" + std::string(name) + "\"");
}

namespace {
template <class T>
T as(const Element& e, std::string_view name) {
  if (const T* v = std::get_if<T>(&e)) return *v;
  throw Error(Errc::MalformedEncoding, "value \"" + std::string(name) + "\" has the wrong kind");
}
}  // namespace

Scalar ValueMap::scalar(std::string_view name) const { return as<Scalar>(get(name), name); }
GElem ValueMap::g0(std::string_view name) const { return as<GElem>(get(name), name); }
GtElem ValueMap::gt(std::string_view name) const { return as<GtElem>(get(name), name); }

template <class T>
std::map<std::string, T> ValueMap::indexed(std::string_view prefix) const {
  std::map<std::string, T> out;
  for (const auto& [name, value] : items_) {
    if (name.size() < prefix.size() + 2 || name.compare(0, prefix.size(), prefix) != 0) continue;
    if (name[prefix.size()] != '[' || name.back() != ']') continue;
    out.emplace(name.substr(prefix.size() + 1, name.size() - prefix.size() - 2), as<T>(value, name));
  }
  return out;
}

template std::map<std::string, Scalar> ValueMap::indexed<Scalar>(std::string_view) const;
template std::map<std::string, GElem> ValueMap::indexed<GElem>(std::string_view) const;
template std::map<std::string, GtElem> ValueMap::indexed<GtElem>(std::string_view) const;

Json ValueMap::to_json() const {
  Json out = Json::object();
  for (const auto& [name, value] : items_) out[name] = element_to_json(value);
  return out;
}

ValueMap ValueMap::from_json(const GroupContext& ctx, const Json& j) {
  if (!j.is_object()) throw Error(Errc::MalformedEncoding, "values must be an object");
  ValueMap out;
  for (const auto& [name, value] : j.items()) out.put(name, element_from_json(ctx, value));
  return out;
}

Json to_json(const Document& doc) {
  Json j;
  j["kind"] = doc.kind;
  j["model"] = std::string(to_string(doc.model));
  if (!doc.party.empty()) j["party"] = doc.party;
  j["params"] = params_to_json(doc.ctx.params());
  for (const auto& [k, v] : doc.extra.items()) j[k] = v;
  j["values"] = doc.values.to_json();
  return j;
}

Document document_from_json(const Json& j) {
  const Json& kind = field(j, "kind");
  const Json& model = field(j, "model");
  if (!kind.is_string() || !model.is_string()) throw Error(Errc::MalformedEncoding, "kind and model must be strings");
  const GroupContext ctx = context_from_json(field(j, "params"));
  Document doc{kind.get<std::string>(), model_from_string(model.get<std::string>()), "", ctx,
               ValueMap::from_json(ctx, field(j, "values")), Json::object()};
  if (j.contains("party")) doc.party = j.at("party").get<std::string>();
  for (const auto& [k, v] : j.items()) {
    if (k != "kind" && k != "model" && k != "party" && k != "params" && k != "values") doc.extra[k] = v;
  }
  return doc;
}

Json registry_to_json(const AttributeRegistry& registry) {
  Json out = Json::object();
  for (const auto& [name, e] : registry) {
    out[name] = {{"authority", e.authority}, {"weight", std::to_string(e.weight)}, {"h_index", e.h_index}};
  }
  return out;
}

AttributeRegistry registry_from_json(const Json& j) {
  if (!j.is_object()) throw Error(Errc::MalformedEncoding, "registry must be an object");
  AttributeRegistry out;
  for (const auto& [name, e] : j.items()) {
    RegistryEntry entry;
    if (e.contains("authority")) entry.authority = e.at("authority").get<std::uint32_t>();
    if (e.contains("weight")) entry.weight = parse_u64(e.at("weight"), "weight");
    if (e.contains("h_index")) entry.h_index = e.at("h_index").get<std::uint32_t>();
    out.emplace(name, entry);
  }
  return out;
}

// --- keys ------------------------------------------------------------------

ValueMap to_values(const SecretKey& key) {
  ValueMap v;
  v.put("D", key.d);
  for (const auto& [attr, kc] : key.components) {
    v.put(key_of("D_j", attr), kc.d);
    v.put(key_of("D'_j", attr), kc.d_prime);
  }
  return v;
}

SecretKey secret_key_from(const ValueMap& v) {
  SecretKey sk;
  sk.d = v.g0("D");
  const auto d = v.indexed<GElem>("D_j");
  const auto d_prime = v.indexed<GElem>("D'_j");
  for (const auto& [attr, dj] : d) {
    auto it = d_prime.find(attr);
    if (it == d_prime.end()) throw Error(Errc::MissingInput, "missing D'_j for attribute \"" + attr + "\"");
    sk.components.emplace(attr, KeyComponent{dj, it->second});
  }
  if (d_prime.size() != d.size()) throw Error(Errc::MalformedEncoding, "unpaired D'_j component");
  return sk;
}

ValueMap to_values(const WatersKey& key) {
  ValueMap v;
  v.put("D", key.d);
  v.put("L", key.l);
  for (const auto& [attr, c] : key.components) v.put(key_of("D_j", attr), c);
  for (const auto& [attr, w] : key.weights) v.put(key_of("w", attr), w);
  return v;
}

WatersKey waters_key_from_values(const ValueMap& v) {
  WatersKey key;
  key.d = v.g0("D");
  key.l = v.g0("L");
  key.components = v.indexed<GElem>("D_j");
  key.weights = v.indexed<Scalar>("w");
  return key;
}

ValueMap to_values(const LinKeyShares& shares) {
  ValueMap v;
  v.put("K'", shares.k_prime);
  v.put("CPK1.D", shares.cpk1.d);
  for (const auto& [attr, c] : shares.cpk1.components) v.put(key_of("CPK1.D_x", attr), c);
  v.put("CPK2", shares.cpk2);
  v.put("CPK3", shares.cpk3);
  return v;
}

LinKeyShares lin_shares_from_values(const ValueMap& v) {
  return LinKeyShares{v.g0("K'"), LinCpk1{v.g0("CPK1.D"), v.indexed<GElem>("CPK1.D_x")}, v.g0("CPK2"),
                      v.scalar("CPK3")};
}

ValueMap to_values(const PublicKey& pk) {
  ValueMap v;
  v.put("h", pk.h);
  v.put("egg_alpha", pk.egg_alpha);
  if (pk.h_inv) v.put("h_inv", *pk.h_inv);
  return v;
}

PublicKey public_key_from_values(const GroupContext& ctx, const ValueMap& v) {
  PublicKey pk{ctx, v.g0("h"), v.gt("egg_alpha"), std::nullopt};
  if (v.contains("h_inv")) pk.h_inv = v.g0("h_inv");
  return pk;
}

ValueMap to_values(const WangPublicKey& pk) {
  ValueMap v;
  v.put("h", pk.h);
  v.put("egg_alpha", pk.egg_alpha);
  v.put("egg_alpha1", pk.egg_alpha1);
  v.put("egg_alpha2", pk.egg_alpha2);
  return v;
}

WangPublicKey wang_public_key_from_values(const GroupContext& ctx, const ValueMap& v) {
  return WangPublicKey{ctx, v.g0("h"), v.gt("egg_alpha"), v.gt("egg_alpha1"), v.gt("egg_alpha2")};
}

ValueMap to_values(const LinPublicKey& pk) {
  ValueMap v;
  v.put("g_q", pk.g_q);
  v.put("egg_alpha", pk.egg_alpha);
  for (std::size_t i = 0; i < pk.h.size(); ++i) v.put(key_of("h", std::to_string(i + 1)), pk.h[i]);
  return v;
}

LinPublicKey lin_public_key_from_values(const GroupContext& ctx, const ValueMap& v) {
  LinPublicKey pk{ctx, v.g0("g_q"), v.gt("egg_alpha"), {}};
  for (std::size_t i = 1;; ++i) {
    const std::string name = key_of("h", std::to_string(i));
    if (!v.contains(name)) break;
    pk.h.push_back(v.g0(name));
  }
  return pk;
}

// --- master states -----------------------------------------------------------

ValueMap to_values(const Hur1Kgc& s) {
  ValueMap v;
  v.put("alpha", s.alpha);
  v.put("egg_alpha", s.pk_egg_alpha);
  return v;
}

ValueMap to_values(const Hur1Aa& s) {
  ValueMap v;
  v.put("beta", s.beta);
  v.put("h", s.pk_h);
  v.put("h_inv", s.pk_h_inv);
  return v;
}

ValueMap to_values(const Hur2Ca& s) {
  ValueMap v;
  v.put("beta", s.beta);
  v.put("h", s.pk_h);
  return v;
}

ValueMap to_values(const Hur2Authority& s) {
  ValueMap v;
  v.put("alpha", s.alpha);
  v.put("egg_alpha", s.pk_egg_alpha);
  return v;
}

ValueMap to_values(const WangKa& s) {
  ValueMap v;
  v.put("alpha1", s.alpha1);
  v.put("beta", s.beta);
  v.put("h", s.pk_h);
  v.put("egg_alpha1", s.pk_egg_alpha1);
  return v;
}

ValueMap to_values(const WangCsp& s) {
  ValueMap v;
  v.put("alpha2", s.alpha2);
  v.put("egg_alpha2", s.pk_egg_alpha2);
  return v;
}

ValueMap to_values(const LinKa& s) {
  ValueMap v;
  v.put("q", s.q);
  v.put("g_q", s.pk_g_q);
  return v;
}

ValueMap to_values(const LinCs& s) {
  ValueMap v;
  v.put("alpha", s.alpha);
  v.put("g_alpha", s.mk_g_alpha);
  v.put("egg_alpha", s.pk_egg_alpha);
  return v;
}

ValueMap to_values(const SecuredKgc& s) {
  ValueMap v;
  v.put("alpha1", s.alpha1);
  v.put("beta", s.beta);
  v.put("h", s.pk_h);
  v.put("egg_alpha1", s.pk_egg_alpha1);
  return v;
}

ValueMap to_values(const SecuredAa& s) {
  ValueMap v;
  v.put("alpha2", s.alpha2);
  v.put("egg_alpha2", s.pk_egg_alpha2);
  return v;
}

Hur1Kgc hur1_kgc_from(const ValueMap& v) { return Hur1Kgc{v.scalar("alpha"), v.gt("egg_alpha")}; }
Hur1Aa hur1_aa_from(const ValueMap& v) { return Hur1Aa{v.scalar("beta"), v.g0("h"), v.g0("h_inv")}; }
Hur2Ca hur2_ca_from(const ValueMap& v, std::uint32_t authorities) {
  return Hur2Ca{v.scalar("beta"), v.g0("h"), authorities};
}
Hur2Authority hur2_authority_from(const ValueMap& v, std::uint32_t index) {
  return Hur2Authority{index, v.scalar("alpha"), v.gt("egg_alpha")};
}
WangKa wang_ka_from(const ValueMap& v) {
  return WangKa{v.scalar("alpha1"), v.scalar("beta"), v.g0("h"), v.gt("egg_alpha1")};
}
WangCsp wang_csp_from(const ValueMap& v) { return WangCsp{v.scalar("alpha2"), v.gt("egg_alpha2")}; }
LinKa lin_ka_from(const ValueMap& v) { return LinKa{v.scalar("q"), v.g0("g_q")}; }
LinCs lin_cs_from(const ValueMap& v) { return LinCs{v.scalar("alpha"), v.g0("g_alpha"), v.gt("egg_alpha")}; }
SecuredKgc secured_kgc_from(const ValueMap& v) {
  return SecuredKgc{v.scalar("alpha1"), v.scalar("beta"), v.g0("h"), v.gt("egg_alpha1")};
}
SecuredAa secured_aa_from(const ValueMap& v) { return SecuredAa{v.scalar("alpha2"), v.gt("egg_alpha2")}; }

// --- sessions ----------------------------------------------------------------

ValueMap to_values(const Hur1KgcSession& s) {
  ValueMap v;
  v.put("x", s.x);
  v.put("t", s.t);
  return v;
}

ValueMap to_values(const Hur1AaSession& s) {
  ValueMap v;
  v.put("r", s.r);
  for (const auto& [attr, r_j] : s.r_j) v.put(key_of("r_j", attr), r_j);
  v.put("A", s.a_received);
  return v;
}

ValueMap to_values(const Hur1DuSession& s) {
  ValueMap v;
  v.put("t", s.t);
  v.put("D'", s.d_prime);
  return v;
}

ValueMap to_values(const Hur2CaSession& s) {
  ValueMap v;
  for (std::size_t i = 0; i < s.gamma.size(); ++i) v.put(key_of("gamma", std::to_string(i + 1)), s.gamma[i]);
  v.put("r_t", s.r_t);
  v.put("r'", s.r_prime);
  return v;
}

ValueMap to_values(const Hur2AuthoritySession& s) {
  ValueMap v;
  v.put("x", s.x);
  v.put("tau", s.tau);
  v.put("B", s.b_received);
  v.put("g^(r_t-r')", s.g_rt_minus_rprime);
  for (const auto& [attr, r_j] : s.r_j) v.put(key_of("r_j", attr), r_j);
  return v;
}

ValueMap to_values(const WangKaSession& s) {
  ValueMap v;
  v.put("r", s.r);
  v.put("theta", s.theta);
  v.put("X1", s.x1_received);
  v.put("X2", s.x2_received);
  return v;
}

ValueMap to_values(const WangCspSession& s) {
  ValueMap v;
  v.put("x", s.x);
  v.put("rho1", s.rho1);
  v.put("rho2", s.rho2);
  v.put("Y1", s.y1_received);
  v.put("Y2", s.y2_received);
  v.put("Y3", s.y3_received);
  v.put("D", s.d);
  return v;
}

ValueMap to_values(const LinKaSession& s) {
  ValueMap v;
  v.put("tau", s.tau);
  v.put("r2", s.r2);
  v.put("pi2", s.pi2);
  v.put("varsigma", s.varsigma);
  v.put("y", s.y);
  v.put("A", s.a_received);
  v.put("X1", s.x1_received);
  v.put("CPK1.D", s.cpk1.d);
  for (const auto& [attr, c] : s.cpk1.components) v.put(key_of("CPK1.D_x", attr), c);
  return v;
}

ValueMap to_values(const LinCsSession& s) {
  ValueMap v;
  v.put("x", s.x);
  v.put("sigma", s.sigma);
  v.put("r1", s.r1);
  v.put("pi1", s.pi1);
  v.put("xi", s.xi);
  v.put("y", s.y);
  v.put("K'", s.k_prime);
  v.put("CPK2", s.cpk2);
  return v;
}

ValueMap to_values(const LinDsView& s) {
  ValueMap v;
  v.put("CPK1.D", s.cpk1.d);
  for (const auto& [attr, c] : s.cpk1.components) v.put(key_of("CPK1.D_x", attr), c);
  v.put("CPK2", s.cpk2);
  return v;
}

ValueMap to_values(const SecuredKgcSession& s) {
  ValueMap v;
  v.put("x", s.x);
  return v;
}

ValueMap to_values(const SecuredAaSession& s) {
  ValueMap v;
  v.put("r", s.r);
  for (const auto& [attr, r_j] : s.r_j) v.put(key_of("r_j", attr), r_j);
  return v;
}

Hur1KgcSession hur1_kgc_session_from(const ValueMap& v) { return Hur1KgcSession{v.scalar("x"), v.scalar("t")}; }

Hur1AaSession hur1_aa_session_from(const ValueMap& v) {
  return Hur1AaSession{v.scalar("r"), v.indexed<Scalar>("r_j"), v.g0("A")};
}

Hur2CaSession hur2_ca_session_from(const ValueMap& v) {
  Hur2CaSession s;
  for (std::size_t i = 1;; ++i) {
    const std::string name = key_of("gamma", std::to_string(i));
    if (!v.contains(name)) break;
    s.gamma.push_back(v.scalar(name));
  }
  s.r_t = v.scalar("r_t");
  s.r_prime = v.scalar("r'");
  return s;
}

WangKaSession wang_ka_session_from(const ValueMap& v) {
  return WangKaSession{v.scalar("r"), v.scalar("theta"), v.g0("X1"), v.g0("X2")};
}

WangCspSession wang_csp_session_from(const ValueMap& v) {
  return WangCspSession{v.scalar("x"),  v.scalar("rho1"), v.scalar("rho2"), v.g0("Y1"),
                        v.g0("Y2"),     v.g0("Y3"),       v.g0("D")};
}

LinKaSession lin_ka_session_from(const ValueMap& v) {
  return LinKaSession{v.scalar("tau"), v.scalar("r2"), v.scalar("pi2"), v.scalar("varsigma"),
                      v.scalar("y"),   v.g0("A"),      v.g0("X1"),      LinCpk1{v.g0("CPK1.D"), v.indexed<GElem>("CPK1.D_x")}};
}

SecuredAaSession secured_aa_session_from(const ValueMap& v) {
  return SecuredAaSession{v.scalar("r"), v.indexed<Scalar>("r_j")};
}

// --- reports -------------------------------------------------------------------

Json forged_to_json(const ForgedKey& key) {
  return std::visit(
      [](const auto& k) -> Json {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return nullptr;
        } else {
          Json j;
          if constexpr (std::is_same_v<T, SecretKey>) j["form"] = "bsw";
          if constexpr (std::is_same_v<T, WatersKey>) j["form"] = "waters";
          if constexpr (std::is_same_v<T, LinKeyShares>) j["form"] = "lin";
          j["values"] = to_values(k).to_json();
          return j;
        }
      },
      key);
}

Json report_to_json(const AttackReport& report) {
  Json j;
  j["attack"] = report.attack;
  j["model"] = std::string(to_string(report.model));
  Json colluders = Json::array();
  for (const auto& c : report.colluders) colluders.push_back(c.label());
  j["colluders"] = std::move(colluders);
  j["inputs"] = detail::payload_json(report.inputs);
  j["recovered"] = detail::payload_json(report.recovered);
  j["forged"] = forged_to_json(report.forged);
  j["verdict"] = std::string(to_string(report.verdict));
  if (report.trials > 0) {
    j["trials"] = std::to_string(report.trials);
    j["successes"] = std::to_string(report.successes);
  }
  if (!report.note.empty()) j["note"] = report.note;
  return j;
}

}  // namespace dabe::codec
