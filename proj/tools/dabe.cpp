// dabe: scenario setup, key generation, file encryption and collusion-attack
// demonstrations over the decentralized CP-ABE models.
//
// Exit codes: 0 success, 2 attack verdict differs from the prediction,
// 64 usage error, 70 unexpected failure, 10 + Errc for library errors.
// Every failure writes one JSON line {"error", "code", "message"} to stderr.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include <CLI11.hpp>

#include "dabe/attacks.hpp"
#include "dabe/codec.hpp"
#include "dabe/demo.hpp"
#include "dabe/kem.hpp"
#include "dabe/scenario.hpp"

namespace fs = std::filesystem;
using dabe::Errc;
using dabe::Error;
using Json = nlohmann::ordered_json;

namespace {

constexpr int kExitMismatch = 2;
constexpr int kExitUsage = 64;
constexpr int kExitInternal = 70;

int exit_code(Errc code) { return 10 + static_cast<int>(code); }

void report_error(std::string_view name, int code, std::string_view message) {
  Json j{{"error", name}, {"code", code}, {"message", message}};
  std::cerr << j.dump() << '\n';
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::IoError, "cannot read " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const fs::path& path, std::string_view contents) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out || !out.write(contents.data(), static_cast<std::streamsize>(contents.size())))
    throw Error(Errc::IoError, "cannot write " + path.string());
}

Json read_json(const fs::path& path) {
  try {
    return Json::parse(read_file(path));
  } catch (const Json::parse_error& e) {
    throw Error(Errc::MalformedEncoding, path.string() + ": " + e.what());
  }
}

void write_json(const fs::path& path, const Json& j) { write_file(path, j.dump(2) + "\n"); }

dabe::codec::Document load_doc(const fs::path& path, std::string_view kind) {
  dabe::codec::Document doc = dabe::codec::document_from_json(read_json(path));
  if (doc.kind != kind)
    throw Error(Errc::MalformedEncoding, path.string() + " is a " + doc.kind + " file, expected " + std::string(kind));
  return doc;
}

dabe::AttributeSet parse_attrs(const std::vector<std::string>& raw) {
  dabe::AttributeSet out;
  for (const auto& item : raw) {
    std::stringstream ss(item);
    std::string part;
    while (std::getline(ss, part, ',')) {
      const auto b = part.find_first_not_of(' ');
      const auto e = part.find_last_not_of(' ');
      if (b != std::string::npos) out.insert(part.substr(b, e - b + 1));
    }
  }
  return out;
}

/// FNV-1a, only for spreading default seeds across distinct requests.
std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// --seed, then DABE_SEED, then the scenario seed mixed with `salt`.
std::uint64_t pick_seed(const std::optional<std::uint64_t>& flag, std::uint64_t scenario_seed, std::uint64_t stream,
                        std::string_view salt) {
  if (flag) return *flag;
  if (auto env = dabe::seed_from_env()) return *env;
  return dabe::derive_seed(scenario_seed ^ fnv1a(salt), stream);
}

std::uint64_t scenario_seed_of(const dabe::codec::Document& pk) {
  if (!pk.extra.contains("seed")) return 0;
  return std::stoull(pk.extra.at("seed").get<std::string>());
}

std::string join(const dabe::AttributeSet& attrs) {
  std::string out;
  for (const auto& a : attrs) out += (out.empty() ? "" : ",") + a;
  return out;
}

// --- public key and party states ----------------------------------------------

struct PublicMaterial {
  dabe::codec::Document doc;
  dabe::AttributeRegistry registry;
  std::uint32_t authorities = 0;

  dabe::Model model() const { return doc.model; }
  const dabe::GroupContext& ctx() const { return doc.ctx; }

  dabe::PublicKey bsw() const {
    if (model() == dabe::Model::wang || model() == dabe::Model::lin)
      throw Error(Errc::ModelMismatch, std::string(to_string(model())) + " does not issue Bethencourt-form keys");
    return dabe::codec::public_key_from_values(ctx(), doc.values);
  }
  dabe::WangPublicKey wang() const { return dabe::codec::wang_public_key_from_values(ctx(), doc.values); }
  dabe::LinPublicKey lin() const { return dabe::codec::lin_public_key_from_values(ctx(), doc.values); }
};

PublicMaterial load_pk(const fs::path& path) {
  PublicMaterial pm{load_doc(path, "public-key"), {}, 0};
  if (pm.doc.extra.contains("registry")) pm.registry = dabe::codec::registry_from_json(pm.doc.extra.at("registry"));
  if (pm.doc.extra.contains("authorities")) pm.authorities = pm.doc.extra.at("authorities").get<std::uint32_t>();
  return pm;
}

/// Party states keyed by label ("KGC", "A2", ...), checked against the public key.
std::map<std::string, dabe::codec::Document> load_states(const std::vector<std::string>& paths,
                                                         const PublicMaterial& pm) {
  std::map<std::string, dabe::codec::Document> out;
  for (const auto& p : paths) {
    dabe::codec::Document doc = load_doc(p, "party-state");
    if (doc.model != pm.model())
      throw Error(Errc::ModelMismatch, p + " belongs to " + std::string(to_string(doc.model)) + ", public key to " +
                                           std::string(to_string(pm.model())));
    if (!(doc.ctx.params() == pm.ctx().params())) throw Error(Errc::ParamMismatch, p + " uses different group parameters");
    out.insert_or_assign(doc.party, std::move(doc));
  }
  return out;
}

const dabe::codec::ValueMap& state(const std::map<std::string, dabe::codec::Document>& states, const std::string& who) {
  auto it = states.find(who);
  if (it == states.end()) throw Error(Errc::MissingState, "no " + who + " state file given");
  return it->second.values;
}

template <class T>
std::optional<T> optional_state(const std::map<std::string, dabe::codec::Document>& states, const std::string& who,
                                T (*from)(const dabe::codec::ValueMap&)) {
  auto it = states.find(who);
  if (it == states.end()) return std::nullopt;
  return from(it->second.values);
}

dabe::codec::Document make_doc(std::string kind, dabe::Model model, std::string party, const dabe::GroupContext& ctx,
                               dabe::codec::ValueMap values, Json extra = Json::object()) {
  return dabe::codec::Document{std::move(kind), model, std::move(party), ctx, std::move(values), std::move(extra)};
}

// --- setup ----------------------------------------------------------------------

struct SetupOptions {
  std::string config;
  std::string out_dir = ".";
};

int cmd_setup(const SetupOptions& opt) {
  const dabe::ScenarioConfig cfg = dabe::scenario_from_json(read_json(opt.config), dabe::seed_from_env());
  const dabe::GroupContext ctx = cfg.context();
  dabe::SeededRandom rng(dabe::derive_seed(cfg.seed, 0));
  const fs::path dir(opt.out_dir);
  Json pk_extra{{"seed", std::to_string(cfg.seed)},
                {"authorities", cfg.authorities},
                {"registry", dabe::codec::registry_to_json(cfg.registry)}};
  std::vector<std::string> written;
  auto emit_state = [&](const std::string& file, const std::string& party, dabe::codec::ValueMap values,
                        Json extra = Json::object()) {
    write_json(dir / file, to_json(make_doc("party-state", cfg.model, party, ctx, std::move(values), std::move(extra))));
    written.push_back(file);
  };
  dabe::codec::ValueMap pk_values;
  std::string transcript;

  switch (cfg.model) {
    case dabe::Model::hur1: {
      const auto sys = dabe::hur1_setup(ctx, rng);
      emit_state("kgc.state", "KGC", dabe::codec::to_values(sys.kgc));
      emit_state("aa.state", "AA", dabe::codec::to_values(sys.aa));
      pk_values = dabe::codec::to_values(sys.pk);
      transcript = sys.transcript.to_jsonl();
      break;
    }
    case dabe::Model::hur2: {
      const auto sys = dabe::hur2_setup(ctx, cfg.model_config(), rng);
      emit_state("ca.state", "CA", dabe::codec::to_values(sys.ca), Json{{"authorities", sys.ca.authorities}});
      for (const auto& a : sys.authorities)
        emit_state("a" + std::to_string(a.index) + ".state", "A" + std::to_string(a.index), dabe::codec::to_values(a),
                   Json{{"index", a.index}});
      pk_values = dabe::codec::to_values(sys.pk);
      transcript = sys.transcript.to_jsonl();
      break;
    }
    case dabe::Model::wang: {
      const auto sys = dabe::wang_setup(ctx, cfg.model_config(), rng);
      emit_state("ka.state", "KA", dabe::codec::to_values(sys.ka));
      emit_state("csp.state", "CSP", dabe::codec::to_values(sys.csp));
      pk_values = dabe::codec::to_values(sys.pk);
      transcript = sys.transcript.to_jsonl();
      break;
    }
    case dabe::Model::lin: {
      const auto sys = dabe::lin_setup(ctx, cfg.model_config(), rng);
      emit_state("ka.state", "KA", dabe::codec::to_values(sys.ka));
      emit_state("cs.state", "CS", dabe::codec::to_values(sys.cs));
      pk_values = dabe::codec::to_values(sys.pk);
      transcript = sys.transcript.to_jsonl();
      break;
    }
    case dabe::Model::secured: {
      const auto sys = dabe::secured_setup(ctx, rng);
      emit_state("kgc.state", "KGC", dabe::codec::to_values(sys.kgc));
      emit_state("aa.state", "AA", dabe::codec::to_values(sys.aa));
      pk_values = dabe::codec::to_values(sys.pk);
      transcript = sys.transcript.to_jsonl();
      break;
    }
  }
  write_json(dir / "pk.json", to_json(make_doc("public-key", cfg.model, "", ctx, std::move(pk_values), pk_extra)));
  write_file(dir / "setup.transcript.jsonl", transcript);
  written.push_back("pk.json");
  written.push_back("setup.transcript.jsonl");
  std::cout << Json{{"model", std::string(to_string(cfg.model))}, {"files", written}}.dump() << '\n';
  return 0;
}

// --- keygen -----------------------------------------------------------------------

struct KeygenOptions {
  std::string model;
  std::string pk;
  std::vector<std::string> states;
  std::vector<std::string> attrs;
  std::string out;
  std::optional<std::uint64_t> seed;
};

int cmd_keygen(const KeygenOptions& opt) {
  const PublicMaterial pm = load_pk(opt.pk);
  if (!opt.model.empty() && dabe::model_from_string(opt.model) != pm.model())
    throw Error(Errc::ModelMismatch, "--model " + opt.model + " but the public key is for " +
                                         std::string(to_string(pm.model())));
  const auto states = load_states(opt.states, pm);
  const dabe::AttributeSet attrs = parse_attrs(opt.attrs);
  if (attrs.empty()) throw Error(Errc::EmptyAttributeSet, "--attrs is empty");
  const dabe::GroupContext& ctx = pm.ctx();
  dabe::SeededRandom rng(pick_seed(opt.seed, scenario_seed_of(pm.doc), 1, "keygen:" + join(attrs)));
  const dabe::Model model = pm.model();
  const dabe::ModelConfig config{pm.authorities, pm.registry};

  fs::path stem(opt.out);
  stem.replace_extension();
  std::vector<std::string> written;
  auto emit_session = [&](const std::string& party, dabe::codec::ValueMap values) {
    const fs::path path = stem.string() + "." + party + ".session.json";
    write_json(path, to_json(make_doc("session", model, party, ctx, std::move(values))));
    written.push_back(path.string());
  };
  auto emit_key = [&](std::string form, dabe::codec::ValueMap values) {
    write_json(opt.out, to_json(make_doc("secret-key", model, "DU", ctx, std::move(values), Json{{"form", form}})));
    written.push_back(opt.out);
  };
  std::string transcript;
  bool valid = false;

  switch (model) {
    case dabe::Model::hur1: {
      const dabe::Hur1System sys{dabe::codec::hur1_kgc_from(state(states, "KGC")),
                                 dabe::codec::hur1_aa_from(state(states, "AA")), pm.bsw(),
                                 dabe::Transcript(model, std::nullopt)};
      const auto run = dabe::hur1_keygen(sys, attrs, rng);
      valid = dabe::key_invariants_hold(sys.pk, run.key);
      emit_key("bsw", dabe::codec::to_values(run.key));
      emit_session("KGC", dabe::codec::to_values(run.kgc));
      emit_session("AA", dabe::codec::to_values(run.aa));
      emit_session("DU", dabe::codec::to_values(run.du));
      transcript = run.transcript.to_jsonl();
      break;
    }
    case dabe::Model::hur2: {
      const auto& ca_doc = states.find("CA");
      if (ca_doc == states.end()) throw Error(Errc::MissingState, "no CA state file given");
      const std::uint32_t m = ca_doc->second.extra.value("authorities", pm.authorities);
      dabe::Hur2System sys{dabe::codec::hur2_ca_from(ca_doc->second.values, m), {}, pm.registry, pm.bsw(),
                           dabe::Transcript(model, std::nullopt)};
      for (std::uint32_t i = 1; i <= m; ++i)
        sys.authorities.push_back(dabe::codec::hur2_authority_from(state(states, "A" + std::to_string(i)), i));
      const auto run = dabe::hur2_keygen(sys, attrs, rng);
      valid = dabe::key_invariants_hold(sys.pk, run.key);
      emit_key("bsw", dabe::codec::to_values(run.key));
      emit_session("CA", dabe::codec::to_values(run.ca));
      for (const auto& a : run.authorities) emit_session("A" + std::to_string(a.index), dabe::codec::to_values(a));
      transcript = run.transcript.to_jsonl();
      break;
    }
    case dabe::Model::wang: {
      const dabe::WangSystem sys{dabe::codec::wang_ka_from(state(states, "KA")),
                                 dabe::codec::wang_csp_from(state(states, "CSP")), config.registry, pm.wang(),
                                 dabe::Transcript(model, std::nullopt)};
      const auto run = dabe::wang_keygen(sys, attrs, rng);
      valid = dabe::waters_key_valid(sys.pk, run.key);
      emit_key("waters", dabe::codec::to_values(run.key));
      emit_session("KA", dabe::codec::to_values(run.ka));
      emit_session("CSP", dabe::codec::to_values(run.csp));
      transcript = run.transcript.to_jsonl();
      break;
    }
    case dabe::Model::lin: {
      const dabe::LinSystem sys{dabe::codec::lin_ka_from(state(states, "KA")),
                                dabe::codec::lin_cs_from(state(states, "CS")), config.registry, pm.lin(),
                                dabe::Transcript(model, std::nullopt)};
      auto run = dabe::lin_keygen(sys, attrs, rng);
      const dabe::LinDsView ds = dabe::lin_decryption_handoff(run);
      valid = dabe::lin_shares_valid(sys.pk, sys.registry, run.shares);
      emit_key("lin", dabe::codec::to_values(run.shares));
      emit_session("KA", dabe::codec::to_values(run.ka));
      emit_session("CS", dabe::codec::to_values(run.cs));
      emit_session("DS", dabe::codec::to_values(ds));
      dabe::codec::ValueMap du;
      du.put("CPK3", run.shares.cpk3);
      emit_session("DU", std::move(du));
      transcript = run.transcript.to_jsonl();
      break;
    }
    case dabe::Model::secured: {
      const dabe::SecuredSystem sys{dabe::codec::secured_kgc_from(state(states, "KGC")),
                                    dabe::codec::secured_aa_from(state(states, "AA")), pm.bsw(),
                                    dabe::Transcript(model, std::nullopt)};
      const auto run = dabe::secured_keygen(sys, attrs, rng);
      valid = dabe::key_invariants_hold(sys.pk, run.key);
      emit_key("bsw", dabe::codec::to_values(run.key));
      emit_session("KGC", dabe::codec::to_values(run.kgc));
      emit_session("AA", dabe::codec::to_values(run.aa));
      transcript = run.transcript.to_jsonl();
      break;
    }
  }
  const std::string tpath = stem.string() + ".transcript.jsonl";
  write_file(tpath, transcript);
  written.push_back(tpath);
  std::cout << Json{{"model", std::string(to_string(model))}, {"valid", valid}, {"files", written}}.dump() << '\n';
  return valid ? 0 : exit_code(Errc::ForgedOrWrongKey);
}

// --- encrypt / decrypt ----------------------------------------------------------------

struct CryptOptions {
  std::string key;
  std::string policy;
  std::string in;
  std::string out;
  std::optional<std::uint64_t> seed;
};

int cmd_encrypt(const CryptOptions& opt) {
  const PublicMaterial pm = load_pk(opt.key);
  const dabe::PublicKey pk = pm.bsw();
  const dabe::AccessTree policy = dabe::parse_policy(opt.policy);
  const std::string data = read_file(opt.in);
  dabe::SeededRandom rng(pick_seed(opt.seed, scenario_seed_of(pm.doc), 2, "encrypt:" + opt.policy + ":" + data));
  const std::vector<std::uint8_t> bytes(data.begin(), data.end());
  Json env = dabe::envelope_to_json(dabe::kem_encrypt(pk, policy, bytes, rng));
  env["model"] = std::string(to_string(pm.model()));
  write_json(opt.out, env);
  return 0;
}

int cmd_decrypt(const CryptOptions& opt) {
  const dabe::codec::Document key = load_doc(opt.key, "secret-key");
  if (key.extra.value("form", "") != "bsw")
    throw Error(Errc::ModelMismatch, "only Bethencourt-form keys decrypt files");
  const Json ct = read_json(opt.in);
  if (!ct.contains("params")) throw Error(Errc::MalformedEncoding, "ciphertext has no params");
  const dabe::GroupContext ct_ctx = dabe::codec::context_from_json(ct.at("params"));
  if (!(ct_ctx.params() == key.ctx.params()))
    throw Error(Errc::ParamMismatch, "key and ciphertext use different group parameters");
  const dabe::SecretKey sk = dabe::codec::secret_key_from(key.values);
  const auto plain = dabe::kem_decrypt(sk, dabe::envelope_from_json(key.ctx, ct));
  write_file(opt.out, std::string_view(reinterpret_cast<const char*>(plain.data()), plain.size()));
  return 0;
}

// --- attack ------------------------------------------------------------------------------

struct AttackOptions {
  std::string type;
  std::string model;
  std::string pk;
  std::vector<std::string> states;
  std::vector<std::string> sessions;
  std::vector<std::string> leaks;
  std::vector<std::string> keys;
  std::string policy;
  std::vector<std::string> attrs;
  std::string out;
  std::string forged_out;
  std::uint64_t trials = 1000;
  std::optional<std::uint64_t> seed;
};

/// Every value from the given session/key files, later files overriding earlier ones.
dabe::codec::ValueMap merge_values(const std::vector<std::string>& paths, const PublicMaterial& pm) {
  dabe::codec::ValueMap out;
  for (const auto& p : paths) {
    const dabe::codec::Document doc = dabe::codec::document_from_json(read_json(p));
    if (doc.model != pm.model()) throw Error(Errc::ModelMismatch, p + " belongs to another model");
    if (!(doc.ctx.params() == pm.ctx().params())) throw Error(Errc::ParamMismatch, p + " uses different group parameters");
    for (const auto& [name, value] : doc.values.items()) out.put(name, value);
  }
  return out;
}

template <class T>
T leaked(const dabe::codec::ValueMap& leaks, const char* name, const char* who) {
  if (!leaks.contains(name))
    throw Error(Errc::MissingInput, std::string("attack needs the leaked value ") + name + " from " + who);
  const auto& e = leaks.get(name);
  if (const T* v = std::get_if<T>(&e)) return *v;
  throw Error(Errc::MalformedEncoding, std::string("leaked ") + name + " has the wrong kind");
}

dabe::AttackReport run_authority_du(const AttackOptions& opt, const PublicMaterial& pm, dabe::RandomSource& rng) {
  const auto states = load_states(opt.states, pm);
  const auto session = merge_values(opt.sessions, pm);
  const auto leaks = merge_values(opt.leaks, pm);
  const dabe::GroupContext& ctx = pm.ctx();
  dabe::AttributeSet attrs = parse_attrs(opt.attrs);
  if (attrs.empty()) {
    for (const auto& [name, _] : pm.registry) attrs.insert(name);
  }
  if (attrs.empty()) throw Error(Errc::EmptyAttributeSet, "--attrs is needed for the forged key");

  switch (pm.model()) {
    case dabe::Model::hur1:
      if (states.contains("KGC") && !states.contains("AA"))
        return dabe::attack_hur1_kgc(dabe::codec::hur1_kgc_from(state(states, "KGC")),
                                     dabe::codec::hur1_kgc_session_from(session),
                                     dabe::codec::secret_key_from(leaks));
      return dabe::attack_hur1(pm.bsw(), dabe::codec::hur1_aa_from(state(states, "AA")),
                               dabe::codec::hur1_aa_session_from(session),
                               leaked<dabe::Scalar>(leaks, "t", "the DU session"), rng.nonzero(ctx, "r_star"), attrs,
                               rng);
    case dabe::Model::hur2:
      return dabe::attack_hur2(pm.bsw(), dabe::codec::hur2_ca_from(state(states, "CA"), pm.authorities),
                               dabe::codec::hur2_ca_session_from(session),
                               leaked<dabe::GElem>(leaks, "D", "the DU key"), rng.nonzero(ctx, "r_star"), attrs, rng);
    case dabe::Model::wang:
      if (states.contains("CSP") && !states.contains("KA"))
        return dabe::attack_wang_csp(dabe::codec::wang_csp_from(state(states, "CSP")),
                                     dabe::codec::wang_csp_session_from(session),
                                     leaks.contains("D") ? std::optional(leaks.g0("D")) : std::nullopt);
      return dabe::attack_wang(pm.wang(), pm.registry, dabe::codec::wang_ka_from(state(states, "KA")),
                               dabe::codec::wang_ka_session_from(session),
                               leaked<dabe::GElem>(leaks, "D", "the DU key"), rng.nonzero(ctx, "r_star"), attrs);
    case dabe::Model::lin:
      return dabe::attack_lin(pm.lin(), pm.registry, dabe::codec::lin_ka_from(state(states, "KA")),
                              dabe::codec::lin_ka_session_from(session),
                              leaked<dabe::GElem>(leaks, "CPK2", "the DS"),
                              leaked<dabe::Scalar>(leaks, "CPK3", "the DU"), attrs, rng);
    case dabe::Model::secured:
      return dabe::attack_secured_attempt(pm.bsw(), dabe::codec::secured_aa_from(state(states, "AA")),
                                          dabe::codec::secured_aa_session_from(session),
                                          leaked<dabe::GElem>(leaks, "D", "the DU key"), opt.trials, rng);
  }
  throw Error(Errc::BadConfig, "unknown model");
}

dabe::AttackReport run_escrow(const AttackOptions& opt, const PublicMaterial& pm, dabe::RandomSource& rng) {
  const auto states = load_states(opt.states, pm);
  dabe::AttributeSet attrs = parse_attrs(opt.attrs);
  if (attrs.empty()) {
    for (const auto& [name, _] : pm.registry) attrs.insert(name);
  }
  if (attrs.empty()) throw Error(Errc::EmptyAttributeSet, "--attrs is needed for the escrowed key");
  namespace c = dabe::codec;
  switch (pm.model()) {
    case dabe::Model::hur1:
      return dabe::attack_escrow(dabe::Hur1Authorities{optional_state(states, "KGC", &c::hur1_kgc_from),
                                                       optional_state(states, "AA", &c::hur1_aa_from)},
                                 pm.bsw(), pm.registry, attrs, rng);
    case dabe::Model::hur2: {
      dabe::Hur2Authorities pool;
      if (auto it = states.find("CA"); it != states.end())
        pool.ca = c::hur2_ca_from(it->second.values, it->second.extra.value("authorities", pm.authorities));
      for (const auto& [label, doc] : states) {
        if (label.size() > 1 && label[0] == 'A' && label != "AA")
          pool.authorities.push_back(c::hur2_authority_from(doc.values, doc.extra.value("index", 0U)));
      }
      return dabe::attack_escrow(pool, pm.bsw(), pm.registry, attrs, rng);
    }
    case dabe::Model::wang:
      return dabe::attack_escrow(dabe::WangAuthorities{optional_state(states, "KA", &c::wang_ka_from),
                                                       optional_state(states, "CSP", &c::wang_csp_from)},
                                 pm.wang(), pm.registry, attrs, rng);
    case dabe::Model::lin:
      return dabe::attack_escrow(dabe::LinAuthorities{optional_state(states, "KA", &c::lin_ka_from),
                                                      optional_state(states, "CS", &c::lin_cs_from)},
                                 pm.lin(), pm.registry, attrs, rng);
    case dabe::Model::secured:
      return dabe::attack_escrow(dabe::SecuredAuthorities{optional_state(states, "KGC", &c::secured_kgc_from),
                                                          optional_state(states, "AA", &c::secured_aa_from)},
                                 pm.bsw(), pm.registry, attrs, rng);
  }
  throw Error(Errc::BadConfig, "unknown model");
}

dabe::AttackReport run_du_collusion(const AttackOptions& opt, const PublicMaterial& pm, dabe::RandomSource& rng) {
  if (opt.keys.size() != 2) throw Error(Errc::MissingInput, "du-collusion needs exactly two --key files");
  if (opt.policy.empty()) throw Error(Errc::MissingInput, "du-collusion needs --policy");
  std::vector<dabe::SecretKey> keys;
  for (const auto& p : opt.keys) {
    const dabe::codec::Document doc = load_doc(p, "secret-key");
    if (doc.model != pm.model()) throw Error(Errc::ModelMismatch, p + " belongs to another model");
    if (doc.extra.value("form", "") != "bsw") throw Error(Errc::ModelMismatch, "du-collusion needs Bethencourt-form keys");
    keys.push_back(dabe::codec::secret_key_from(doc.values));
  }
  dabe::AttackReport report =
      dabe::attack_du_collusion(pm.bsw(), keys[0], keys[1], {}, dabe::parse_policy(opt.policy), rng);
  report.model = pm.model();
  return report;
}

int cmd_attack(const AttackOptions& opt) {
  const PublicMaterial pm = load_pk(opt.pk);
  if (!opt.model.empty() && dabe::model_from_string(opt.model) != pm.model())
    throw Error(Errc::ModelMismatch, "--model " + opt.model + " but the public key is for " +
                                         std::string(to_string(pm.model())));
  dabe::SeededRandom rng(pick_seed(opt.seed, scenario_seed_of(pm.doc), 3, "attack:" + opt.type));
  dabe::AttackReport report;
  if (opt.type == "authority-du") {
    report = run_authority_du(opt, pm, rng);
  } else if (opt.type == "escrow") {
    report = run_escrow(opt, pm, rng);
  } else {
    report = run_du_collusion(opt, pm, rng);
  }
  const Json j = dabe::codec::report_to_json(report);
  if (!opt.out.empty()) write_file(opt.out, j.dump() + "\n");
  if (!opt.forged_out.empty()) {
    if (std::holds_alternative<std::monostate>(report.forged))
      throw Error(Errc::MissingInput, "the attack produced no key to write");
    const Json forged = dabe::codec::forged_to_json(report.forged);
    write_json(opt.forged_out,
               to_json(make_doc("secret-key", pm.model(), "DU", pm.ctx(),
                                dabe::codec::ValueMap::from_json(pm.ctx(), forged.at("values")),
                                Json{{"form", forged.at("form")}})));
  }
  const dabe::Verdict want = dabe::expected_verdict(report);
  std::cout << "verdict " << to_string(report.verdict) << " (expected " << to_string(want) << ")";
  if (report.trials > 0) std::cout << ", " << report.successes << "/" << report.trials << " guessed forgeries decrypted";
  std::cout << '\n';
  return report.verdict == want ? 0 : kExitMismatch;
}

// --- demo ----------------------------------------------------------------------------------

struct DemoOptions {
  std::optional<std::uint64_t> seed;
  std::string out_dir = "demo";
  std::string prime = "default";
};

int cmd_demo(const DemoOptions& opt) {
  std::optional<std::uint64_t> seed = opt.seed ? opt.seed : dabe::seed_from_env();
  if (!seed) throw Error(Errc::BadConfig, "demo needs --seed (or DABE_SEED)");
  std::uint64_t prime = dabe::kDefaultPrime;
  if (opt.prime != "default") {
    try {
      prime = std::stoull(opt.prime);
    } catch (const std::exception&) {
      throw Error(Errc::BadConfig, "--prime must be \"default\" or a decimal integer");
    }
  }
  const auto files = dabe::run_demo(*seed, prime);
  bool all_match = true;
  for (const auto& f : files) {
    write_file(fs::path(opt.out_dir) / f.name, f.contents);
    if (f.name == "summary.json") {
      for (const auto& row : Json::parse(f.contents)) {
        std::cout << row.at("model").get<std::string>() << " " << row.at("attack").get<std::string>() << ": "
                  << row.at("verdict").get<std::string>() << (row.at("matches").get<bool>() ? "" : "  (UNEXPECTED)")
                  << '\n';
        all_match = all_match && row.at("matches").get<bool>();
      }
    }
  }
  return all_match ? 0 : kExitMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decentralized CP-ABE key generation and collusion-attack toolkit"};
  app.require_subcommand(1);

  SetupOptions setup;
  auto* setup_cmd = app.add_subcommand("setup", "Run a scenario's setup and write party states plus pk.json");
  setup_cmd->add_option("--config", setup.config, "Scenario JSON file")->required();
  setup_cmd->add_option("--out", setup.out_dir, "Output directory");

  KeygenOptions keygen;
  auto* keygen_cmd = app.add_subcommand("keygen", "Issue a user key by running the model's key-generation protocol");
  keygen_cmd->add_option("--model", keygen.model, "Expected model");
  keygen_cmd->add_option("--pk", keygen.pk, "pk.json from setup")->required();
  keygen_cmd->add_option("--state", keygen.states, "Party state file (repeatable)")->required();
  keygen_cmd->add_option("--attrs", keygen.attrs, "Comma-separated attributes")->required();
  keygen_cmd->add_option("--out", keygen.out, "Key file to write")->required();
  keygen_cmd->add_option("--seed", keygen.seed, "Seed for this run");

  CryptOptions enc;
  auto* enc_cmd = app.add_subcommand("encrypt", "Encrypt a file under a policy");
  enc_cmd->add_option("--pk", enc.key, "pk.json")->required();
  enc_cmd->add_option("--policy", enc.policy, "Access policy")->required();
  enc_cmd->add_option("--in", enc.in, "Plaintext file")->required();
  enc_cmd->add_option("--out", enc.out, "Ciphertext file")->required();
  enc_cmd->add_option("--seed", enc.seed, "Seed for this run");

  CryptOptions dec;
  auto* dec_cmd = app.add_subcommand("decrypt", "Decrypt a file with a user key");
  dec_cmd->add_option("--sk", dec.key, "Key file")->required();
  dec_cmd->add_option("--in", dec.in, "Ciphertext file")->required();
  dec_cmd->add_option("--out", dec.out, "Plaintext file")->required();

  AttackOptions attack;
  auto* attack_cmd = app.add_subcommand("attack", "Run a collusion attack and report the verdict");
  attack_cmd->add_option("--type", attack.type, "Attack class")
      ->required()
      ->check(CLI::IsMember({"du-collusion", "escrow", "authority-du"}));
  attack_cmd->add_option("--model", attack.model, "Expected model");
  attack_cmd->add_option("--pk", attack.pk, "pk.json")->required();
  attack_cmd->add_option("--state", attack.states, "Colluding authority state file (repeatable)");
  attack_cmd->add_option("--session", attack.sessions, "Colluding authority session file (repeatable)");
  attack_cmd->add_option("--leak", attack.leaks, "Session or key file leaked by a user or server (repeatable)");
  attack_cmd->add_option("--key", attack.keys, "User key file, for du-collusion (repeatable)");
  attack_cmd->add_option("--policy", attack.policy, "Target policy, for du-collusion");
  attack_cmd->add_option("--attrs", attack.attrs, "Attributes of the forged key");
  attack_cmd->add_option("--trials", attack.trials, "Guessed forgeries against the secured model");
  attack_cmd->add_option("--out", attack.out, "Report file");
  attack_cmd->add_option("--forged-out", attack.forged_out, "Write the forged or merged key as a key file");
  attack_cmd->add_option("--seed", attack.seed, "Seed for this run");

  DemoOptions demo;
  auto* demo_cmd = app.add_subcommand("demo", "Run every model and attack from one seed");
  demo_cmd->add_option("--seed", demo.seed, "Seed");
  demo_cmd->add_option("--out", demo.out_dir, "Output directory");
  demo_cmd->add_option("--prime", demo.prime, "\"default\" or a decimal prime");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    report_error("UsageError", kExitUsage, e.what());
    return kExitUsage;
  }

  try {
    if (*setup_cmd) return cmd_setup(setup);
    if (*keygen_cmd) return cmd_keygen(keygen);
    if (*enc_cmd) return cmd_encrypt(enc);
    if (*dec_cmd) return cmd_decrypt(dec);
    if (*attack_cmd) return cmd_attack(attack);
    if (*demo_cmd) return cmd_demo(demo);
  } catch (const Error& e) {
    report_error(to_string(e.code()), exit_code(e.code()), e.what());
    return exit_code(e.code());
  } catch (const fs::filesystem_error& e) {
    report_error("IoError", exit_code(Errc::IoError), e.what());
    return exit_code(Errc::IoError);
  } catch (const std::exception& e) {
    report_error("InternalError", kExitInternal, e.what());
    return kExitInternal;
  }
  return kExitUsage;
}
