#include "dabe/kem.hpp"

#include <algorithm>

#include "dabe/codec.hpp"
#include "digest.hpp"

namespace dabe {

namespace {

using Json = nlohmann::ordered_json;

std::vector<std::uint8_t> keystream(const GtElem& k, std::size_t size) {
  const std::string key = encode_text(k);
  std::vector<std::uint8_t> out;
  out.reserve(size + 32);
  for (std::uint64_t counter = 0; out.size() < size; ++counter) {
    detail::Sha256 h;
    h.update_framed("dabe-kem-stream").update_framed(key).update_u64(counter);
    const detail::Digest block = h.finish();
    out.insert(out.end(), block.begin(), block.end());
  }
  out.resize(size);
  return out;
}

detail::Digest tag(const GtElem& k, std::span<const std::uint8_t> plaintext) {
  detail::Sha256 h;
  h.update_framed("dabe-kem-mac").update_framed(encode_text(k)).update_u64(plaintext.size()).update(plaintext);
  return h.finish();
}

std::string to_hex(std::span<const std::uint8_t> bytes) {
  static constexpr char digits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (std::uint8_t b : bytes) {
    out += digits[b >> 4];
    out += digits[b & 0xf];
  }
  return out;
}

std::vector<std::uint8_t> from_hex(const Json& j) {
  if (!j.is_string()) throw Error(Errc::MalformedEncoding, "hex field must be a string");
  const auto& s = j.get_ref<const std::string&>();
  if (s.size() % 2 != 0) throw Error(Errc::MalformedEncoding, "odd-length hex string");
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    throw Error(Errc::MalformedEncoding, "invalid hex digit");
  };
  std::vector<std::uint8_t> out(s.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = static_cast<std::uint8_t>(nibble(s[2 * i]) << 4 | nibble(s[2 * i + 1]));
  return out;
}

const Json& field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name))
    throw Error(Errc::MalformedEncoding, std::string("missing field \"") + name + "\"");
  return j.at(name);
}

template <class T>
T element_as(const GroupContext& ctx, const Json& j) {
  Element e = codec::element_from_json(ctx, j);
  if (auto* v = std::get_if<T>(&e)) return *v;
  throw Error(Errc::MalformedEncoding, "encoded element has the wrong kind");
}

}  // namespace

KemEnvelope kem_encrypt(const PublicKey& pk, const AccessTree& policy, std::span<const std::uint8_t> plaintext,
                        RandomSource& rng) {
  const GtElem k = pk.ctx.gt_exp(rng.uniform(pk.ctx, "k"));
  KemEnvelope env{encrypt(pk, k, policy, rng), {}, tag(k, plaintext)};
  const auto stream = keystream(k, plaintext.size());
  env.payload.resize(plaintext.size());
  std::transform(plaintext.begin(), plaintext.end(), stream.begin(), env.payload.begin(),
                 [](std::uint8_t a, std::uint8_t b) { return static_cast<std::uint8_t>(a ^ b); });
  return env;
}

std::vector<std::uint8_t> kem_decrypt(const SecretKey& sk, const KemEnvelope& envelope) {
  const GtElem k = decrypt(sk, envelope.ciphertext);
  const auto stream = keystream(k, envelope.payload.size());
  std::vector<std::uint8_t> out(envelope.payload.size());
  std::transform(envelope.payload.begin(), envelope.payload.end(), stream.begin(), out.begin(),
                 [](std::uint8_t a, std::uint8_t b) { return static_cast<std::uint8_t>(a ^ b); });
  if (tag(k, out) != envelope.digest)
    throw Error(Errc::ForgedOrWrongKey, "recovered key fails the integrity digest");
  return out;
}

Json ciphertext_to_json(const Ciphertext& ct) {
  Json j;
  j["policy"] = ct.policy.to_string();
  j["c_tilde"] = codec::element_to_json(ct.c_tilde);
  j["c"] = codec::element_to_json(ct.c);
  Json leaves = Json::object();
  for (const auto& leaf : ct.policy.leaves()) {
    const LeafCiphertext& lc = ct.leaves.at(leaf.path);
    leaves[leaf.path] = {{"attr", leaf.attribute},
                         {"c", codec::element_to_json(lc.c)},
                         {"c_prime", codec::element_to_json(lc.c_prime)}};
  }
  j["leaves"] = std::move(leaves);
  return j;
}

Ciphertext ciphertext_from_json(const GroupContext& ctx, const Json& j) {
  const Json& policy = field(j, "policy");
  if (!policy.is_string()) throw Error(Errc::MalformedEncoding, "policy must be a string");
  Ciphertext ct{parse_policy(policy.get<std::string>()), element_as<GtElem>(ctx, field(j, "c_tilde")),
                element_as<GElem>(ctx, field(j, "c")), {}};
  const Json& leaves = field(j, "leaves");
  for (const auto& leaf : ct.policy.leaves()) {
    const Json& lj = field(leaves, leaf.path.c_str());
    if (field(lj, "attr") != leaf.attribute)
      throw Error(Errc::MalformedEncoding, "leaf " + leaf.path + " names the wrong attribute");
    ct.leaves.emplace(leaf.path,
                      LeafCiphertext{element_as<GElem>(ctx, field(lj, "c")), element_as<GElem>(ctx, field(lj, "c_prime"))});
  }
  if (leaves.size() != ct.leaves.size()) throw Error(Errc::MalformedEncoding, "ciphertext has extra leaves");
  return ct;
}

Json envelope_to_json(const KemEnvelope& envelope) {
  Json j;
  j["kind"] = "ciphertext";
  j["params"] = codec::params_to_json(envelope.ciphertext.c.context().params());
  j["abe"] = ciphertext_to_json(envelope.ciphertext);
  j["payload"] = to_hex(envelope.payload);
  j["digest"] = to_hex(envelope.digest);
  return j;
}

KemEnvelope envelope_from_json(const GroupContext& ctx, const Json& j) {
  KemEnvelope env{ciphertext_from_json(ctx, field(j, "abe")), from_hex(field(j, "payload")), {}};
  const auto digest = from_hex(field(j, "digest"));
  if (digest.size() != env.digest.size()) throw Error(Errc::MalformedEncoding, "digest must be 32 bytes");
  std::copy(digest.begin(), digest.end(), env.digest.begin());
  return env;
}

}  // namespace dabe
