#pragma once

// Hybrid encryption of arbitrary bytes: a random GT element k is encrypted
// under the policy, the payload is XORed with a SHA-256 keystream derived from
// k, and a keyed digest over k and the plaintext detects a wrong key.

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "dabe/cpabe.hpp"

namespace dabe {

struct KemEnvelope {
  Ciphertext ciphertext;
  std::vector<std::uint8_t> payload;
  std::array<std::uint8_t, 32> digest{};
};

/// Draws "k" (uniform), then the encrypt draws.
KemEnvelope kem_encrypt(const PublicKey& pk, const AccessTree& policy, std::span<const std::uint8_t> plaintext,
                        RandomSource& rng);

/// Throws PolicyNotSatisfied, or ForgedOrWrongKey when the recovered k fails the digest.
std::vector<std::uint8_t> kem_decrypt(const SecretKey& sk, const KemEnvelope& envelope);

nlohmann::ordered_json ciphertext_to_json(const Ciphertext& ct);
/// Throws MalformedEncoding, SyntaxError.
Ciphertext ciphertext_from_json(const GroupContext& ctx, const nlohmann::ordered_json& j);

nlohmann::ordered_json envelope_to_json(const KemEnvelope& envelope);
KemEnvelope envelope_from_json(const GroupContext& ctx, const nlohmann::ordered_json& j);

}  // namespace dabe
