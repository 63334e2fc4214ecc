#pragma once

// Single-authority ciphertext-policy ABE in the Bethencourt form. Every
// Bethencourt-form decentralized protocol must issue keys this scheme accepts.
//
//   PK = (h = g^beta, e(g,g)^alpha)          MK = (alpha, beta)
//   SK = (D = g^{(alpha+r)/beta}, {D_j = g^r H(j)^{r_j}, D'_j = g^{r_j}})
//   CT = (C~ = m e(g,g)^{alpha s}, C = h^s, {C_y = g^{q_y(0)}, C'_y = H(att(y))^{q_y(0)}})

#include <map>
#include <optional>
#include <string>

#include "dabe/group.hpp"
#include "dabe/policy.hpp"
#include "dabe/random.hpp"

namespace dabe {

struct PublicKey {
  GroupContext ctx;
  GElem h;
  GtElem egg_alpha;
  /// g^{1/beta}; published by two-authority models, unused by encrypt/decrypt.
  std::optional<GElem> h_inv;
};

struct MasterKey {
  Scalar alpha;
  Scalar beta;
};

struct KeyComponent {
  GElem d;        // g^r H(j)^{r_j}
  GElem d_prime;  // g^{r_j}

  friend bool operator==(const KeyComponent&, const KeyComponent&) = default;
};

struct SecretKey {
  /// Per-user r. Kept in memory for verification only; never serialized.
  std::optional<Scalar> gid_r;
  GElem d;
  std::map<std::string, KeyComponent> components;

  AttributeSet attributes() const;
};

struct LeafCiphertext {
  GElem c;        // g^{q_y(0)}
  GElem c_prime;  // H(att(y))^{q_y(0)}
};

struct Ciphertext {
  AccessTree policy;
  GtElem c_tilde;
  GElem c;
  std::map<NodePath, LeafCiphertext> leaves;
};

/// Draws "alpha" then "beta", both nonzero.
std::pair<PublicKey, MasterKey> base_setup(const GroupContext& ctx, RandomSource& rng);
PublicKey public_key_from(const GroupContext& ctx, const MasterKey& mk);

/// Draws "r", then "r_j" once per attribute in sorted order. Throws EmptyAttributeSet.
SecretKey base_keygen(const GroupContext& ctx, const MasterKey& mk, const AttributeSet& attrs, RandomSource& rng);
/// Key generation with a caller-chosen r; draws only "r_j".
SecretKey base_keygen_with_r(const GroupContext& ctx, const MasterKey& mk, const AttributeSet& attrs, const Scalar& r,
                             RandomSource& rng);

/// The per-attribute half of a key: D_j = g^r H(j)^{r_j}, D'_j = g^{r_j}, drawing "r_j" per attribute.
std::map<std::string, KeyComponent> issue_components(const GroupContext& ctx, const Scalar& r,
                                                     const AttributeSet& attrs, RandomSource& rng);
/// Same, also reporting the sampled r_j to the issuer.
std::map<std::string, KeyComponent> issue_components(const GroupContext& ctx, const Scalar& r,
                                                     const AttributeSet& attrs, RandomSource& rng,
                                                     std::map<std::string, Scalar>& r_j_out);

/// Draws "s" (nonzero), then the sharing polynomial coefficients.
Ciphertext encrypt(const PublicKey& pk, const GtElem& message, const AccessTree& policy, RandomSource& rng);

/// Throws PolicyNotSatisfied. A key that satisfies the policy but is not
/// internally consistent yields a wrong group element rather than an error.
GtElem decrypt(const SecretKey& sk, const Ciphertext& ct);

/// Checks both SecretKey invariants against pk; requires sk.gid_r.
///   e(D, h) = e(g,g)^{alpha+r},  e(D_j, g) / e(D'_j, H(j)) = e(g,g)^r
bool key_invariants_hold(const PublicKey& pk, const SecretKey& sk);

/// Validity check that needs only public data: every component must carry the
/// same r as D. Independent of gid_r.
bool key_consistent_with(const PublicKey& pk, const SecretKey& sk);

/// Round-trip oracle: encrypts a fresh random message under the AND of the
/// key's attributes and checks decryption returns it.
bool key_decrypts(const PublicKey& pk, const SecretKey& sk, RandomSource& rng);

}  // namespace dabe
