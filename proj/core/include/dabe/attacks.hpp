#pragma once

// Collusion attacks against the decentralized key-generation protocols.
//
// Attack entry points take only what the colluders hold: their own master
// state, their own per-run session, and the values a colluding user (or
// server) leaks to them. Victim state never appears in a signature, so
// recovered values are checked against the victim's *public* key only.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "dabe/cpabe.hpp"
#include "dabe/protocols.hpp"
#include "dabe/transcript.hpp"

namespace dabe {

enum class Verdict { RecoveredAndForged, ForgeryFailed, InsufficientKnowledge };

std::string_view to_string(Verdict v) noexcept;

using ForgedKey = std::variant<std::monostate, SecretKey, WatersKey, LinKeyShares>;

struct AttackReport {
  std::string attack;
  Model model = Model::hur1;
  std::vector<PartyId> colluders;
  Payload inputs;
  /// e.g. {"g^alpha", ...}; compared to victim values exponent-exactly by tests.
  Payload recovered;
  ForgedKey forged;
  Verdict verdict = Verdict::InsufficientKnowledge;
  std::uint64_t trials = 0;
  std::uint64_t successes = 0;
  std::string note;
};

// --- collusion among users ------------------------------------------------

enum class KeySource { first, second };

/// Builds a hybrid key: D from `d_from`, each attribute component from the
/// source named in `merge_plan` (attributes absent from the plan come from the
/// first key that has them). Distinct gid_r is the scenario this models but is
/// not enforced, so a harness may demonstrate the equal-r case.
SecretKey collude_dus(const SecretKey& first, const SecretKey& second,
                      const std::map<std::string, KeySource>& merge_plan, KeySource d_from = KeySource::first);

// --- collusion among all authorities (escrow) -------------------------------

struct Hur1Authorities {
  std::optional<Hur1Kgc> kgc;
  std::optional<Hur1Aa> aa;
};

struct Hur2Authorities {
  std::optional<Hur2Ca> ca;
  std::vector<Hur2Authority> authorities;
};

struct WangAuthorities {
  std::optional<WangKa> ka;
  std::optional<WangCsp> csp;
};

struct LinAuthorities {
  std::optional<LinKa> ka;
  std::optional<LinCs> cs;
};

struct SecuredAuthorities {
  std::optional<SecuredKgc> kgc;
  std::optional<SecuredAa> aa;
};

using AuthorityPool = std::variant<Hur1Authorities, Hur2Authorities, WangAuthorities, LinAuthorities, SecuredAuthorities>;

/// Key-issuing capability assembled from every authority's master secret.
class EscrowIssuer {
 public:
  Model model() const noexcept { return model_; }

  /// Bethencourt-form key with the given r; draws "r_j" per attribute.
  SecretKey issue_bsw(const GroupContext& ctx, const AttributeSet& attrs, const Scalar& r, RandomSource& rng) const;
  WatersKey issue_waters(const GroupContext& ctx, const AttributeSet& attrs, const Scalar& r,
                         const AttributeRegistry& registry) const;
  /// Draws tau, r1, pi1, r2, pi2.
  LinKeyShares issue_lin(const LinPublicKey& pk, const AttributeRegistry& registry, const AttributeSet& attrs,
                         RandomSource& rng) const;

 private:
  friend EscrowIssuer pool_master_keys(const AuthorityPool& pool);
  Model model_ = Model::hur1;
  Scalar alpha_;
  std::optional<Scalar> beta_;
  std::optional<Scalar> q_;
};

/// Throws MissingState unless every authority of the model is present.
EscrowIssuer pool_master_keys(const AuthorityPool& pool);

using ModelPublicKey = std::variant<PublicKey, WangPublicKey, LinPublicKey>;

/// Pools the authorities, issues a key for `attrs` to a user no authority ever
/// saw and checks it against the public key. Draws "r_star" for the
/// Bethencourt and Waters forms.
AttackReport attack_escrow(const AuthorityPool& pool, const ModelPublicKey& pk, const AttributeRegistry& registry,
                           const AttributeSet& attrs, RandomSource& rng);

/// Two users merge their keys per `merge_plan` and try a ciphertext under
/// `policy` that neither satisfies alone. Draws "m" then the encrypt draws.
AttackReport attack_du_collusion(const PublicKey& pk, const SecretKey& first, const SecretKey& second,
                                 const std::map<std::string, KeySource>& merge_plan, const AccessTree& policy,
                                 RandomSource& rng);

// --- collusion among authorities and users -----------------------------------

/// AA + DU against Hur I: g^alpha = ((A^t)^{1/beta}) / g^r, then a key for r_star.
AttackReport attack_hur1(const PublicKey& pk, const Hur1Aa& aa, const Hur1AaSession& session,
                         const std::optional<Scalar>& t_from_du, const Scalar& r_star, const AttributeSet& attrs,
                         RandomSource& rng);

/// KGC + DU against Hur I. KGC sees only x, t and the user's key, none of
/// which isolates beta or r; always InsufficientKnowledge.
AttackReport attack_hur1_kgc(const Hur1Kgc& kgc, const Hur1KgcSession& session, const SecretKey& du_key);

/// CA + DU against Hur II: g^{sum alpha_i} = D^beta / g^{r_t}.
AttackReport attack_hur2(const PublicKey& pk, const Hur2Ca& ca, const Hur2CaSession& session,
                         const std::optional<GElem>& d_from_du, const Scalar& r_star, const AttributeSet& attrs,
                         RandomSource& rng);

/// KA + DU against Wang: g^{alpha2} = D / g^{alpha1 + beta r}.
AttackReport attack_wang(const WangPublicKey& pk, const AttributeRegistry& registry, const WangKa& ka,
                         const WangKaSession& session, const std::optional<GElem>& d_from_du, const Scalar& r_star,
                         const AttributeSet& attrs);

/// CSP + DU against Wang. CSP never learns beta or r; always InsufficientKnowledge.
AttackReport attack_wang_csp(const WangCsp& csp, const WangCspSession& session, const std::optional<GElem>& d_from_du);

/// KA + DS + DU against Lin: K' = CPK2^{1/CPK3}, g^alpha = K' / g^{q tau},
/// then a complete share set from fresh tau, r1, r2, pi1, pi2.
AttackReport attack_lin(const LinPublicKey& pk, const AttributeRegistry& registry, const LinKa& ka,
                        const LinKaSession& session, const std::optional<GElem>& cpk2_from_ds,
                        const std::optional<Scalar>& cpk3_from_du, const AttributeSet& attrs, RandomSource& rng);

/// AA + DU against the secured model. No recipe isolates g^{alpha1} or
/// g^{1/beta}; additionally runs `trials` guessed forgeries (beta', alpha1'
/// uniform) through the round-trip oracle and counts successes.
AttackReport attack_secured_attempt(const PublicKey& pk, const SecuredAa& aa, const SecuredAaSession& session,
                                    const std::optional<GElem>& d_from_du, std::uint64_t trials, RandomSource& rng);

/// Control case: the AA is also handed beta. D^beta / g^{alpha2 + r} then
/// yields g^{alpha1} and forgery succeeds, which is the escrow situation.
AttackReport attack_secured_with_beta(const PublicKey& pk, const SecuredAa& aa, const SecuredAaSession& session,
                                      const GElem& d_from_du, const Scalar& leaked_beta, const Scalar& r_star,
                                      const AttributeSet& attrs, RandomSource& rng);

/// D = (g^alpha g^r)^{1/beta} plus components for r; draws "r_j".
SecretKey bsw_key_from(const GroupContext& ctx, const GElem& g_alpha, const Scalar& beta, const Scalar& r,
                       const AttributeSet& attrs, RandomSource& rng);

}  // namespace dabe
