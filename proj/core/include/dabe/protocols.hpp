#pragma once

// Decentralized key-generation protocols. Each run is a sequential script of
// the model's numbered steps executed by an engine that plays every party;
// parties only compute from their own state and what they were sent.
//
// Randomness is drawn from the caller's RandomSource with fixed labels, in
// protocol order:
//   hur1     setup: alpha, beta              keygen: r, t, r_j...
//   hur2     setup: beta, alpha x m          keygen: gamma x m, tau x m, r_prime, r_j...
//   wang     setup: alpha1, beta, alpha2     keygen: r, rho1, theta, rho2
//   lin      setup: h x count, q, alpha      keygen: tau, sigma, r1, pi1, r2, pi2, xi, varsigma
//   secured  setup: alpha1, beta, alpha2     keygen: r, r_j...

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dabe/cpabe.hpp"
#include "dabe/group.hpp"
#include "dabe/policy.hpp"
#include "dabe/random.hpp"
#include "dabe/transcript.hpp"

namespace dabe {

/// Per-attribute configuration the protocols need but the models leave open.
struct RegistryEntry {
  std::uint32_t authority = 1;  // managing A_i in hur2
  std::uint64_t weight = 1;     // w_j in wang
  std::uint32_t h_index = 1;    // h_x in lin, 1-based

  friend bool operator==(const RegistryEntry&, const RegistryEntry&) = default;
};

using AttributeRegistry = std::map<std::string, RegistryEntry>;

struct ModelConfig {
  std::uint32_t authorities = 2;
  AttributeRegistry registry;
};

// --- Hur model I: KGC + AA --------------------------------------------------

struct Hur1Kgc {
  Scalar alpha;
  GtElem pk_egg_alpha;
};

struct Hur1Aa {
  Scalar beta;
  GElem pk_h;
  GElem pk_h_inv;
};

struct Hur1System {
  Hur1Kgc kgc;
  Hur1Aa aa;
  PublicKey pk;
  Transcript transcript;
};

struct Hur1KgcSession {
  Scalar x;
  Scalar t;
};

struct Hur1AaSession {
  Scalar r;
  std::map<std::string, Scalar> r_j;
  GElem a_received;
};

struct Hur1DuSession {
  Scalar t;
  GElem d_prime;
};

struct Hur1Run {
  SecretKey key;
  Transcript transcript;
  Hur1KgcSession kgc;
  Hur1AaSession aa;
  Hur1DuSession du;
};

Hur1System hur1_setup(const GroupContext& ctx, RandomSource& rng);
Hur1Run hur1_keygen(const Hur1System& sys, const AttributeSet& attrs, RandomSource& rng);

// --- Hur model II: CA + A_1..A_m --------------------------------------------

struct Hur2Ca {
  Scalar beta;
  GElem pk_h;
  std::uint32_t authorities = 0;
};

struct Hur2Authority {
  std::uint32_t index = 0;
  Scalar alpha;
  GtElem pk_egg_alpha;
};

struct Hur2System {
  Hur2Ca ca;
  std::vector<Hur2Authority> authorities;
  AttributeRegistry registry;
  PublicKey pk;
  Transcript transcript;
};

struct Hur2CaSession {
  std::vector<Scalar> gamma;
  Scalar r_t;
  Scalar r_prime;
};

struct Hur2AuthoritySession {
  std::uint32_t index = 0;
  Scalar x;
  Scalar tau;
  GElem b_received;
  GElem g_rt_minus_rprime;
  std::map<std::string, Scalar> r_j;
};

struct Hur2DuSession {
  std::vector<GElem> d_parts;
  GElem g_r_prime;
};

struct Hur2Run {
  SecretKey key;
  Transcript transcript;
  Hur2CaSession ca;
  std::vector<Hur2AuthoritySession> authorities;
  Hur2DuSession du;
};

/// Throws BadConfig for m < 1 or registry entries naming a missing authority.
Hur2System hur2_setup(const GroupContext& ctx, const ModelConfig& config, RandomSource& rng);
/// Throws UnassignedAttribute for attributes absent from the registry.
Hur2Run hur2_keygen(const Hur2System& sys, const AttributeSet& attrs, RandomSource& rng);

// --- Wang model: KA + CSP ---------------------------------------------------

struct WangKa {
  Scalar alpha1;
  Scalar beta;
  GElem pk_h;
  GtElem pk_egg_alpha1;
};

struct WangCsp {
  Scalar alpha2;
  GtElem pk_egg_alpha2;
};

/// (g^beta, e(g,g)^{alpha1} e(g,g)^{alpha2}) plus the authorities' separate halves.
struct WangPublicKey {
  GroupContext ctx;
  GElem h;
  GtElem egg_alpha;
  GtElem egg_alpha1;
  GtElem egg_alpha2;
};

/// Waters-form key: D = g^{alpha1+alpha2+r beta}, L = g^r, D_j = H(j)^{r w_j}.
struct WatersKey {
  std::optional<Scalar> gid_r;
  GElem d;
  GElem l;
  std::map<std::string, GElem> components;
  std::map<std::string, Scalar> weights;
};

bool operator==(const WatersKey& a, const WatersKey& b);

struct WangSystem {
  WangKa ka;
  WangCsp csp;
  AttributeRegistry registry;
  WangPublicKey pk;
  Transcript transcript;
};

struct WangKaSession {
  Scalar r;
  Scalar theta;
  GElem x1_received;
  GElem x2_received;
};

struct WangCspSession {
  Scalar x;
  Scalar rho1;
  Scalar rho2;
  GElem y1_received;
  GElem y2_received;
  GElem y3_received;
  GElem d;
};

struct WangRun {
  WatersKey key;
  Transcript transcript;
  WangKaSession ka;
  WangCspSession csp;
};

WangSystem wang_setup(const GroupContext& ctx, const ModelConfig& config, RandomSource& rng);
WangRun wang_keygen(const WangSystem& sys, const AttributeSet& attrs, RandomSource& rng);

/// Builds the Waters-form key from g^{alpha1+alpha2}; used by the forgeries.
WatersKey waters_key_from(const GroupContext& ctx, const GElem& g_alpha, const Scalar& beta, const Scalar& r,
                          const AttributeSet& attrs, const AttributeRegistry& registry);

/// e(D, g) = e(g,g)^{alpha1+alpha2} e(L, g^beta), and e(D_j, g) = e(H(j)^{w_j}, L) for every j.
bool waters_key_valid(const WangPublicKey& pk, const WatersKey& key);

// --- Lin model: KA + CS (+ DS) ----------------------------------------------

struct LinKa {
  Scalar q;
  GElem pk_g_q;
};

struct LinCs {
  Scalar alpha;
  GElem mk_g_alpha;
  GtElem pk_egg_alpha;
};

struct LinPublicKey {
  GroupContext ctx;
  GElem g_q;
  GtElem egg_alpha;
  /// h_1..h_count; attribute x uses h[registry[x].h_index - 1].
  std::vector<GElem> h;
};

struct LinCpk1 {
  GElem d;
  std::map<std::string, GElem> components;

  friend bool operator==(const LinCpk1&, const LinCpk1&) = default;
};

/// K' and CPK2 are held by CS, CPK1 by KA, CPK3 by DU.
struct LinKeyShares {
  GElem k_prime;
  LinCpk1 cpk1;
  GElem cpk2;
  Scalar cpk3;

  friend bool operator==(const LinKeyShares&, const LinKeyShares&) = default;
};

struct LinSystem {
  LinKa ka;
  LinCs cs;
  AttributeRegistry registry;
  LinPublicKey pk;
  Transcript transcript;
};

struct LinKaSession {
  Scalar tau;
  Scalar r2;
  Scalar pi2;
  Scalar varsigma;
  Scalar y;
  GElem a_received;
  GElem x1_received;
  LinCpk1 cpk1;
};

struct LinCsSession {
  Scalar x;
  Scalar sigma;
  Scalar r1;
  Scalar pi1;
  Scalar xi;
  Scalar y;
  GElem k_prime;
  GElem cpk2;
};

/// What the decryption server holds after KA and CS hand it their shares.
struct LinDsView {
  LinCpk1 cpk1;
  GElem cpk2;
};

struct LinRun {
  LinKeyShares shares;
  Transcript transcript;
  LinKaSession ka;
  LinCsSession cs;
};

/// Throws BadConfig for a zero h_index.
LinSystem lin_setup(const GroupContext& ctx, const ModelConfig& config, RandomSource& rng);
LinRun lin_keygen(const LinSystem& sys, const AttributeSet& attrs, RandomSource& rng);
/// Records the KA->DS and CS->DS share hand-off that precedes server-aided decryption.
LinDsView lin_decryption_handoff(LinRun& run);

/// CPK2 = K'^{CPK3}, e(K', g)^{CPK3} = e(g,g)^{alpha CPK3} e(CPK1.D, g^q), e(D_x, g) = e(h_x, CPK1.D).
bool lin_shares_valid(const LinPublicKey& pk, const AttributeRegistry& registry, const LinKeyShares& shares);

/// Builds a complete share set from g^alpha and fresh randomness; used by the forgeries.
/// Draws tau, r1, r2, pi1, pi2.
LinKeyShares lin_shares_from(const LinPublicKey& pk, const AttributeRegistry& registry, const GElem& g_alpha,
                             const Scalar& q, const AttributeSet& attrs, RandomSource& rng);

// --- secured model: KGC + AA ------------------------------------------------

struct SecuredKgc {
  Scalar alpha1;
  Scalar beta;
  GElem pk_h;
  GtElem pk_egg_alpha1;
};

struct SecuredAa {
  Scalar alpha2;
  GtElem pk_egg_alpha2;
};

struct SecuredSystem {
  SecuredKgc kgc;
  SecuredAa aa;
  PublicKey pk;
  Transcript transcript;
};

struct SecuredKgcSession {
  Scalar x;
};

struct SecuredAaSession {
  Scalar r;
  std::map<std::string, Scalar> r_j;
};

struct SecuredRun {
  SecretKey key;
  Transcript transcript;
  SecuredKgcSession kgc;
  SecuredAaSession aa;
};

SecuredSystem secured_setup(const GroupContext& ctx, RandomSource& rng);
SecuredRun secured_keygen(const SecuredSystem& sys, const AttributeSet& attrs, RandomSource& rng);

}  // namespace dabe
