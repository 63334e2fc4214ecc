#include "dabe/attacks.hpp"

namespace dabe {

std::string_view to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::RecoveredAndForged: return "RECOVERED_AND_FORGED";
    case Verdict::ForgeryFailed: return "FORGERY_FAILED";
    case Verdict::InsufficientKnowledge: return "INSUFFICIENT_KNOWLEDGE";
  }
  return "?";
}

SecretKey collude_dus(const SecretKey& first, const SecretKey& second,
                      const std::map<std::string, KeySource>& merge_plan, KeySource d_from) {
  SecretKey hybrid;
  hybrid.d = d_from == KeySource::first ? first.d : second.d;
  hybrid.gid_r = d_from == KeySource::first ? first.gid_r : second.gid_r;
  auto take = [&](const std::string& attr, const SecretKey& from) {
    auto it = from.components.find(attr);
    if (it != from.components.end()) hybrid.components.insert_or_assign(attr, it->second);
  };
  for (const auto& [attr, _] : second.components) take(attr, second);
  for (const auto& [attr, _] : first.components) take(attr, first);
  for (const auto& [attr, src] : merge_plan) take(attr, src == KeySource::first ? first : second);
  return hybrid;
}

SecretKey bsw_key_from(const GroupContext& ctx, const GElem& g_alpha, const Scalar& beta, const Scalar& r,
                       const AttributeSet& attrs, RandomSource& rng) {
  SecretKey key;
  key.gid_r = r;
  key.d = (g_alpha * ctx.g_exp(r)).pow(beta.inv());
  key.components = issue_components(ctx, r, attrs, rng);
  return key;
}

// --- escrow -----------------------------------------------------------------

namespace {

[[noreturn]] void missing(const char* who) {
  throw Error(Errc::MissingState, std::string("escrow pooling needs the ") + who + " master state");
}

}  // namespace

EscrowIssuer pool_master_keys(const AuthorityPool& pool) {
  EscrowIssuer issuer;
  std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, Hur1Authorities>) {
          if (!p.kgc) missing("KGC");
          if (!p.aa) missing("AA");
          issuer.model_ = Model::hur1;
          issuer.alpha_ = p.kgc->alpha;
          issuer.beta_ = p.aa->beta;
        } else if constexpr (std::is_same_v<T, Hur2Authorities>) {
          if (!p.ca) missing("CA");
          std::vector<bool> seen(p.ca->authorities + 1, false);
          Scalar alpha = p.ca->beta.context().zero();
          for (const auto& a : p.authorities) {
            if (a.index < 1 || a.index > p.ca->authorities || seen[a.index]) {
              throw Error(Errc::MissingState, "unexpected or duplicate attribute authority state");
            }
            seen[a.index] = true;
            alpha += a.alpha;
          }
          if (p.authorities.size() != p.ca->authorities) missing("A_1..A_m");
          issuer.model_ = Model::hur2;
          issuer.alpha_ = alpha;
          issuer.beta_ = p.ca->beta;
        } else if constexpr (std::is_same_v<T, WangAuthorities>) {
          if (!p.ka) missing("KA");
          if (!p.csp) missing("CSP");
          issuer.model_ = Model::wang;
          issuer.alpha_ = p.ka->alpha1 + p.csp->alpha2;
          issuer.beta_ = p.ka->beta;
        } else if constexpr (std::is_same_v<T, LinAuthorities>) {
          if (!p.ka) missing("KA");
          if (!p.cs) missing("CS");
          issuer.model_ = Model::lin;
          issuer.alpha_ = p.cs->alpha;
          issuer.q_ = p.ka->q;
        } else {
          if (!p.kgc) missing("KGC");
          if (!p.aa) missing("AA");
          issuer.model_ = Model::secured;
          issuer.alpha_ = p.kgc->alpha1 + p.aa->alpha2;
          issuer.beta_ = p.kgc->beta;
        }
      },
      pool);
  return issuer;
}

SecretKey EscrowIssuer::issue_bsw(const GroupContext& ctx, const AttributeSet& attrs, const Scalar& r,
                                  RandomSource& rng) const {
  if (!beta_ || model_ == Model::wang) throw Error(Errc::ModelMismatch, "model does not issue Bethencourt-form keys");
  if (attrs.empty()) throw Error(Errc::EmptyAttributeSet, "key generation needs at least one attribute");
  return base_keygen_with_r(ctx, MasterKey{alpha_, *beta_}, attrs, r, rng);
}

WatersKey EscrowIssuer::issue_waters(const GroupContext& ctx, const AttributeSet& attrs, const Scalar& r,
                                     const AttributeRegistry& registry) const {
  if (model_ != Model::wang) throw Error(Errc::ModelMismatch, "only the wang model issues Waters-form keys");
  return waters_key_from(ctx, ctx.g_exp(alpha_), *beta_, r, attrs, registry);
}

LinKeyShares EscrowIssuer::issue_lin(const LinPublicKey& pk, const AttributeRegistry& registry,
                                     const AttributeSet& attrs, RandomSource& rng) const {
  if (model_ != Model::lin) throw Error(Errc::ModelMismatch, "only the lin model issues share sets");
  return lin_shares_from(pk, registry, pk.ctx.g_exp(alpha_), *q_, attrs, rng);
}

namespace {

bool bsw_forgery_valid(const PublicKey& pk, const SecretKey& key, RandomSource& rng) {
  return key_invariants_hold(pk, key) && key_decrypts(pk, key, rng);
}

std::vector<PartyId> authorities_of(const AuthorityPool& pool) {
  return std::visit(
      [](const auto& p) -> std::vector<PartyId> {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, Hur1Authorities> || std::is_same_v<T, SecuredAuthorities>) {
          return {kKGC, kAA};
        } else if constexpr (std::is_same_v<T, Hur2Authorities>) {
          std::vector<PartyId> out{kCA};
          for (const auto& a : p.authorities) out.push_back(authority(a.index));
          return out;
        } else if constexpr (std::is_same_v<T, WangAuthorities>) {
          return {kKA, kCSP};
        } else {
          return {kKA, kCS};
        }
      },
      pool);
}

}  // namespace

AttackReport attack_escrow(const AuthorityPool& pool, const ModelPublicKey& pk, const AttributeRegistry& registry,
                           const AttributeSet& attrs, RandomSource& rng) {
  const EscrowIssuer issuer = pool_master_keys(pool);
  AttackReport report;
  report.attack = "escrow";
  report.model = issuer.model();
  report.colluders = authorities_of(pool);
  bool valid = false;
  if (const auto* bsw = std::get_if<PublicKey>(&pk)) {
    SecretKey key = issuer.issue_bsw(bsw->ctx, attrs, rng.nonzero(bsw->ctx, "r_star"), rng);
    valid = bsw_forgery_valid(*bsw, key, rng);
    report.forged = std::move(key);
  } else if (const auto* wang = std::get_if<WangPublicKey>(&pk)) {
    WatersKey key = issuer.issue_waters(wang->ctx, attrs, rng.nonzero(wang->ctx, "r_star"), registry);
    valid = waters_key_valid(*wang, key);
    report.forged = std::move(key);
  } else {
    const auto& lin = std::get<LinPublicKey>(pk);
    LinKeyShares shares = issuer.issue_lin(lin, registry, attrs, rng);
    valid = lin_shares_valid(lin, registry, shares);
    report.forged = std::move(shares);
  }
  report.verdict = valid ? Verdict::RecoveredAndForged : Verdict::ForgeryFailed;
  report.note = "pooled master secrets issue keys without any protocol run";
  return report;
}

AttackReport attack_du_collusion(const PublicKey& pk, const SecretKey& first, const SecretKey& second,
                                 const std::map<std::string, KeySource>& merge_plan, const AccessTree& policy,
                                 RandomSource& rng) {
  AttackReport report;
  report.attack = "du-collusion";
  report.model = Model::secured;
  report.colluders = {PartyId{Role::DU, 1}, PartyId{Role::DU, 2}};
  report.inputs = {{"D_1", first.d}, {"D_2", second.d}};
  SecretKey hybrid = collude_dus(first, second, merge_plan);
  const GtElem m = pk.ctx.gt_exp(rng.uniform(pk.ctx, "m"));
  const Ciphertext ct = encrypt(pk, m, policy, rng);
  bool recovered = false;
  try {
    recovered = decrypt(hybrid, ct) == m;
  } catch (const Error& e) {
    if (e.code() != Errc::PolicyNotSatisfied) throw;
    report.note = "merged attributes still do not satisfy the policy";
  }
  report.verdict = recovered ? Verdict::RecoveredAndForged : Verdict::ForgeryFailed;
  if (report.note.empty())
    report.note = recovered ? "components share one r, so the merged key decrypts"
                            : "components carry different r values; the pairing terms do not cancel";
  report.forged = std::move(hybrid);
  return report;
}

// --- authority + user -------------------------------------------------------

AttackReport attack_hur1(const PublicKey& pk, const Hur1Aa& aa, const Hur1AaSession& session,
                         const std::optional<Scalar>& t_from_du, const Scalar& r_star, const AttributeSet& attrs,
                         RandomSource& rng) {
  AttackReport report;
  report.attack = "authority-du";
  report.model = Model::hur1;
  report.colluders = {kAA, kDU};
  report.inputs = {{"A", session.a_received}};
  if (!t_from_du) {
    report.verdict = Verdict::InsufficientKnowledge;
    report.note = "the blinding exponent t was not leaked";
    return report;
  }
  report.inputs.push_back({"t", *t_from_du});
  const GroupContext& ctx = pk.ctx;
  const GElem g_x = session.a_received.pow(*t_from_du);            // g^{(alpha+r) beta}
  const GElem g_alpha_r = g_x.pow(aa.beta.inv());                  // g^{alpha+r}
  const GElem g_alpha = g_alpha_r / ctx.g_exp(session.r);          // g^alpha
  report.recovered = {{"g^alpha", g_alpha}};
  SecretKey forged = bsw_key_from(ctx, g_alpha, aa.beta, r_star, attrs, rng);
  const bool matches_pk = pair(g_alpha, ctx.g()) == pk.egg_alpha;
  const bool valid = bsw_forgery_valid(pk, forged, rng);
  report.verdict = matches_pk && valid ? Verdict::RecoveredAndForged : Verdict::ForgeryFailed;
  report.forged = std::move(forged);
  return report;
}

AttackReport attack_hur1_kgc(const Hur1Kgc&, const Hur1KgcSession& session, const SecretKey& du_key) {
  AttackReport report;
  report.attack = "authority-du";
  report.model = Model::hur1;
  report.colluders = {kKGC, kDU};
  report.inputs = {{"t", session.t}, {"D", du_key.d}};
  report.verdict = Verdict::InsufficientKnowledge;
  report.note = "KGC knows x = (alpha+r)beta but neither beta nor r separately";
  return report;
}

AttackReport attack_hur2(const PublicKey& pk, const Hur2Ca& ca, const Hur2CaSession& session,
                         const std::optional<GElem>& d_from_du, const Scalar& r_star, const AttributeSet& attrs,
                         RandomSource& rng) {
  AttackReport report;
  report.attack = "authority-du";
  report.model = Model::hur2;
  report.colluders = {kCA, kDU};
  if (!d_from_du) {
    report.verdict = Verdict::InsufficientKnowledge;
    report.note = "the user's D component was not leaked";
    return report;
  }
  report.inputs = {{"D", *d_from_du}};
  const GroupContext& ctx = pk.ctx;
  const GElem g_alpha = d_from_du->pow(ca.beta) / ctx.g_exp(session.r_t);
  report.recovered = {{"g^alpha", g_alpha}};
  SecretKey forged = bsw_key_from(ctx, g_alpha, ca.beta, r_star, attrs, rng);
  const bool matches_pk = pair(g_alpha, ctx.g()) == pk.egg_alpha;
  const bool valid = bsw_forgery_valid(pk, forged, rng);
  report.verdict = matches_pk && valid ? Verdict::RecoveredAndForged : Verdict::ForgeryFailed;
  report.forged = std::move(forged);
  return report;
}

AttackReport attack_wang(const WangPublicKey& pk, const AttributeRegistry& registry, const WangKa& ka,
                         const WangKaSession& session, const std::optional<GElem>& d_from_du, const Scalar& r_star,
                         const AttributeSet& attrs) {
  AttackReport report;
  report.attack = "authority-du";
  report.model = Model::wang;
  report.colluders = {kKA, kDU};
  if (!d_from_du) {
    report.verdict = Verdict::InsufficientKnowledge;
    report.note = "the user's D component was not leaked";
    return report;
  }
  report.inputs = {{"D", *d_from_du}};
  const GroupContext& ctx = pk.ctx;
  const GElem d_known = ctx.g_exp(ka.alpha1 + ka.beta * session.r);
  const GElem g_alpha2 = *d_from_du / d_known;
  report.recovered = {{"g^alpha2", g_alpha2}};
  WatersKey forged = waters_key_from(ctx, ctx.g_exp(ka.alpha1) * g_alpha2, ka.beta, r_star, attrs, registry);
  const bool matches_pk = pair(g_alpha2, ctx.g()) == pk.egg_alpha2;
  const bool valid = waters_key_valid(pk, forged);
  report.verdict = matches_pk && valid ? Verdict::RecoveredAndForged : Verdict::ForgeryFailed;
  report.forged = std::move(forged);
  return report;
}

AttackReport attack_wang_csp(const WangCsp&, const WangCspSession&, const std::optional<GElem>& d_from_du) {
  AttackReport report;
  report.attack = "authority-du";
  report.model = Model::wang;
  report.colluders = {kCSP, kDU};
  if (d_from_du) report.inputs = {{"D", *d_from_du}};
  report.verdict = Verdict::InsufficientKnowledge;
  report.note = "CSP holds alpha2 and blinded values only; beta and r stay with KA";
  return report;
}

AttackReport attack_lin(const LinPublicKey& pk, const AttributeRegistry& registry, const LinKa& ka,
                        const LinKaSession& session, const std::optional<GElem>& cpk2_from_ds,
                        const std::optional<Scalar>& cpk3_from_du, const AttributeSet& attrs, RandomSource& rng) {
  AttackReport report;
  report.attack = "authority-du";
  report.model = Model::lin;
  report.colluders = {kKA, kDS, kDU};
  if (cpk2_from_ds) report.inputs.push_back({"CPK2", *cpk2_from_ds});
  if (cpk3_from_du) report.inputs.push_back({"CPK3", *cpk3_from_du});
  if (!cpk2_from_ds || !cpk3_from_du || cpk3_from_du->is_zero()) {
    report.verdict = Verdict::InsufficientKnowledge;
    report.note = "both CPK2 (from DS) and CPK3 (from DU) are required";
    return report;
  }
  const GroupContext& ctx = pk.ctx;
  const GElem k_prime = cpk2_from_ds->pow(cpk3_from_du->inv());
  const GElem g_alpha = k_prime / ctx.g_exp(ka.q * session.tau);
  report.recovered = {{"K'", k_prime}, {"g^alpha", g_alpha}};
  LinKeyShares forged = lin_shares_from(pk, registry, g_alpha, ka.q, attrs, rng);
  const bool matches_pk = pair(g_alpha, ctx.g()) == pk.egg_alpha;
  const bool valid = lin_shares_valid(pk, registry, forged);
  report.verdict = matches_pk && valid ? Verdict::RecoveredAndForged : Verdict::ForgeryFailed;
  report.forged = std::move(forged);
  return report;
}

AttackReport attack_secured_attempt(const PublicKey& pk, const SecuredAa& aa, const SecuredAaSession& session,
                                    const std::optional<GElem>& d_from_du, std::uint64_t trials, RandomSource& rng) {
  AttackReport report;
  report.attack = "authority-du";
  report.model = Model::secured;
  report.colluders = {kAA, kDU};
  if (d_from_du) report.inputs = {{"D", *d_from_du}};
  report.verdict = Verdict::InsufficientKnowledge;
  report.note = "D = g^{(alpha1+alpha2+r)/beta}: removing alpha2 + r needs beta, isolating beta needs alpha1";

  const GroupContext& ctx = pk.ctx;
  const AttributeSet probe{"probe"};
  report.trials = trials;
  for (std::uint64_t i = 0; i < trials; ++i) {
    const Scalar beta_guess = rng.nonzero(ctx, "beta_guess");
    const Scalar alpha1_guess = rng.uniform(ctx, "alpha1_guess");
    const Scalar r_star = rng.nonzero(ctx, "r_star");
    SecretKey candidate;
    candidate.gid_r = r_star;
    candidate.d = ctx.g_exp((alpha1_guess + aa.alpha2 + r_star) / beta_guess);
    candidate.components = issue_components(ctx, r_star, probe, rng);
    if (key_decrypts(pk, candidate, rng)) ++report.successes;
  }
  (void)session;
  return report;
}

AttackReport attack_secured_with_beta(const PublicKey& pk, const SecuredAa& aa, const SecuredAaSession& session,
                                      const GElem& d_from_du, const Scalar& leaked_beta, const Scalar& r_star,
                                      const AttributeSet& attrs, RandomSource& rng) {
  AttackReport report;
  report.attack = "authority-du+beta";
  report.model = Model::secured;
  report.colluders = {kAA, kDU};
  report.inputs = {{"D", d_from_du}, {"beta", leaked_beta}};
  const GroupContext& ctx = pk.ctx;
  const GElem g_alpha1 = d_from_du.pow(leaked_beta) / ctx.g_exp(aa.alpha2 + session.r);
  const GElem g_alpha = g_alpha1 * ctx.g_exp(aa.alpha2);
  report.recovered = {{"g^alpha1", g_alpha1}};
  SecretKey forged = bsw_key_from(ctx, g_alpha, leaked_beta, r_star, attrs, rng);
  const bool matches_pk = pair(g_alpha, ctx.g()) == pk.egg_alpha;
  const bool valid = bsw_forgery_valid(pk, forged, rng);
  report.verdict = matches_pk && valid ? Verdict::RecoveredAndForged : Verdict::ForgeryFailed;
  report.forged = std::move(forged);
  return report;
}

}  // namespace dabe
