#include "dabe/protocols.hpp"

#include <algorithm>

#include "dabe/ideal.hpp"

namespace dabe {

namespace {

std::vector<std::string> attr_list(const AttributeSet& attrs) { return {attrs.begin(), attrs.end()}; }

void require_attrs(const AttributeSet& attrs) {
  if (attrs.empty()) throw Error(Errc::EmptyAttributeSet, "key generation needs at least one attribute");
}

const RegistryEntry& lookup(const AttributeRegistry& registry, const std::string& attr) {
  auto it = registry.find(attr);
  if (it == registry.end()) {
    throw Error(Errc::UnassignedAttribute, "attribute '" + attr + "' is not in the registry");
  }
  return it->second;
}

Payload key_payload(const SecretKey& key) {
  Payload out{{"D", key.d}};
  for (const auto& [attr, kc] : key.components) {
    out.push_back({"D_j[" + attr + "]", kc.d});
    out.push_back({"D'_j[" + attr + "]", kc.d_prime});
  }
  return out;
}

Payload components_payload(const std::map<std::string, KeyComponent>& components) {
  Payload out;
  for (const auto& [attr, kc] : components) {
    out.push_back({"D_j[" + attr + "]", kc.d});
    out.push_back({"D'_j[" + attr + "]", kc.d_prime});
  }
  return out;
}

Scalar nonzero_divisor(const Scalar& s, const char* what) {
  if (s.is_zero()) throw Error(Errc::DivisionByZero, std::string("derived divisor ") + what + " is zero");
  return s.inv();
}

}  // namespace

// --- Hur I ------------------------------------------------------------------

Hur1System hur1_setup(const GroupContext& ctx, RandomSource& rng) {
  Transcript t(Model::hur1, rng.seed());
  Hur1Kgc kgc{rng.nonzero(ctx, "alpha"), {}};
  kgc.pk_egg_alpha = ctx.gt_exp(kgc.alpha);
  Hur1Aa aa{rng.nonzero(ctx, "beta"), {}, {}};
  aa.pk_h = ctx.g_exp(aa.beta);
  aa.pk_h_inv = ctx.g_exp(aa.beta.inv());
  t.send(kKGC, kBroadcast, "setup", {{"PK_KGC", kgc.pk_egg_alpha}});
  t.send(kAA, kBroadcast, "setup", {{"g^beta", aa.pk_h}, {"g^1/beta", aa.pk_h_inv}});
  PublicKey pk{ctx, aa.pk_h, kgc.pk_egg_alpha, aa.pk_h_inv};
  return Hur1System{kgc, aa, pk, std::move(t)};
}

Hur1Run hur1_keygen(const Hur1System& sys, const AttributeSet& attrs, RandomSource& rng) {
  require_attrs(attrs);
  const GroupContext& ctx = sys.pk.ctx;
  Transcript t(Model::hur1, rng.seed());

  // (1) DU asks AA for a key over its attributes.
  t.send(kDU, kAA, "1", {}, attr_list(attrs));

  // (2) AA picks the user's r; AA and KGC jointly compute x = (alpha + r) beta for KGC.
  Hur1AaSession aa{rng.nonzero(ctx, "r"), {}, {}};
  t.send(kAA, kKGC, "2", {});
  const auto out = ideal_two_party({IdealKind::HURI},
                                   {{kKGC, {{"alpha", sys.kgc.alpha}}}, {kAA, {{"r", aa.r}, {"beta", sys.aa.beta}}}});
  t.ideal("HURI", {kKGC});
  Hur1KgcSession kgc{out.at(kKGC).at("x"), rng.nonzero(ctx, "t")};

  // (3) KGC blinds with t and sends A = g^{x/t}; (4) t goes to DU.
  const GElem a = ctx.g_exp(kgc.x / kgc.t);
  t.send(kKGC, kAA, "3", {{"A", a}});
  aa.a_received = a;
  t.send(kKGC, kDU, "4", {{"t", kgc.t}});
  Hur1DuSession du{kgc.t, {}};

  // (5) AA strips beta^2: D' = A^{1/beta^2} = g^{(alpha+r)/(beta t)}, and issues the attribute part.
  const GElem d_prime = a.pow((sys.aa.beta * sys.aa.beta).inv());
  auto components = issue_components(ctx, aa.r, attrs, rng, aa.r_j);
  Payload p5{{"D'", d_prime}};
  auto comp_payload = components_payload(components);
  p5.insert(p5.end(), comp_payload.begin(), comp_payload.end());
  t.send(kAA, kDU, "5", std::move(p5));
  du.d_prime = d_prime;

  SecretKey key;
  key.gid_r = aa.r;
  key.d = d_prime.pow(du.t);
  key.components = std::move(components);
  t.output(kDU, key_payload(key));
  return Hur1Run{std::move(key), std::move(t), kgc, std::move(aa), du};
}

// --- Hur II -----------------------------------------------------------------

Hur2System hur2_setup(const GroupContext& ctx, const ModelConfig& config, RandomSource& rng) {
  if (config.authorities < 1) throw Error(Errc::BadConfig, "hur2 needs at least one attribute authority");
  for (const auto& [attr, entry] : config.registry) {
    if (entry.authority < 1 || entry.authority > config.authorities) {
      throw Error(Errc::BadConfig, "attribute '" + attr + "' names authority " + std::to_string(entry.authority) +
                                       " outside 1.." + std::to_string(config.authorities));
    }
  }
  Transcript t(Model::hur2, rng.seed());
  Hur2Ca ca{rng.nonzero(ctx, "beta"), {}, config.authorities};
  ca.pk_h = ctx.g_exp(ca.beta);
  t.send(kCA, kBroadcast, "setup", {{"PK_CA", ca.pk_h}});
  std::vector<Hur2Authority> authorities;
  GtElem egg_alpha = ctx.gt_identity();
  for (std::uint32_t i = 1; i <= config.authorities; ++i) {
    Hur2Authority a{i, rng.nonzero(ctx, "alpha"), {}};
    a.pk_egg_alpha = ctx.gt_exp(a.alpha);
    egg_alpha *= a.pk_egg_alpha;
    t.send(authority(i), kBroadcast, "setup", {{"PK_A", a.pk_egg_alpha}});
    authorities.push_back(std::move(a));
  }
  PublicKey pk{ctx, ca.pk_h, egg_alpha, std::nullopt};
  return Hur2System{ca, std::move(authorities), config.registry, pk, std::move(t)};
}

Hur2Run hur2_keygen(const Hur2System& sys, const AttributeSet& attrs, RandomSource& rng) {
  require_attrs(attrs);
  const GroupContext& ctx = sys.pk.ctx;
  const std::uint32_t m = sys.ca.authorities;
  std::vector<AttributeSet> managed(m);
  for (const auto& attr : attrs) managed[lookup(sys.registry, attr).authority - 1].insert(attr);

  Transcript t(Model::hur2, rng.seed());

  // (1) DU asks CA.
  t.send(kDU, kCA, "1", {}, attr_list(attrs));

  // (2) CA splits r_t into gamma_1..gamma_m.
  Hur2CaSession ca{{}, ctx.zero(), {}};
  for (std::uint32_t i = 0; i < m; ++i) {
    ca.gamma.push_back(rng.nonzero(ctx, "gamma"));
    ca.r_t += ca.gamma.back();
  }

  std::vector<Hur2AuthoritySession> sessions;
  Hur2DuSession du;
  const Scalar beta_sq_inv = (sys.ca.beta * sys.ca.beta).inv();
  for (std::uint32_t i = 1; i <= m; ++i) {
    const Hur2Authority& ai = sys.authorities[i - 1];
    const PartyId self = authority(i);
    t.send(kCA, self, "2", {});
    const auto out = ideal_two_party({IdealKind::HURII, i}, {{self, {{"alpha", ai.alpha}}},
                                                             {kCA, {{"gamma", ca.gamma[i - 1]}, {"beta", sys.ca.beta}}}});
    t.ideal(IdealSpec{IdealKind::HURII, i}.name(), {self});
    Hur2AuthoritySession s;
    s.index = i;
    s.x = out.at(self).at("x");
    s.tau = rng.nonzero(ctx, "tau");
    // (3) T = g^{x/tau}; (4) B = T^{1/beta^2}; (5) D_i = B^tau.
    const GElem big_t = ctx.g_exp(s.x / s.tau);
    t.send(self, kCA, "3", {{"T", big_t}});
    const GElem b = big_t.pow(beta_sq_inv);
    t.send(kCA, self, "4", {{"B", b}});
    s.b_received = b;
    const GElem d_i = b.pow(s.tau);
    t.send(self, kDU, "5", {{"D_i", d_i}});
    du.d_parts.push_back(d_i);
    sessions.push_back(std::move(s));
  }

  // (6) g^{r'} to DU; (7) g^{r_t - r'} to every A_i; (8) A_i issues its attributes.
  ca.r_prime = rng.nonzero(ctx, "r_prime");
  du.g_r_prime = ctx.g_exp(ca.r_prime);
  t.send(kCA, kDU, "6", {{"g^r'", du.g_r_prime}});
  const GElem g_rest = ctx.g_exp(ca.r_t - ca.r_prime);
  for (auto& s : sessions) {
    t.send(kCA, authority(s.index), "7", {{"g^(r_t-r')", g_rest}});
    s.g_rt_minus_rprime = g_rest;
  }

  SecretKey key;
  key.gid_r = ca.r_t;
  key.d = ctx.identity();
  for (const auto& d_i : du.d_parts) key.d *= d_i;
  for (auto& s : sessions) {
    const AttributeSet& mine = managed[s.index - 1];
    if (mine.empty()) continue;
    Payload p8;
    for (const auto& attr : mine) {
      const Scalar r_j = rng.nonzero(ctx, "r_j");
      s.r_j.emplace(attr, r_j);
      const KeyComponent partial{s.g_rt_minus_rprime * ctx.hash_to_group(attr).pow(r_j), ctx.g_exp(r_j)};
      p8.push_back({"D_j[" + attr + "]", partial.d});
      p8.push_back({"D'_j[" + attr + "]", partial.d_prime});
      key.components.emplace(attr, KeyComponent{du.g_r_prime * partial.d, partial.d_prime});
    }
    t.send(authority(s.index), kDU, "8", std::move(p8), attr_list(mine));
  }
  t.output(kDU, key_payload(key));
  return Hur2Run{std::move(key), std::move(t), std::move(ca), std::move(sessions), std::move(du)};
}

// --- Wang -------------------------------------------------------------------

bool operator==(const WatersKey& a, const WatersKey& b) {
  return a.d == b.d && a.l == b.l && a.components == b.components && a.weights == b.weights;
}

WangSystem wang_setup(const GroupContext& ctx, const ModelConfig& config, RandomSource& rng) {
  Transcript t(Model::wang, rng.seed());
  WangKa ka{rng.nonzero(ctx, "alpha1"), rng.nonzero(ctx, "beta"), {}, {}};
  ka.pk_h = ctx.g_exp(ka.beta);
  ka.pk_egg_alpha1 = ctx.gt_exp(ka.alpha1);
  WangCsp csp{rng.nonzero(ctx, "alpha2"), {}};
  csp.pk_egg_alpha2 = ctx.gt_exp(csp.alpha2);
  t.send(kKA, kBroadcast, "setup", {{"g^beta", ka.pk_h}, {"PK_KA", ka.pk_egg_alpha1}});
  t.send(kCSP, kBroadcast, "setup", {{"PK_CSP", csp.pk_egg_alpha2}});
  WangPublicKey pk{ctx, ka.pk_h, ka.pk_egg_alpha1 * csp.pk_egg_alpha2, ka.pk_egg_alpha1, csp.pk_egg_alpha2};
  return WangSystem{ka, csp, config.registry, pk, std::move(t)};
}

WatersKey waters_key_from(const GroupContext& ctx, const GElem& g_alpha, const Scalar& beta, const Scalar& r,
                          const AttributeSet& attrs, const AttributeRegistry& registry) {
  WatersKey key;
  key.gid_r = r;
  key.d = g_alpha * ctx.g_exp(beta * r);
  key.l = ctx.g_exp(r);
  for (const auto& attr : attrs) {
    const Scalar w = ctx.scalar(lookup(registry, attr).weight);
    key.weights.emplace(attr, w);
    key.components.emplace(attr, ctx.hash_to_group(attr).pow(r * w));
  }
  return key;
}

WangRun wang_keygen(const WangSystem& sys, const AttributeSet& attrs, RandomSource& rng) {
  require_attrs(attrs);
  for (const auto& attr : attrs) lookup(sys.registry, attr);
  const GroupContext& ctx = sys.pk.ctx;
  Transcript t(Model::wang, rng.seed());

  // (1) request; (2) KA picks r, 2PC hands x = (alpha1 + alpha2) beta to CSP.
  t.send(kDU, kKA, "1", {}, attr_list(attrs));
  WangKaSession ka{rng.nonzero(ctx, "r"), {}, {}, {}};
  t.send(kKA, kCSP, "2", {});
  const auto out = ideal_two_party({IdealKind::WANG}, {{kKA, {{"alpha1", sys.ka.alpha1}, {"beta", sys.ka.beta}}},
                                                       {kCSP, {{"alpha2", sys.csp.alpha2}}}});
  t.ideal("WANG", {kCSP});
  WangCspSession csp;
  csp.x = out.at(kCSP).at("x");

  // (3) X1 = g^{x/rho1}
  csp.rho1 = rng.nonzero(ctx, "rho1");
  const GElem x1 = ctx.g_exp(csp.x / csp.rho1);
  t.send(kCSP, kKA, "3", {{"X1", x1}});
  ka.x1_received = x1;

  // (4) Y1 = X1^{theta/beta}, Y2 = g^{r beta theta}
  ka.theta = rng.nonzero(ctx, "theta");
  const GElem y1 = x1.pow(ka.theta / sys.ka.beta);
  const GElem y2 = ctx.g_exp(ka.r * sys.ka.beta * ka.theta);
  t.send(kKA, kCSP, "4", {{"Y1", y1}, {"Y2", y2}});
  csp.y1_received = y1;
  csp.y2_received = y2;

  // (5) X2 = (Y1^{rho1} Y2)^{rho2}
  csp.rho2 = rng.nonzero(ctx, "rho2");
  const GElem x2 = (y1.pow(csp.rho1) * y2).pow(csp.rho2);
  t.send(kCSP, kKA, "5", {{"X2", x2}});
  ka.x2_received = x2;

  // (6) Y3 = X2^{1/theta}
  const GElem y3 = x2.pow(ka.theta.inv());
  t.send(kKA, kCSP, "6", {{"Y3", y3}});
  csp.y3_received = y3;

  // (7) D = Y3^{1/rho2} to DU; (8) KA sends L and the D_j.
  csp.d = y3.pow(csp.rho2.inv());
  t.send(kCSP, kDU, "7", {{"D", csp.d}});

  WatersKey key;
  key.gid_r = ka.r;
  key.d = csp.d;
  key.l = ctx.g_exp(ka.r);
  Payload p8{{"L", key.l}};
  for (const auto& attr : attrs) {
    const Scalar w = ctx.scalar(lookup(sys.registry, attr).weight);
    key.weights.emplace(attr, w);
    key.components.emplace(attr, ctx.hash_to_group(attr).pow(ka.r * w));
    p8.push_back({"D_j[" + attr + "]", key.components.at(attr)});
  }
  t.send(kKA, kDU, "8", p8);

  Payload final{{"D", key.d}};
  final.insert(final.end(), p8.begin(), p8.end());
  t.output(kDU, std::move(final));
  return WangRun{std::move(key), std::move(t), ka, csp};
}

bool waters_key_valid(const WangPublicKey& pk, const WatersKey& key) {
  const GroupContext& ctx = pk.ctx;
  if (pair(key.d, ctx.g()) != pk.egg_alpha * pair(key.l, pk.h)) return false;
  for (const auto& [attr, d_j] : key.components) {
    auto w = key.weights.find(attr);
    if (w == key.weights.end()) return false;
    if (pair(d_j, ctx.g()) != pair(ctx.hash_to_group(attr).pow(w->second), key.l)) return false;
  }
  return true;
}

// --- Lin --------------------------------------------------------------------

LinSystem lin_setup(const GroupContext& ctx, const ModelConfig& config, RandomSource& rng) {
  std::uint32_t count = 0;
  for (const auto& [attr, entry] : config.registry) {
    if (entry.h_index < 1) throw Error(Errc::BadConfig, "attribute '" + attr + "' has h_index 0");
    count = std::max(count, entry.h_index);
  }
  Transcript t(Model::lin, rng.seed());
  LinPublicKey pk{ctx, {}, {}, {}};
  Payload pp;
  for (std::uint32_t i = 1; i <= count; ++i) {
    pk.h.push_back(ctx.g_exp(rng.nonzero(ctx, "h")));
    pp.push_back({"h_" + std::to_string(i), pk.h.back()});
  }
  t.send(kTI, kBroadcast, "setup", std::move(pp));
  LinKa ka{rng.nonzero(ctx, "q"), {}};
  ka.pk_g_q = ctx.g_exp(ka.q);
  LinCs cs{rng.nonzero(ctx, "alpha"), {}, {}};
  cs.mk_g_alpha = ctx.g_exp(cs.alpha);
  cs.pk_egg_alpha = ctx.gt_exp(cs.alpha);
  t.send(kKA, kBroadcast, "setup", {{"PK_KA", ka.pk_g_q}});
  t.send(kCS, kBroadcast, "setup", {{"PK_CS", cs.pk_egg_alpha}});
  pk.g_q = ka.pk_g_q;
  pk.egg_alpha = cs.pk_egg_alpha;
  return LinSystem{ka, cs, config.registry, pk, std::move(t)};
}

namespace {

const GElem& h_for(const LinPublicKey& pk, const AttributeRegistry& registry, const std::string& attr) {
  const auto index = lookup(registry, attr).h_index;
  if (index < 1 || index > pk.h.size()) {
    throw Error(Errc::BadConfig, "attribute '" + attr + "' refers to h_" + std::to_string(index) +
                                     " which setup did not publish");
  }
  return pk.h[index - 1];
}

}  // namespace

LinRun lin_keygen(const LinSystem& sys, const AttributeSet& attrs, RandomSource& rng) {
  require_attrs(attrs);
  for (const auto& attr : attrs) h_for(sys.pk, sys.registry, attr);
  const GroupContext& ctx = sys.pk.ctx;
  Transcript t(Model::lin, rng.seed());

  // Sub-protocol 1. (1) request; (2) KA picks tau, 2PC gives x = (alpha/q + tau)/q to CS.
  t.send(kDU, kKA, "1", {}, attr_list(attrs));
  LinKaSession ka;
  ka.tau = rng.nonzero(ctx, "tau");
  t.send(kKA, kCS, "2", {});
  auto out1 = ideal_two_party({IdealKind::LIN1}, {{kCS, {{"alpha", sys.cs.alpha}}},
                                                  {kKA, {{"q", sys.ka.q}, {"tau", ka.tau}}}});
  t.ideal("LIN1", {kCS});
  LinCsSession cs;
  cs.x = out1.at(kCS).at("x");

  // (3) A = g^{x/sigma}; (4) B = A^{q^2}; CS keeps K' = B^sigma = g^{alpha + q tau}.
  cs.sigma = rng.nonzero(ctx, "sigma");
  const GElem a = ctx.g_exp(cs.x / cs.sigma);
  t.send(kCS, kKA, "3", {{"A", a}});
  ka.a_received = a;
  const GElem b = a.pow(sys.ka.q * sys.ka.q);
  t.send(kKA, kCS, "4", {{"B", b}});
  cs.k_prime = b.pow(cs.sigma);

  // Sub-protocol 2. (5) 2PC: CPK3 to DU, y to both servers.
  cs.r1 = rng.nonzero(ctx, "r1");
  cs.pi1 = rng.nonzero(ctx, "pi1");
  ka.r2 = rng.nonzero(ctx, "r2");
  ka.pi2 = rng.nonzero(ctx, "pi2");
  t.send(kKA, kCS, "5", {});
  auto out2 = ideal_two_party({IdealKind::LIN2}, {{kCS, {{"r1", cs.r1}, {"pi1", cs.pi1}}},
                                                  {kKA, {{"r2", ka.r2}, {"pi2", ka.pi2}}}});
  t.ideal("LIN2", {kDU, kCS, kKA});
  const Scalar cpk3 = out2.at(kDU).at("CPK3");
  cs.y = out2.at(kCS).at("y");
  ka.y = out2.at(kKA).at("y");

  // (6) X1 = K'^{y/xi}; (7) Y1 = X1^{1/pi2^2}; CS keeps CPK2 = Y1^{xi/pi1^2}.
  cs.xi = rng.nonzero(ctx, "xi");
  const GElem x1 = cs.k_prime.pow(cs.y / cs.xi);
  t.send(kCS, kKA, "6", {{"X1", x1}});
  ka.x1_received = x1;
  const Scalar pi2_sq_inv = nonzero_divisor(ka.pi2 * ka.pi2, "pi2^2");
  const Scalar pi1_sq_inv = nonzero_divisor(cs.pi1 * cs.pi1, "pi1^2");
  const GElem y1 = x1.pow(pi2_sq_inv);
  t.send(kKA, kCS, "7", {{"Y1", y1}});
  cs.cpk2 = y1.pow(cs.xi * pi1_sq_inv);

  // (8) X2 = (g^tau)^{y/varsigma}, X_x = (h_x^tau)^{y/varsigma}; (9) CS strips pi1^2.
  ka.varsigma = rng.nonzero(ctx, "varsigma");
  const Scalar blind = ka.y / ka.varsigma;
  const GElem x2 = ctx.g_exp(ka.tau).pow(blind);
  Payload p8{{"X2", x2}};
  std::map<std::string, GElem> x_x;
  for (const auto& attr : attrs) {
    x_x.emplace(attr, h_for(sys.pk, sys.registry, attr).pow(ka.tau).pow(blind));
    p8.push_back({"X_x[" + attr + "]", x_x.at(attr)});
  }
  t.send(kKA, kCS, "8", std::move(p8), attr_list(attrs));
  const GElem y2 = x2.pow(pi1_sq_inv);
  Payload p9{{"Y2", y2}};
  std::map<std::string, GElem> y_x;
  for (const auto& [attr, x] : x_x) {
    y_x.emplace(attr, x.pow(pi1_sq_inv));
    p9.push_back({"Y_x[" + attr + "]", y_x.at(attr)});
  }
  t.send(kCS, kKA, "9", std::move(p9));
  const Scalar unblind = ka.varsigma * pi2_sq_inv;
  ka.cpk1.d = y2.pow(unblind);
  for (const auto& [attr, y] : y_x) ka.cpk1.components.emplace(attr, y.pow(unblind));

  LinKeyShares shares{cs.k_prime, ka.cpk1, cs.cpk2, cpk3};
  t.output(kDU, {{"CPK3", cpk3}});
  t.output(kCS, {{"K'", cs.k_prime}, {"CPK2", cs.cpk2}});
  Payload cpk1_payload{{"CPK1.D", ka.cpk1.d}};
  for (const auto& [attr, d] : ka.cpk1.components) cpk1_payload.push_back({"CPK1.D_x[" + attr + "]", d});
  t.output(kKA, std::move(cpk1_payload));
  return LinRun{std::move(shares), std::move(t), std::move(ka), cs};
}

LinDsView lin_decryption_handoff(LinRun& run) {
  Payload cpk1{{"CPK1.D", run.ka.cpk1.d}};
  for (const auto& [attr, d] : run.ka.cpk1.components) cpk1.push_back({"CPK1.D_x[" + attr + "]", d});
  run.transcript.send(kKA, kDS, "dec", std::move(cpk1));
  run.transcript.send(kCS, kDS, "dec", {{"CPK2", run.cs.cpk2}});
  return LinDsView{run.ka.cpk1, run.cs.cpk2};
}

bool lin_shares_valid(const LinPublicKey& pk, const AttributeRegistry& registry, const LinKeyShares& shares) {
  const GroupContext& ctx = pk.ctx;
  if (shares.cpk3.is_zero()) return false;
  if (shares.cpk2 != shares.k_prime.pow(shares.cpk3)) return false;
  if (pair(shares.k_prime, ctx.g()).pow(shares.cpk3) != pk.egg_alpha.pow(shares.cpk3) * pair(shares.cpk1.d, pk.g_q)) {
    return false;
  }
  for (const auto& [attr, d_x] : shares.cpk1.components) {
    if (pair(d_x, ctx.g()) != pair(h_for(pk, registry, attr), shares.cpk1.d)) return false;
  }
  return true;
}

LinKeyShares lin_shares_from(const LinPublicKey& pk, const AttributeRegistry& registry, const GElem& g_alpha,
                             const Scalar& q, const AttributeSet& attrs, RandomSource& rng) {
  const GroupContext& ctx = pk.ctx;
  const Scalar tau = rng.nonzero(ctx, "tau");
  const Scalar r1 = rng.nonzero(ctx, "r1");
  const Scalar pi1 = rng.nonzero(ctx, "pi1");
  const Scalar r2 = rng.nonzero(ctx, "r2");
  const Scalar pi2 = rng.nonzero(ctx, "pi2");
  LinKeyShares s;
  s.k_prime = g_alpha * ctx.g_exp(q * tau);
  s.cpk3 = (r1 + r2) * nonzero_divisor(pi1 * pi2, "pi1*pi2");
  s.cpk2 = s.k_prime.pow(s.cpk3);
  const Scalar exponent = tau * s.cpk3;
  s.cpk1.d = ctx.g_exp(exponent);
  for (const auto& attr : attrs) s.cpk1.components.emplace(attr, h_for(pk, registry, attr).pow(exponent));
  return s;
}

// --- secured ----------------------------------------------------------------

SecuredSystem secured_setup(const GroupContext& ctx, RandomSource& rng) {
  Transcript t(Model::secured, rng.seed());
  SecuredKgc kgc{rng.nonzero(ctx, "alpha1"), rng.nonzero(ctx, "beta"), {}, {}};
  kgc.pk_h = ctx.g_exp(kgc.beta);
  kgc.pk_egg_alpha1 = ctx.gt_exp(kgc.alpha1);
  SecuredAa aa{rng.nonzero(ctx, "alpha2"), {}};
  aa.pk_egg_alpha2 = ctx.gt_exp(aa.alpha2);
  t.send(kKGC, kBroadcast, "setup", {{"g^beta", kgc.pk_h}, {"PK_KGC", kgc.pk_egg_alpha1}});
  t.send(kAA, kBroadcast, "setup", {{"PK_AA", aa.pk_egg_alpha2}});
  PublicKey pk{ctx, kgc.pk_h, kgc.pk_egg_alpha1 * aa.pk_egg_alpha2, std::nullopt};
  return SecuredSystem{kgc, aa, pk, std::move(t)};
}

SecuredRun secured_keygen(const SecuredSystem& sys, const AttributeSet& attrs, RandomSource& rng) {
  require_attrs(attrs);
  const GroupContext& ctx = sys.pk.ctx;
  Transcript t(Model::secured, rng.seed());

  // (1) request; (2) AA picks r, 2PC gives x = (alpha1 + alpha2 + r)/beta to KGC.
  t.send(kDU, kAA, "1", {}, attr_list(attrs));
  SecuredAaSession aa{rng.nonzero(ctx, "r"), {}};
  t.send(kAA, kKGC, "2", {});
  const auto out = ideal_two_party({IdealKind::SECURED}, {{kKGC, {{"alpha1", sys.kgc.alpha1}, {"beta", sys.kgc.beta}}},
                                                          {kAA, {{"alpha2", sys.aa.alpha2}, {"r", aa.r}}}});
  t.ideal("SECURED", {kKGC});
  SecuredKgcSession kgc{out.at(kKGC).at("x")};

  // (3) KGC sends D = g^x; (4) AA issues the attribute components.
  SecretKey key;
  key.gid_r = aa.r;
  key.d = ctx.g_exp(kgc.x);
  t.send(kKGC, kDU, "3", {{"D", key.d}});
  key.components = issue_components(ctx, aa.r, attrs, rng, aa.r_j);
  t.send(kAA, kDU, "4", components_payload(key.components), attr_list(attrs));
  t.output(kDU, key_payload(key));
  return SecuredRun{std::move(key), std::move(t), kgc, std::move(aa)};
}

}  // namespace dabe
