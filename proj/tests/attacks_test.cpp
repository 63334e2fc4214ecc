#include <doctest.h>

#include <type_traits>

#include "dabe/attacks.hpp"
#include "support/oracle.hpp"

using namespace dabe;

namespace {

const GroupContext small = GroupContext::create(kTestPrime);
const GroupContext big = GroupContext::create(kDefaultPrime);

const Element& recovered(const AttackReport& r, std::string_view name) {
  for (const auto& item : r.recovered)
    if (item.name == name) return item.value;
  throw std::runtime_error("nothing recovered under " + std::string(name));
}

ModelConfig registry_for(std::uint32_t m, const std::vector<std::string>& attrs) {
  ModelConfig cfg;
  cfg.authorities = m;
  std::uint32_t i = 0;
  for (const auto& a : attrs) {
    cfg.registry[a] = RegistryEntry{1 + i % m, 2 + i, 1 + i % 3};
    ++i;
  }
  return cfg;
}

}  // namespace

// Attack entry points never take the victim's master state.
static_assert(std::is_same_v<decltype(&attack_hur1),
                             AttackReport (*)(const PublicKey&, const Hur1Aa&, const Hur1AaSession&,
                                              const std::optional<Scalar>&, const Scalar&, const AttributeSet&,
                                              RandomSource&)>);
static_assert(std::is_same_v<decltype(&attack_hur2),
                             AttackReport (*)(const PublicKey&, const Hur2Ca&, const Hur2CaSession&,
                                              const std::optional<GElem>&, const Scalar&, const AttributeSet&,
                                              RandomSource&)>);
static_assert(std::is_same_v<decltype(&attack_wang),
                             AttackReport (*)(const WangPublicKey&, const AttributeRegistry&, const WangKa&,
                                              const WangKaSession&, const std::optional<GElem>&, const Scalar&,
                                              const AttributeSet&)>);
static_assert(std::is_same_v<decltype(&attack_lin),
                             AttackReport (*)(const LinPublicKey&, const AttributeRegistry&, const LinKa&,
                                              const LinKaSession&, const std::optional<GElem>&,
                                              const std::optional<Scalar>&, const AttributeSet&, RandomSource&)>);
static_assert(std::is_same_v<decltype(&attack_secured_attempt),
                             AttackReport (*)(const PublicKey&, const SecuredAa&, const SecuredAaSession&,
                                              const std::optional<GElem>&, std::uint64_t, RandomSource&)>);

// --- hand vectors at p=101 -----------------------------------------------------------

TEST_CASE("AA and user against Hur I") {
  ScriptedRandom rng(21);
  rng.set("alpha", {3}).set("beta", {5}).set("r", {7}).set("t", {11});
  const Hur1System sys = hur1_setup(small, rng);
  const Hur1Run run = hur1_keygen(sys, {"A"}, rng);
  const AttackReport rep = attack_hur1(sys.pk, sys.aa, run.aa, run.du.t, small.scalar(6), {"A", "B"}, rng);
  CHECK(recovered(rep, "g^alpha") == Element{small.g_exp(3)});
  const auto& forged = std::get<SecretKey>(rep.forged);
  CHECK(forged.d == small.g_exp(oracle::div(3 + 6, 5, 101)));
  CHECK(forged.attributes() == AttributeSet{"A", "B"});
  CHECK(rep.verdict == Verdict::RecoveredAndForged);

  const AttackReport blind = attack_hur1(sys.pk, sys.aa, run.aa, std::nullopt, small.scalar(6), {"A"}, rng);
  CHECK(blind.verdict == Verdict::InsufficientKnowledge);

  Hur1AaSession tampered = run.aa;
  tampered.r = small.scalar(8);
  CHECK(attack_hur1(sys.pk, sys.aa, tampered, run.du.t, small.scalar(6), {"A"}, rng).verdict ==
        Verdict::ForgeryFailed);

  CHECK(attack_hur1_kgc(sys.kgc, run.kgc, run.key).verdict == Verdict::InsufficientKnowledge);
}

TEST_CASE("CA and user against Hur II") {
  ScriptedRandom rng(22);
  rng.set("beta", {5}).set("alpha", {4, 5}).set("gamma", {3, 4}).set("tau", {2, 3});
  const Hur2System sys = hur2_setup(small, registry_for(2, {"A", "B"}), rng);
  const Hur2Run run = hur2_keygen(sys, {"A", "B"}, rng);
  const AttackReport rep = attack_hur2(sys.pk, sys.ca, run.ca, run.key.d, small.scalar(3), {"A"}, rng);
  CHECK(recovered(rep, "g^alpha") == Element{small.g_exp(9)});
  CHECK(std::get<SecretKey>(rep.forged).d == small.g_exp(oracle::div(9 + 3, 5, 101)));
  CHECK(std::get<SecretKey>(rep.forged).d == small.g_exp(63));
  CHECK(rep.verdict == Verdict::RecoveredAndForged);

  Hur2CaSession wrong = run.ca;
  wrong.r_t = wrong.r_t + small.one();
  CHECK(attack_hur2(sys.pk, sys.ca, wrong, run.key.d, small.scalar(3), {"A"}, rng).verdict == Verdict::ForgeryFailed);
  CHECK(attack_hur2(sys.pk, sys.ca, run.ca, std::nullopt, small.scalar(3), {"A"}, rng).verdict ==
        Verdict::InsufficientKnowledge);
}

TEST_CASE("KA and user against Wang") {
  ScriptedRandom rng(23);
  rng.set("alpha1", {3}).set("beta", {5}).set("alpha2", {4});
  rng.set("r", {2}).set("rho1", {2}).set("theta", {3}).set("rho2", {7});
  const ModelConfig cfg = registry_for(1, {"A"});
  const WangSystem sys = wang_setup(small, cfg, rng);
  const WangRun run = wang_keygen(sys, {"A"}, rng);
  const AttackReport rep = attack_wang(sys.pk, cfg.registry, sys.ka, run.ka, run.key.d, small.scalar(9), {"A"});
  CHECK(recovered(rep, "g^alpha2") == Element{small.g_exp(4)});
  const auto& forged = std::get<WatersKey>(rep.forged);
  CHECK(forged.d == small.g_exp(oracle::add(7, oracle::mul(9, 5, 101), 101)));
  CHECK(rep.verdict == Verdict::RecoveredAndForged);
  // Forging at the victim's own r reproduces the legitimate key.
  const AttackReport same = attack_wang(sys.pk, cfg.registry, sys.ka, run.ka, run.key.d, small.scalar(2), {"A"});
  CHECK(std::get<WatersKey>(same.forged).d == run.key.d);
  CHECK(std::get<WatersKey>(same.forged).components == run.key.components);

  CHECK(attack_wang_csp(sys.csp, run.csp, run.key.d).verdict == Verdict::InsufficientKnowledge);
}

TEST_CASE("KA, DS and user against Lin") {
  ScriptedRandom rng(24);
  rng.set("q", {3}).set("alpha", {5});
  rng.set("tau", {2}).set("sigma", {6}).set("r1", {1}).set("pi1", {3}).set("r2", {2}).set("pi2", {4});
  const ModelConfig cfg = registry_for(1, {"A"});
  const LinSystem sys = lin_setup(small, cfg, rng);
  LinRun run = lin_keygen(sys, {"A"}, rng);
  const LinDsView ds = lin_decryption_handoff(run);
  const AttackReport rep = attack_lin(sys.pk, cfg.registry, sys.ka, run.ka, ds.cpk2, run.shares.cpk3, {"A"}, rng);
  CHECK(recovered(rep, "K'") == Element{small.g_exp(11)});
  CHECK(recovered(rep, "g^alpha") == Element{small.g_exp(5)});
  CHECK(rep.verdict == Verdict::RecoveredAndForged);
  CHECK(lin_shares_valid(sys.pk, cfg.registry, std::get<LinKeyShares>(rep.forged)));
  CHECK(attack_lin(sys.pk, cfg.registry, sys.ka, run.ka, ds.cpk2, std::nullopt, {"A"}, rng).verdict ==
        Verdict::InsufficientKnowledge);
}

TEST_CASE("secured model: the AA is stuck without beta, forges with it") {
  ScriptedRandom rng(25);
  rng.set("alpha1", {3}).set("beta", {5}).set("alpha2", {4}).set("r", {2});
  const SecuredSystem sys = secured_setup(small, rng);
  const SecuredRun run = secured_keygen(sys, {"A"}, rng);
  const AttackReport with_beta =
      attack_secured_with_beta(sys.pk, sys.aa, run.aa, run.key.d, small.scalar(5), small.scalar(10), {"A"}, rng);
  CHECK(recovered(with_beta, "g^alpha1") == Element{small.g_exp(3)});
  CHECK(std::get<SecretKey>(with_beta.forged).d == small.g_exp(oracle::div(7 + 10, 5, 101)));
  CHECK(std::get<SecretKey>(with_beta.forged).d == small.g_exp(64));
  CHECK(with_beta.verdict == Verdict::RecoveredAndForged);

  const AttackReport wrong_beta =
      attack_secured_with_beta(sys.pk, sys.aa, run.aa, run.key.d, small.scalar(6), small.scalar(10), {"A"}, rng);
  CHECK(wrong_beta.verdict == Verdict::ForgeryFailed);

  SeededRandom trials_rng(26);
  const AttackReport attempt = attack_secured_attempt(sys.pk, sys.aa, run.aa, run.key.d, 50, trials_rng);
  CHECK(attempt.verdict == Verdict::InsufficientKnowledge);
  CHECK(attempt.trials == 50);
  CHECK(attempt.recovered.empty());
  CHECK(std::holds_alternative<std::monostate>(attempt.forged));
}

// --- exactness at the default prime --------------------------------------------------

TEST_CASE("recovered values equal the victim's secrets exactly, 100 seeds per model") {
  const AttributeSet attrs{"A", "B"};
  const ModelConfig cfg = registry_for(3, {"A", "B", "C"});
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    SeededRandom rng(seed);
    const Scalar r_star = rng.nonzero(big, "r_star");

    const auto h1 = hur1_setup(big, rng);
    const auto k1 = hur1_keygen(h1, attrs, rng);
    const auto a1 = attack_hur1(h1.pk, h1.aa, k1.aa, k1.du.t, r_star, {"C"}, rng);
    CHECK(recovered(a1, "g^alpha") == Element{big.g_exp(h1.kgc.alpha)});
    CHECK(a1.verdict == Verdict::RecoveredAndForged);

    const auto h2 = hur2_setup(big, cfg, rng);
    const auto k2 = hur2_keygen(h2, attrs, rng);
    const auto a2 = attack_hur2(h2.pk, h2.ca, k2.ca, k2.key.d, r_star, {"C"}, rng);
    Scalar alpha_sum = big.zero();
    for (const auto& a : h2.authorities) alpha_sum += a.alpha;
    CHECK(recovered(a2, "g^alpha") == Element{big.g_exp(alpha_sum)});
    CHECK(a2.verdict == Verdict::RecoveredAndForged);

    const auto w = wang_setup(big, cfg, rng);
    const auto kw = wang_keygen(w, attrs, rng);
    const auto aw = attack_wang(w.pk, cfg.registry, w.ka, kw.ka, kw.key.d, r_star, {"C"});
    CHECK(recovered(aw, "g^alpha2") == Element{big.g_exp(w.csp.alpha2)});
    CHECK(aw.verdict == Verdict::RecoveredAndForged);

    const auto l = lin_setup(big, cfg, rng);
    auto kl = lin_keygen(l, attrs, rng);
    const auto ds = lin_decryption_handoff(kl);
    const auto al = attack_lin(l.pk, cfg.registry, l.ka, kl.ka, ds.cpk2, kl.shares.cpk3, {"C"}, rng);
    CHECK(recovered(al, "g^alpha") == Element{big.g_exp(l.cs.alpha)});
    CHECK(recovered(al, "K'") == Element{kl.shares.k_prime});
    CHECK(al.verdict == Verdict::RecoveredAndForged);

    const auto s = secured_setup(big, rng);
    const auto ks = secured_keygen(s, attrs, rng);
    const auto as = attack_secured_with_beta(s.pk, s.aa, ks.aa, ks.key.d, s.kgc.beta, r_star, {"C"}, rng);
    CHECK(recovered(as, "g^alpha1") == Element{big.g_exp(s.kgc.alpha1)});
    CHECK(as.verdict == Verdict::RecoveredAndForged);
  }
}

// --- collusion among users -------------------------------------------------------

TEST_CASE("merged keys from distinct users never decrypt, 100 cases") {
  const AccessTree policy = parse_policy("A and B");
  const std::map<std::string, KeySource> plan{{"A", KeySource::first}, {"B", KeySource::second}};
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    SeededRandom rng(5000 + seed);
    const auto sys = secured_setup(big, rng);
    const auto alice = secured_keygen(sys, {"A"}, rng);
    const auto bob = secured_keygen(sys, {"B"}, rng);
    REQUIRE(alice.key.gid_r != bob.key.gid_r);
    const AttackReport rep = attack_du_collusion(sys.pk, alice.key, bob.key, plan, policy, rng);
    CHECK(rep.verdict == Verdict::ForgeryFailed);
    CHECK_FALSE(key_consistent_with(sys.pk, std::get<SecretKey>(rep.forged)));
  }
}

TEST_CASE("merged keys sharing one r do decrypt") {
  SeededRandom rng(6000);
  const auto sys = secured_setup(big, rng);
  const GElem g_alpha = big.g_exp(sys.kgc.alpha1 + sys.aa.alpha2);
  const Scalar r = rng.nonzero(big, "r");
  const SecretKey first = bsw_key_from(big, g_alpha, sys.kgc.beta, r, {"A"}, rng);
  const SecretKey second = bsw_key_from(big, g_alpha, sys.kgc.beta, r, {"B"}, rng);
  const AttackReport rep = attack_du_collusion(sys.pk, first, second, {{"A", KeySource::first}, {"B", KeySource::second}},
                                               parse_policy("A and B"), rng);
  CHECK(rep.verdict == Verdict::RecoveredAndForged);
}

TEST_CASE("merged keys that still miss an attribute fail on the policy") {
  SeededRandom rng(6001);
  const auto sys = secured_setup(big, rng);
  const auto alice = secured_keygen(sys, {"A"}, rng);
  const auto bob = secured_keygen(sys, {"B"}, rng);
  const AttackReport rep =
      attack_du_collusion(sys.pk, alice.key, bob.key, {{"A", KeySource::first}}, parse_policy("A and C"), rng);
  CHECK(rep.verdict == Verdict::ForgeryFailed);
  CHECK(rep.note.find("policy") != std::string::npos);
}

// --- escrow ----------------------------------------------------------------------

TEST_CASE("all authorities together issue valid keys in every model") {
  SeededRandom rng(7000);
  const ModelConfig cfg = registry_for(3, {"A", "B", "C"});
  const AttributeSet attrs{"A", "C"};

  const auto h1 = hur1_setup(big, rng);
  CHECK(attack_escrow(Hur1Authorities{h1.kgc, h1.aa}, h1.pk, {}, attrs, rng).verdict == Verdict::RecoveredAndForged);
  const auto h2 = hur2_setup(big, cfg, rng);
  CHECK(attack_escrow(Hur2Authorities{h2.ca, h2.authorities}, h2.pk, cfg.registry, attrs, rng).verdict ==
        Verdict::RecoveredAndForged);
  const auto w = wang_setup(big, cfg, rng);
  CHECK(attack_escrow(WangAuthorities{w.ka, w.csp}, w.pk, cfg.registry, attrs, rng).verdict ==
        Verdict::RecoveredAndForged);
  const auto l = lin_setup(big, cfg, rng);
  CHECK(attack_escrow(LinAuthorities{l.ka, l.cs}, l.pk, cfg.registry, attrs, rng).verdict ==
        Verdict::RecoveredAndForged);
  const auto s = secured_setup(big, rng);
  const AttackReport rep = attack_escrow(SecuredAuthorities{s.kgc, s.aa}, s.pk, {}, attrs, rng);
  CHECK(rep.verdict == Verdict::RecoveredAndForged);
  CHECK(key_decrypts(s.pk, std::get<SecretKey>(rep.forged), rng));
}

TEST_CASE("escrow refuses an incomplete pool") {
  SeededRandom rng(7001);
  const auto s = secured_setup(big, rng);
  auto code = [&](const AuthorityPool& pool) {
    try {
      (void)pool_master_keys(pool);
    } catch (const Error& e) {
      return e.code();
    }
    return Errc::IoError;
  };
  CHECK(code(SecuredAuthorities{s.kgc, std::nullopt}) == Errc::MissingState);
  CHECK(code(SecuredAuthorities{std::nullopt, s.aa}) == Errc::MissingState);
  const auto h2 = hur2_setup(big, registry_for(3, {"A"}), rng);
  std::vector<Hur2Authority> partial(h2.authorities.begin(), h2.authorities.end() - 1);
  CHECK(code(Hur2Authorities{h2.ca, partial}) == Errc::MissingState);
}
