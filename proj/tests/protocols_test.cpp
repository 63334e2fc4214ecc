#include <doctest.h>

#include <algorithm>

#include "dabe/ideal.hpp"
#include "dabe/protocols.hpp"
#include "support/oracle.hpp"

using namespace dabe;

namespace {

const GroupContext small = GroupContext::create(kTestPrime);
const GroupContext big = GroupContext::create(kDefaultPrime);

const Message& message_at(const Transcript& t, std::string_view step, std::size_t nth = 0) {
  for (const Message* m : t.messages()) {
    if (m->step == step && nth-- == 0) return *m;
  }
  throw std::runtime_error("no message for step " + std::string(step));
}

const Element& payload_value(const Message& m, std::string_view name) {
  for (const auto& item : m.payload)
    if (item.name == name) return item.value;
  throw std::runtime_error("no payload item " + std::string(name));
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

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::IoError;
}

}  // namespace

// --- ideal functionality ------------------------------------------------------

TEST_CASE("ideal functionality outputs at p=101") {
  auto s = [](std::uint64_t v) { return small.scalar(v); };
  auto huri = ideal_two_party({IdealKind::HURI}, {{kKGC, {{"alpha", s(3)}}}, {kAA, {{"r", s(7)}, {"beta", s(5)}}}});
  CHECK(huri.at(kKGC).at("x").value() == 50);
  CHECK_FALSE(huri.contains(kAA));

  auto lin1 = ideal_two_party({IdealKind::LIN1}, {{kCS, {{"alpha", s(5)}}}, {kKA, {{"q", s(3)}, {"tau", s(2)}}}});
  const std::uint64_t want = oracle::div(oracle::add(oracle::div(5, 3, 101), 2, 101), 3, 101);
  CHECK(want == 91);
  CHECK(lin1.at(kCS).at("x").value() == want);

  auto sec = ideal_two_party({IdealKind::SECURED},
                             {{kKGC, {{"alpha1", s(3)}, {"beta", s(5)}}}, {kAA, {{"alpha2", s(4)}, {"r", s(2)}}}});
  CHECK(sec.at(kKGC).at("x").value() == 22);

  auto lin2 = ideal_two_party({IdealKind::LIN2},
                              {{kCS, {{"r1", s(1)}, {"pi1", s(3)}}}, {kKA, {{"r2", s(2)}, {"pi2", s(4)}}}});
  CHECK(lin2.at(kDU).at("CPK3").value() == 76);
  CHECK(lin2.at(kCS).at("y").value() == oracle::mul(3, 12, 101));
  CHECK(lin2.at(kKA).at("y") == lin2.at(kCS).at("y"));

  auto hurii = ideal_two_party({IdealKind::HURII, 1},
                               {{authority(1), {{"alpha", s(4)}}}, {kCA, {{"gamma", s(3)}, {"beta", s(5)}}}});
  CHECK(hurii.at(authority(1)).at("x").value() == 35);
  CHECK(IdealSpec{IdealKind::HURII, 2}.name() == "HURII_2");

  auto wang = ideal_two_party({IdealKind::WANG}, {{kKA, {{"alpha1", s(3)}, {"beta", s(5)}}}, {kCSP, {{"alpha2", s(4)}}}});
  CHECK(wang.at(kCSP).at("x").value() == 35);
}

TEST_CASE("ideal functionality errors") {
  auto s = [](std::uint64_t v) { return small.scalar(v); };
  CHECK(code_of([&] { ideal_two_party({IdealKind::HURI}, {{kKGC, {{"alpha", s(3)}}}, {kAA, {{"r", s(7)}}}}); }) ==
        Errc::MissingInput);
  CHECK(code_of([&] {
          ideal_two_party({IdealKind::LIN1}, {{kCS, {{"alpha", s(5)}}}, {kKA, {{"q", s(0)}, {"tau", s(2)}}}});
        }) == Errc::DivisionByZero);
  CHECK(code_of([&] {
          ideal_two_party({IdealKind::SECURED},
                          {{kKGC, {{"alpha1", s(3)}, {"beta", s(0)}}}, {kAA, {{"alpha2", s(4)}, {"r", s(2)}}}});
        }) == Errc::DivisionByZero);
}

// --- hand vectors ---------------------------------------------------------------

TEST_CASE("Hur I key generation at p=101") {
  ScriptedRandom rng(11);
  rng.set("alpha", {3}).set("beta", {5}).set("r", {7}).set("t", {11});
  const Hur1System sys = hur1_setup(small, rng);
  CHECK(sys.pk.h == small.g_exp(5));
  CHECK(sys.pk.h_inv == small.g_exp(81));
  const Hur1Run run = hur1_keygen(sys, {"A"}, rng);
  CHECK(run.kgc.x.value() == 50);
  CHECK(run.aa.a_received == small.g_exp(78));
  CHECK(run.du.d_prime == small.g_exp(92));
  CHECK(run.key.d == small.g_exp(2));
  CHECK(run.key.d == small.g_exp(oracle::div(3 + 7, 5, 101)));
  CHECK(key_invariants_hold(sys.pk, run.key));
  CHECK(key_decrypts(sys.pk, run.key, rng));
}

TEST_CASE("Hur II key generation at p=101, m=2") {
  ScriptedRandom rng(12);
  rng.set("beta", {5}).set("alpha", {4, 5}).set("gamma", {3, 4}).set("tau", {2, 3});
  const Hur2System sys = hur2_setup(small, registry_for(2, {"A", "B"}), rng);
  CHECK(sys.pk.egg_alpha == small.gt_exp(9));
  const Hur2Run run = hur2_keygen(sys, {"A", "B"}, rng);
  CHECK(run.ca.r_t.value() == 7);
  CHECK(run.authorities[0].x.value() == 35);
  CHECK(payload_value(message_at(run.transcript, "3"), "T") == Element{small.g_exp(68)});
  CHECK(run.authorities[0].b_received == small.g_exp(31));
  CHECK(run.du.d_parts[0] == small.g_exp(62));
  CHECK(run.key.d == small.g_exp(84));
  CHECK(run.key.d == small.g_exp(oracle::div(9 + 7, 5, 101)));
  CHECK(key_invariants_hold(sys.pk, run.key));
  CHECK(key_decrypts(sys.pk, run.key, rng));
}

TEST_CASE("Wang key generation at p=101") {
  ScriptedRandom rng(13);
  rng.set("alpha1", {3}).set("beta", {5}).set("alpha2", {4});
  rng.set("r", {2}).set("rho1", {2}).set("theta", {3}).set("rho2", {7});
  const WangSystem sys = wang_setup(small, registry_for(1, {"A"}), rng);
  const WangRun run = wang_keygen(sys, {"A"}, rng);
  CHECK(run.ka.x1_received == small.g_exp(68));
  CHECK(run.csp.y1_received == small.g_exp(61));
  CHECK(run.csp.y2_received == small.g_exp(30));
  CHECK(run.ka.x2_received == small.g_exp(54));
  CHECK(run.csp.y3_received == small.g_exp(18));
  CHECK(run.key.d == small.g_exp(17));
  CHECK(run.key.d == small.g_exp(3 + 4 + 2 * 5));
  CHECK(pair(run.key.d, small.g()) == small.gt_exp(7) * pair(small.g_exp(2), sys.pk.h));
  CHECK(waters_key_valid(sys.pk, run.key));
}

TEST_CASE("Lin key generation at p=101") {
  ScriptedRandom rng(14);
  rng.set("q", {3}).set("alpha", {5});
  rng.set("tau", {2}).set("sigma", {6}).set("r1", {1}).set("pi1", {3}).set("r2", {2}).set("pi2", {4});
  const LinSystem sys = lin_setup(small, registry_for(1, {"A"}), rng);
  const LinRun run = lin_keygen(sys, {"A"}, rng);
  CHECK(run.cs.x.value() == 91);
  CHECK(run.shares.k_prime == small.g_exp(11));
  CHECK(run.shares.k_prime == small.g_exp(oracle::add(5, oracle::mul(3, 2, 101), 101)));
  CHECK(run.shares.cpk3.value() == 76);
  CHECK(run.shares.cpk3.value() == oracle::div(1 + 2, 3 * 4, 101));
  CHECK(run.shares.cpk2 == small.g_exp(28));
  CHECK(run.shares.cpk2.pow(run.shares.cpk3.inv()) == run.shares.k_prime);
  CHECK(run.shares.cpk1.d == small.g_exp(51));
  CHECK(lin_shares_valid(sys.pk, sys.registry, run.shares));
}

TEST_CASE("secured key generation at p=101") {
  ScriptedRandom rng(15);
  rng.set("alpha1", {3}).set("beta", {5}).set("alpha2", {4}).set("r", {2});
  const SecuredSystem sys = secured_setup(small, rng);
  CHECK(sys.pk.egg_alpha == small.gt_exp(7));
  const SecuredRun run = secured_keygen(sys, {"A"}, rng);
  CHECK(run.kgc.x.value() == 22);
  CHECK(run.key.d == small.g_exp(22));
  CHECK(key_invariants_hold(sys.pk, run.key));
  CHECK(key_decrypts(sys.pk, run.key, rng));
}

// --- configuration errors ------------------------------------------------------------

TEST_CASE("protocol configuration errors") {
  SeededRandom rng(16);
  ModelConfig none;
  none.authorities = 0;
  CHECK(code_of([&] { hur2_setup(big, none, rng); }) == Errc::BadConfig);
  ModelConfig out_of_range = registry_for(2, {"A"});
  out_of_range.registry["A"].authority = 3;
  CHECK(code_of([&] { hur2_setup(big, out_of_range, rng); }) == Errc::BadConfig);
  const Hur2System sys = hur2_setup(big, registry_for(2, {"A"}), rng);
  CHECK(code_of([&] { hur2_keygen(sys, {"B"}, rng); }) == Errc::UnassignedAttribute);
  ModelConfig zero = registry_for(1, {"A"});
  zero.registry["A"].h_index = 0;
  CHECK(code_of([&] { lin_setup(big, zero, rng); }) == Errc::BadConfig);
  const SecuredSystem sec = secured_setup(big, rng);
  CHECK(code_of([&] { secured_keygen(sec, {}, rng); }) == Errc::EmptyAttributeSet);
}

// --- transcripts -----------------------------------------------------------------------

namespace {

struct AnyRun {
  Transcript setup;
  Transcript keygen;
  std::vector<Scalar> secrets;
};

AnyRun run_model(Model model, std::uint64_t seed) {
  SeededRandom rng(seed);
  const AttributeSet attrs{"A", "B"};
  const ModelConfig cfg = registry_for(3, {"A", "B", "C"});
  switch (model) {
    case Model::hur1: {
      auto sys = hur1_setup(big, rng);
      auto run = hur1_keygen(sys, attrs, rng);
      return {sys.transcript, run.transcript, {sys.kgc.alpha, sys.aa.beta, run.aa.r}};
    }
    case Model::hur2: {
      auto sys = hur2_setup(big, cfg, rng);
      auto run = hur2_keygen(sys, attrs, rng);
      std::vector<Scalar> secrets{sys.ca.beta, run.ca.r_t, run.ca.r_prime};
      for (const auto& a : sys.authorities) secrets.push_back(a.alpha);
      return {sys.transcript, run.transcript, secrets};
    }
    case Model::wang: {
      auto sys = wang_setup(big, cfg, rng);
      auto run = wang_keygen(sys, attrs, rng);
      return {sys.transcript, run.transcript, {sys.ka.alpha1, sys.ka.beta, sys.csp.alpha2, run.ka.r}};
    }
    case Model::lin: {
      auto sys = lin_setup(big, cfg, rng);
      auto run = lin_keygen(sys, attrs, rng);
      lin_decryption_handoff(run);
      return {sys.transcript, run.transcript, {sys.ka.q, sys.cs.alpha, run.ka.tau}};
    }
    case Model::secured: {
      auto sys = secured_setup(big, rng);
      auto run = secured_keygen(sys, attrs, rng);
      return {sys.transcript, run.transcript, {sys.kgc.alpha1, sys.kgc.beta, sys.aa.alpha2, run.aa.r}};
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace

TEST_CASE("transcripts use only scripted steps and never carry master secrets") {
  for (Model model : {Model::hur1, Model::hur2, Model::wang, Model::lin, Model::secured}) {
    CAPTURE(to_string(model));
    const AnyRun run = run_model(model, 900);
    const auto& script = step_script(model);
    for (const Transcript* t : {&run.setup, &run.keygen}) {
      for (const Message* m : t->messages()) {
        CHECK(std::find(script.begin(), script.end(), m->step) != script.end());
        for (const auto& item : m->payload) {
          if (const auto* s = std::get_if<Scalar>(&item.value)) {
            for (const auto& secret : run.secrets) CHECK(*s != secret);
          }
        }
      }
      const std::string jsonl = t->to_jsonl();
      for (const auto& secret : run.secrets) {
        const std::string needle = R"("kind":"scalar","exp":")" + std::to_string(secret.value()) + "\"";
        CHECK(jsonl.find(needle) == std::string::npos);
      }
    }
  }
}

TEST_CASE("secured transcript shape: four messages and one ideal call") {
  const AnyRun run = run_model(Model::secured, 901);
  CHECK(run.keygen.messages().size() == 4);
  CHECK(run.keygen.ideal_count() == 1);
  const std::string jsonl = run.keygen.to_jsonl();
  CHECK(jsonl.find(R"({"seq":3,"ideal":"SECURED","outputs_to":["KGC"]})") != std::string::npos);
}

TEST_CASE("transcripts are deterministic per seed") {
  for (Model model : {Model::hur1, Model::hur2, Model::wang, Model::lin, Model::secured}) {
    CHECK(run_model(model, 77).keygen.to_jsonl() == run_model(model, 77).keygen.to_jsonl());
    CHECK(run_model(model, 77).keygen.to_jsonl() != run_model(model, 78).keygen.to_jsonl());
  }
}

// --- equivalence with the single-authority scheme ----------------------------------------

TEST_CASE("Bethencourt-form protocols issue valid keys, 100 seeds each") {
  const AttributeSet attrs{"A", "B", "C"};
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    SeededRandom rng(seed);
    const auto h1 = hur1_setup(big, rng);
    const auto k1 = hur1_keygen(h1, attrs, rng);
    CHECK(key_invariants_hold(h1.pk, k1.key));
    CHECK(key_decrypts(h1.pk, k1.key, rng));

    const auto sec = secured_setup(big, rng);
    const auto ks = secured_keygen(sec, attrs, rng);
    CHECK(key_invariants_hold(sec.pk, ks.key));
    CHECK(key_decrypts(sec.pk, ks.key, rng));

    for (std::uint32_t m : {2U, 3U, 5U}) {
      const auto h2 = hur2_setup(big, registry_for(m, {"A", "B", "C"}), rng);
      const auto k2 = hur2_keygen(h2, attrs, rng);
      CHECK(key_invariants_hold(h2.pk, k2.key));
      CHECK(key_decrypts(h2.pk, k2.key, rng));
    }
  }
}

TEST_CASE("Wang and Lin outputs satisfy their algebraic invariants, 100 seeds each") {
  const AttributeSet attrs{"A", "B", "C"};
  const ModelConfig cfg = registry_for(2, {"A", "B", "C"});
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    SeededRandom rng(seed);
    const auto w = wang_setup(big, cfg, rng);
    const auto wk = wang_keygen(w, attrs, rng);
    CHECK(waters_key_valid(w.pk, wk.key));
    CHECK(wk.key == waters_key_from(big, big.g_exp(w.ka.alpha1 + w.csp.alpha2), w.ka.beta, wk.ka.r, attrs, cfg.registry));

    const auto l = lin_setup(big, cfg, rng);
    const auto lk = lin_keygen(l, attrs, rng);
    CHECK(lin_shares_valid(l.pk, l.registry, lk.shares));
    CHECK(lk.shares.cpk2.pow(lk.shares.cpk3.inv()) == lk.shares.k_prime);
  }
}
