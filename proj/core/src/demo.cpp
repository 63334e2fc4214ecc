#include "dabe/demo.hpp"

#include <algorithm>

#include "dabe/codec.hpp"

namespace dabe {

namespace {

using Json = nlohmann::ordered_json;

const AttributeSet kAlice{"Researcher", "Pathology"};
const AttributeSet kBob{"Doctor"};
const AttributeSet kForgedFor{"Doctor", "Pathology", "Researcher"};

struct Collector {
  std::vector<DemoFile> files;
  Json summary = Json::array();

  void transcript(Model model, const std::string& what, const Transcript& t) {
    files.push_back({std::string(to_string(model)) + "." + what + ".jsonl", t.to_jsonl()});
  }

  void report(const AttackReport& r) {
    files.push_back({std::string(to_string(r.model)) + "." + r.attack + ".json", codec::report_to_json(r).dump() + "\n"});
    const Verdict want = expected_verdict(r);
    summary.push_back({{"model", std::string(to_string(r.model))},
                       {"attack", r.attack},
                       {"verdict", std::string(to_string(r.verdict))},
                       {"expected", std::string(to_string(want))},
                       {"matches", r.verdict == want}});
  }
};

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
  std::uint64_t z = seed + (stream + 1) * 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Verdict expected_verdict(const AttackReport& report) {
  if (report.attack == "escrow" || report.attack == "authority-du+beta") return Verdict::RecoveredAndForged;
  if (report.attack == "du-collusion") return Verdict::ForgeryFailed;
  auto has = [&](PartyId p) { return std::find(report.colluders.begin(), report.colluders.end(), p) != report.colluders.end(); };
  if (report.model == Model::secured) return Verdict::InsufficientKnowledge;
  if (report.model == Model::hur1 && !has(kAA)) return Verdict::InsufficientKnowledge;
  if (report.model == Model::wang && !has(kKA)) return Verdict::InsufficientKnowledge;
  return Verdict::RecoveredAndForged;
}

ModelConfig demo_config() {
  ModelConfig cfg;
  cfg.authorities = 3;
  cfg.registry = {
      {"Doctor", RegistryEntry{1, 2, 1}},
      {"Researcher", RegistryEntry{2, 3, 2}},
      {"Pathology", RegistryEntry{3, 5, 3}},
  };
  return cfg;
}

std::vector<DemoFile> run_demo(std::uint64_t seed, std::uint64_t prime) {
  const GroupContext ctx = GroupContext::create(prime);
  const ModelConfig cfg = demo_config();
  Collector out;

  {
    SeededRandom rng(derive_seed(seed, 0));
    const Hur1System sys = hur1_setup(ctx, rng);
    const Hur1Run run = hur1_keygen(sys, kAlice, rng);
    out.transcript(Model::hur1, "setup", sys.transcript);
    out.transcript(Model::hur1, "keygen", run.transcript);
    out.report(attack_hur1(sys.pk, sys.aa, run.aa, run.du.t, rng.nonzero(ctx, "r_star"), kForgedFor, rng));
    out.report(attack_escrow(Hur1Authorities{sys.kgc, sys.aa}, sys.pk, cfg.registry, kForgedFor, rng));
  }
  {
    SeededRandom rng(derive_seed(seed, 1));
    const Hur2System sys = hur2_setup(ctx, cfg, rng);
    const Hur2Run run = hur2_keygen(sys, kAlice, rng);
    out.transcript(Model::hur2, "setup", sys.transcript);
    out.transcript(Model::hur2, "keygen", run.transcript);
    out.report(attack_hur2(sys.pk, sys.ca, run.ca, run.key.d, rng.nonzero(ctx, "r_star"), kForgedFor, rng));
    out.report(attack_escrow(Hur2Authorities{sys.ca, sys.authorities}, sys.pk, cfg.registry, kForgedFor, rng));
  }
  {
    SeededRandom rng(derive_seed(seed, 2));
    const WangSystem sys = wang_setup(ctx, cfg, rng);
    const WangRun run = wang_keygen(sys, kAlice, rng);
    out.transcript(Model::wang, "setup", sys.transcript);
    out.transcript(Model::wang, "keygen", run.transcript);
    out.report(attack_wang(sys.pk, sys.registry, sys.ka, run.ka, run.key.d, rng.nonzero(ctx, "r_star"), kForgedFor));
    out.report(attack_escrow(WangAuthorities{sys.ka, sys.csp}, sys.pk, sys.registry, kForgedFor, rng));
  }
  {
    SeededRandom rng(derive_seed(seed, 3));
    const LinSystem sys = lin_setup(ctx, cfg, rng);
    LinRun run = lin_keygen(sys, kAlice, rng);
    const LinDsView ds = lin_decryption_handoff(run);
    out.transcript(Model::lin, "setup", sys.transcript);
    out.transcript(Model::lin, "keygen", run.transcript);
    out.report(attack_lin(sys.pk, sys.registry, sys.ka, run.ka, ds.cpk2, run.shares.cpk3, kForgedFor, rng));
    out.report(attack_escrow(LinAuthorities{sys.ka, sys.cs}, sys.pk, sys.registry, kForgedFor, rng));
  }
  {
    SeededRandom rng(derive_seed(seed, 4));
    const SecuredSystem sys = secured_setup(ctx, rng);
    const SecuredRun alice = secured_keygen(sys, kAlice, rng);
    const SecuredRun bob = secured_keygen(sys, kBob, rng);
    out.transcript(Model::secured, "setup", sys.transcript);
    out.transcript(Model::secured, "keygen", alice.transcript);
    out.report(attack_secured_attempt(sys.pk, sys.aa, alice.aa, alice.key.d, 16, rng));
    out.report(attack_escrow(SecuredAuthorities{sys.kgc, sys.aa}, sys.pk, cfg.registry, kForgedFor, rng));
    out.report(attack_du_collusion(sys.pk, alice.key, bob.key, {}, parse_policy("Doctor and Researcher"), rng));
  }

  out.files.push_back({"summary.json", out.summary.dump(2) + "\n"});
  return std::move(out.files);
}

}  // namespace dabe
