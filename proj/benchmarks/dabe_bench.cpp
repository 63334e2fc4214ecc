#include <benchmark/benchmark.h>

#include "dabe/attacks.hpp"
#include "dabe/kem.hpp"

using namespace dabe;

namespace {

const GroupContext ctx = GroupContext::create(kDefaultPrime);

AttributeSet attributes(std::int64_t n) {
  AttributeSet out;
  for (std::int64_t i = 0; i < n; ++i) out.insert("attr" + std::to_string(i));
  return out;
}

std::string conjunction(std::int64_t n) {
  std::string out;
  for (std::int64_t i = 0; i < n; ++i) out += (i ? " and attr" : "attr") + std::to_string(i);
  return out;
}

ModelConfig config(std::uint32_t m, const AttributeSet& attrs) {
  ModelConfig cfg;
  cfg.authorities = m;
  std::uint32_t i = 0;
  for (const auto& a : attrs) cfg.registry[a] = RegistryEntry{1 + i++ % m, 3, 1};
  return cfg;
}

void BM_Pairing(benchmark::State& state) {
  SeededRandom rng(1);
  const GElem a = ctx.g_exp(rng.nonzero(ctx, "a")), b = ctx.g_exp(rng.nonzero(ctx, "b"));
  for (auto _ : state) benchmark::DoNotOptimize(pair(a, b));
}
BENCHMARK(BM_Pairing);

void BM_ParsePolicy(benchmark::State& state) {
  const std::string text = conjunction(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(parse_policy(text));
}
BENCHMARK(BM_ParsePolicy)->Arg(4)->Arg(32);

void BM_EncryptDecrypt(benchmark::State& state) {
  SeededRandom rng(2);
  const auto [pk, mk] = base_setup(ctx, rng);
  const AttributeSet attrs = attributes(state.range(0));
  const SecretKey sk = base_keygen(ctx, mk, attrs, rng);
  const AccessTree policy = parse_policy(conjunction(state.range(0)));
  const GtElem m = ctx.gt_exp(rng.uniform(ctx, "m"));
  for (auto _ : state) benchmark::DoNotOptimize(decrypt(sk, encrypt(pk, m, policy, rng)));
}
BENCHMARK(BM_EncryptDecrypt)->Arg(2)->Arg(8)->Arg(32);

void BM_Hur2Keygen(benchmark::State& state) {
  SeededRandom rng(3);
  const AttributeSet attrs = attributes(8);
  const auto sys = hur2_setup(ctx, config(static_cast<std::uint32_t>(state.range(0)), attrs), rng);
  for (auto _ : state) benchmark::DoNotOptimize(hur2_keygen(sys, attrs, rng));
}
BENCHMARK(BM_Hur2Keygen)->Arg(2)->Arg(5)->Arg(10);

void BM_SecuredKeygen(benchmark::State& state) {
  SeededRandom rng(4);
  const AttributeSet attrs = attributes(state.range(0));
  const auto sys = secured_setup(ctx, rng);
  for (auto _ : state) benchmark::DoNotOptimize(secured_keygen(sys, attrs, rng));
}
BENCHMARK(BM_SecuredKeygen)->Arg(2)->Arg(16);

void BM_SecuredForgeryTrials(benchmark::State& state) {
  SeededRandom rng(5);
  const auto sys = secured_setup(ctx, rng);
  const auto run = secured_keygen(sys, {"A"}, rng);
  for (auto _ : state)
    benchmark::DoNotOptimize(attack_secured_attempt(sys.pk, sys.aa, run.aa, run.key.d, 1000, rng));
}
BENCHMARK(BM_SecuredForgeryTrials)->Unit(benchmark::kMillisecond);

void BM_KemRoundTrip(benchmark::State& state) {
  SeededRandom rng(6);
  const auto sys = secured_setup(ctx, rng);
  const auto run = secured_keygen(sys, {"A", "B"}, rng);
  const AccessTree policy = parse_policy("A and B");
  const std::vector<std::uint8_t> data(static_cast<std::size_t>(state.range(0)), 0x5a);
  for (auto _ : state) benchmark::DoNotOptimize(kem_decrypt(run.key, kem_encrypt(sys.pk, policy, data, rng)));
  state.SetBytesProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_KemRoundTrip)->Arg(1024)->Arg(1 << 16);

}  // namespace

BENCHMARK_MAIN();
