#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "dabe/attacks.hpp"
#include "dabe/protocols.hpp"

namespace dabe {

/// Verdict the model's security analysis predicts for this attack and coalition.
Verdict expected_verdict(const AttackReport& report);

/// Registry and users shared by the demo and the golden transcripts.
ModelConfig demo_config();

struct DemoFile {
  std::string name;
  std::string contents;
};

/// Runs every model's setup and key generation, its authority+user attack,
/// escrow, and a user-collusion attempt. Each run uses its own generator seeded
/// from `seed`, so the output is a pure function of (seed, prime).
std::vector<DemoFile> run_demo(std::uint64_t seed, std::uint64_t prime = kDefaultPrime);

/// Sub-seed for stream `stream` of a run seeded with `seed` (SplitMix64).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept;

}  // namespace dabe
