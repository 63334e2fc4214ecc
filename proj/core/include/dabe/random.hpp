#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <string_view>

#include "dabe/group.hpp"

namespace dabe {

/// Source of every random exponent used by the library. Each draw carries a
/// label naming the sampled quantity ("alpha", "r", "r_j", ...) so a scripted
/// source can pin individual values.
class RandomSource {
 public:
  virtual ~RandomSource() = default;

  /// Uniform in Z_p.
  Scalar uniform(const GroupContext& ctx, std::string_view label) { return draw(ctx, label, false); }
  /// Uniform in Z_p^*. Zero is rejected and redrawn.
  Scalar nonzero(const GroupContext& ctx, std::string_view label) { return draw(ctx, label, true); }

  /// Seed that reproduces this source, when there is one.
  virtual std::optional<std::uint64_t> seed() const { return std::nullopt; }

 protected:
  virtual Scalar draw(const GroupContext& ctx, std::string_view label, bool nonzero) = 0;
};

/// mt19937_64 with rejection sampling, so a seed fixes the output on every
/// standard library.
class SeededRandom final : public RandomSource {
 public:
  explicit SeededRandom(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::optional<std::uint64_t> seed() const override { return seed_; }
  /// Uniform in [0, bound).
  std::uint64_t below(std::uint64_t bound);

 protected:
  Scalar draw(const GroupContext& ctx, std::string_view label, bool nonzero) override;

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

/// Returns queued values per label. Labels without a queue fall back to a
/// seeded generator when one was given, otherwise the draw throws
/// ScriptExhausted.
class ScriptedRandom final : public RandomSource {
 public:
  ScriptedRandom() = default;
  explicit ScriptedRandom(std::uint64_t fallback_seed) : fallback_(SeededRandom(fallback_seed)) {}

  ScriptedRandom& set(std::string label, std::initializer_list<std::uint64_t> values);
  ScriptedRandom& push(const std::string& label, std::uint64_t value);

 protected:
  Scalar draw(const GroupContext& ctx, std::string_view label, bool nonzero) override;

 private:
  std::map<std::string, std::deque<std::uint64_t>, std::less<>> queues_;
  std::optional<SeededRandom> fallback_;
};

}  // namespace dabe
