#include "dabe/random.hpp"

namespace dabe {

std::uint64_t SeededRandom::below(std::uint64_t bound) {
  // Reject the top (2^64 mod bound) outputs to remove modulo bias.
  const std::uint64_t excess = (0 - bound) % bound;
  const std::uint64_t limit = 0 - excess;  // 2^64 - excess, wraps to 0 when excess == 0
  for (;;) {
    const std::uint64_t u = engine_();
    if (excess == 0 || u < limit) return u % bound;
  }
}

Scalar SeededRandom::draw(const GroupContext& ctx, std::string_view, bool nonzero) {
  for (;;) {
    Scalar s = ctx.scalar(below(ctx.order()));
    if (!nonzero || !s.is_zero()) return s;
  }
}

ScriptedRandom& ScriptedRandom::set(std::string label, std::initializer_list<std::uint64_t> values) {
  queues_[std::move(label)] = std::deque<std::uint64_t>(values);
  return *this;
}

ScriptedRandom& ScriptedRandom::push(const std::string& label, std::uint64_t value) {
  queues_[label].push_back(value);
  return *this;
}

Scalar ScriptedRandom::draw(const GroupContext& ctx, std::string_view label, bool nonzero) {
  auto it = queues_.find(label);
  if (it != queues_.end() && !it->second.empty()) {
    Scalar s = ctx.scalar(it->second.front());
    it->second.pop_front();
    if (nonzero && s.is_zero()) {
      throw Error(Errc::ScriptExhausted, "scripted value for '" + std::string(label) + "' must be nonzero");
    }
    return s;
  }
  if (fallback_) return nonzero ? fallback_->nonzero(ctx, label) : fallback_->uniform(ctx, label);
  throw Error(Errc::ScriptExhausted, "no scripted value left for '" + std::string(label) + "'");
}

}  // namespace dabe
