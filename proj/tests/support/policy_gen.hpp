#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "dabe/policy.hpp"
#include "dabe/random.hpp"

namespace gen {

inline const std::vector<std::string>& attribute_pool() {
  static const std::vector<std::string> pool{"A", "B", "C", "D", "Doctor", "Pathology Department", "and", "42",
                                             "x\"y"};
  return pool;
}

/// Random tree with exactly `leaves` leaves drawn from the first `alphabet` pool entries.
inline dabe::AccessNode random_node(dabe::SeededRandom& rng, std::uint32_t leaves, std::size_t alphabet) {
  if (leaves <= 1) return dabe::AccessNode::leaf(attribute_pool()[rng.below(alphabet)]);
  const auto n = static_cast<std::uint32_t>(2 + rng.below(std::min<std::uint32_t>(leaves, 4) - 1));
  std::vector<std::uint32_t> sizes(n, 1);
  for (std::uint32_t rest = leaves - n; rest > 0; --rest) ++sizes[rng.below(n)];
  std::vector<dabe::AccessNode> children;
  for (std::uint32_t size : sizes) children.push_back(random_node(rng, size, alphabet));
  return dabe::AccessNode::gate(static_cast<std::uint32_t>(1 + rng.below(n)), std::move(children));
}

inline dabe::AccessTree random_tree(dabe::SeededRandom& rng, std::uint32_t max_leaves, std::size_t alphabet = 6) {
  return dabe::AccessTree(random_node(rng, static_cast<std::uint32_t>(1 + rng.below(max_leaves)), alphabet));
}

inline dabe::AttributeSet random_attrs(dabe::SeededRandom& rng, std::size_t alphabet = 6) {
  dabe::AttributeSet out;
  for (std::size_t i = 0; i < alphabet; ++i)
    if (rng.below(2) == 1) out.insert(attribute_pool()[i]);
  return out;
}

/// Brute-force evaluation: a gate holds when at least k children hold.
inline bool holds(const dabe::AccessNode& node, const dabe::AttributeSet& attrs) {
  if (node.is_leaf()) return attrs.contains(node.attribute);
  std::uint32_t ok = 0;
  for (const auto& c : node.children) ok += holds(c, attrs) ? 1 : 0;
  return ok >= node.threshold;
}

}  // namespace gen
