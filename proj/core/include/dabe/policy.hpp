#pragma once

// Access trees: threshold gates over attribute leaves, the policy grammar,
// per-leaf secret sharing and Lagrange reconstruction.
//
// Grammar (keywords case-insensitive, "and" binds tighter than "or"):
//   policy  := or_expr
//   or_expr := and_expr { "or" and_expr }
//   and_expr:= atom { "and" atom }
//   atom    := ATTR | "(" policy ")" | INT "of" "(" policy { "," policy } ")"
//   ATTR    := [A-Za-z0-9_-]+ | '"' chars '"'

#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dabe/group.hpp"
#include "dabe/random.hpp"

namespace dabe {

using AttributeSet = std::set<std::string>;

/// Leaf when `children` is empty, otherwise a k-of-n gate. Child i (1-based)
/// uses i as its share x-coordinate.
struct AccessNode {
  std::string attribute;
  std::uint32_t threshold = 0;
  std::vector<AccessNode> children;

  bool is_leaf() const noexcept { return children.empty(); }

  static AccessNode leaf(std::string attribute);
  /// Throws ThresholdOutOfRange unless 1 <= k <= children.size().
  static AccessNode gate(std::uint32_t k, std::vector<AccessNode> children);
  static AccessNode all_of(std::vector<AccessNode> children);
  static AccessNode any_of(std::vector<AccessNode> children);

  friend bool operator==(const AccessNode&, const AccessNode&) = default;
};

/// Leaves and gates are named by their path from the root: "r" for the root,
/// "r.2.1" for the first child of the root's second child.
using NodePath = std::string;

struct LeafRef {
  NodePath path;
  std::string attribute;

  friend bool operator==(const LeafRef&, const LeafRef&) = default;
};

class AccessTree {
 public:
  explicit AccessTree(AccessNode root);

  const AccessNode& root() const noexcept { return root_; }
  /// Leaves in depth-first, left-to-right order.
  std::vector<LeafRef> leaves() const;
  std::size_t leaf_count() const;
  /// Canonical text form; parse_policy(to_string()) rebuilds an identical tree.
  std::string to_string() const;

  friend bool operator==(const AccessTree&, const AccessTree&) = default;

 private:
  AccessNode root_;
};

/// Throws PolicySyntaxError, ThresholdOutOfRange.
AccessTree parse_policy(std::string_view text);

struct DecryptionPlan {
  bool satisfied = false;
  /// For each gate on the chosen path, the k child indices used.
  std::map<NodePath, std::vector<std::uint32_t>> selected;
  /// Leaves reached through `selected`; all carry attributes in the query set.
  std::vector<LeafRef> leaves;
};

/// Among qualifying child subsets picks the lexicographically smallest, i.e.
/// the first k satisfied children.
DecryptionPlan satisfies(const AccessTree& tree, const AttributeSet& attrs);

using ShareMap = std::map<NodePath, Scalar>;

/// Each gate gets a random polynomial of degree k-1 whose constant term is the
/// value inherited from its parent (the root inherits `secret`). Coefficients
/// are drawn under the label "poly" in pre-order. The map holds q_x(0) for
/// every node, gates included.
ShareMap share_secret(const AccessTree& tree, const Scalar& secret, RandomSource& rng);

/// Delta_{i,S}(0) = prod_{j in S, j != i} (0 - j) / (i - j). Throws IndexNotInSet.
Scalar lagrange_coeff(const GroupContext& ctx, std::uint32_t i, std::span<const std::uint32_t> indices);

}  // namespace dabe
