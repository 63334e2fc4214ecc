#include "dabe/policy.hpp"

#include <algorithm>
#include <cctype>
#include <optional>

namespace dabe {

// --- nodes ------------------------------------------------------------------

AccessNode AccessNode::leaf(std::string attribute) {
  AccessNode n;
  n.attribute = std::move(attribute);
  return n;
}

AccessNode AccessNode::gate(std::uint32_t k, std::vector<AccessNode> children) {
  if (children.empty() || k < 1 || k > children.size()) {
    throw Error(Errc::ThresholdOutOfRange, "threshold " + std::to_string(k) + " out of range for " +
                                               std::to_string(children.size()) + " children");
  }
  AccessNode n;
  n.threshold = k;
  n.children = std::move(children);
  return n;
}

AccessNode AccessNode::all_of(std::vector<AccessNode> children) {
  const auto k = static_cast<std::uint32_t>(children.size());
  return gate(k, std::move(children));
}

AccessNode AccessNode::any_of(std::vector<AccessNode> children) { return gate(1, std::move(children)); }

namespace {

std::string child_path(const NodePath& parent, std::size_t index) {
  return parent + "." + std::to_string(index + 1);
}

void validate(const AccessNode& node) {
  if (node.is_leaf()) return;
  if (node.threshold < 1 || node.threshold > node.children.size()) {
    throw Error(Errc::ThresholdOutOfRange, "threshold out of range in access tree");
  }
  for (const auto& c : node.children) validate(c);
}

void collect_leaves(const AccessNode& node, const NodePath& path, std::vector<LeafRef>& out) {
  if (node.is_leaf()) {
    out.push_back({path, node.attribute});
    return;
  }
  for (std::size_t i = 0; i < node.children.size(); ++i) collect_leaves(node.children[i], child_path(path, i), out);
}

bool is_keyword(std::string_view word) {
  auto lower = [](std::string_view w) {
    std::string s(w);
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
  };
  const std::string w = lower(word);
  return w == "and" || w == "or" || w == "of";
}

bool is_bare_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_' || c == '-';
}

std::string render_attribute(const std::string& attr) {
  const bool bare = !attr.empty() && std::all_of(attr.begin(), attr.end(), is_bare_char) && !is_keyword(attr) &&
                    !std::all_of(attr.begin(), attr.end(), [](unsigned char c) { return std::isdigit(c) != 0; });
  if (bare) return attr;
  std::string out = "\"";
  for (char c : attr) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

void render(const AccessNode& node, std::string& out) {
  if (node.is_leaf()) {
    out += render_attribute(node.attribute);
    return;
  }
  const auto n = node.children.size();
  auto render_child = [&](const AccessNode& c) {
    if (c.is_leaf()) {
      render(c, out);
    } else {
      out += '(';
      render(c, out);
      out += ')';
    }
  };
  if (n >= 2 && (node.threshold == n || node.threshold == 1)) {
    const char* sep = node.threshold == n ? " and " : " or ";
    for (std::size_t i = 0; i < n; ++i) {
      if (i > 0) out += sep;
      render_child(node.children[i]);
    }
    return;
  }
  out += std::to_string(node.threshold);
  out += " of (";
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0) out += ", ";
    render(node.children[i], out);
  }
  out += ')';
}

}  // namespace

AccessTree::AccessTree(AccessNode root) : root_(std::move(root)) { validate(root_); }

std::vector<LeafRef> AccessTree::leaves() const {
  std::vector<LeafRef> out;
  collect_leaves(root_, "r", out);
  return out;
}

std::size_t AccessTree::leaf_count() const { return leaves().size(); }

std::string AccessTree::to_string() const {
  std::string out;
  render(root_, out);
  return out;
}

// --- parser -----------------------------------------------------------------

namespace {

enum class Tok { Attr, Int, And, Or, Of, LParen, RParen, Comma, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) { advance(); }

  AccessNode parse() {
    if (current_.kind == Tok::End) fail("an attribute, '(' or a threshold");
    AccessNode root = parse_or();
    if (current_.kind != Tok::End) fail("'and', 'or' or end of input");
    return root;
  }

 private:
  AccessNode parse_or() {
    std::vector<AccessNode> parts;
    parts.push_back(parse_and());
    while (current_.kind == Tok::Or) {
      advance();
      parts.push_back(parse_and());
    }
    if (parts.size() == 1) return std::move(parts.front());
    return AccessNode::any_of(std::move(parts));
  }

  AccessNode parse_and() {
    std::vector<AccessNode> parts;
    parts.push_back(parse_atom());
    while (current_.kind == Tok::And) {
      advance();
      parts.push_back(parse_atom());
    }
    if (parts.size() == 1) return std::move(parts.front());
    return AccessNode::all_of(std::move(parts));
  }

  AccessNode parse_atom() {
    switch (current_.kind) {
      case Tok::Attr: {
        auto leaf = AccessNode::leaf(current_.text);
        advance();
        return leaf;
      }
      case Tok::Int: {
        Token number = current_;
        advance();
        if (current_.kind != Tok::Of) return AccessNode::leaf(number.text);
        advance();
        expect(Tok::LParen, "'('");
        std::vector<AccessNode> children;
        children.push_back(parse_or());
        while (current_.kind == Tok::Comma) {
          advance();
          children.push_back(parse_or());
        }
        expect(Tok::RParen, "',' or ')'");
        std::uint64_t k = 0;
        for (char c : number.text) {
          k = k * 10 + static_cast<std::uint64_t>(c - '0');
          if (k > children.size()) break;
        }
        if (k < 1 || k > children.size()) {
          throw Error(Errc::ThresholdOutOfRange, "threshold " + number.text + " at position " +
                                                     std::to_string(number.pos) + " needs 1.." +
                                                     std::to_string(children.size()));
        }
        return AccessNode::gate(static_cast<std::uint32_t>(k), std::move(children));
      }
      case Tok::LParen: {
        advance();
        AccessNode inner = parse_or();
        expect(Tok::RParen, "')', 'and' or 'or'");
        return inner;
      }
      default:
        fail("an attribute, '(' or a threshold");
    }
  }

  void expect(Tok kind, const char* what) {
    if (current_.kind != kind) fail(what);
    advance();
  }

  [[noreturn]] void fail(const std::string& expected) const {
    const std::string found = current_.kind == Tok::End ? "end of input" : "'" + current_.text + "'";
    throw PolicySyntaxError(current_.pos, expected,
                            "policy syntax error at position " + std::to_string(current_.pos) + ": expected " +
                                expected + ", found " + found);
  }

  void advance() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_])) != 0) ++pos_;
    const std::size_t start = pos_;
    if (pos_ >= src_.size()) {
      current_ = {Tok::End, "", start};
      return;
    }
    const char c = src_[pos_];
    if (c == '(' || c == ')' || c == ',') {
      ++pos_;
      current_ = {c == '(' ? Tok::LParen : c == ')' ? Tok::RParen : Tok::Comma, std::string(1, c), start};
      return;
    }
    if (c == '"') {
      std::string text;
      ++pos_;
      while (pos_ < src_.size() && src_[pos_] != '"') {
        if (src_[pos_] == '\\' && pos_ + 1 < src_.size()) ++pos_;
        text += src_[pos_++];
      }
      if (pos_ >= src_.size()) {
        throw PolicySyntaxError(start, "closing '\"'",
                                "policy syntax error at position " + std::to_string(start) +
                                    ": unterminated quoted attribute");
      }
      ++pos_;
      if (text.empty()) {
        throw PolicySyntaxError(start, "a non-empty attribute",
                                "policy syntax error at position " + std::to_string(start) + ": empty attribute");
      }
      current_ = {Tok::Attr, std::move(text), start};
      return;
    }
    if (is_bare_char(c)) {
      while (pos_ < src_.size() && is_bare_char(src_[pos_])) ++pos_;
      std::string word(src_.substr(start, pos_ - start));
      std::string lower = word;
      std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char ch) { return std::tolower(ch); });
      Tok kind = Tok::Attr;
      if (lower == "and") {
        kind = Tok::And;
      } else if (lower == "or") {
        kind = Tok::Or;
      } else if (lower == "of") {
        kind = Tok::Of;
      } else if (std::all_of(word.begin(), word.end(), [](unsigned char ch) { return std::isdigit(ch) != 0; })) {
        kind = Tok::Int;
      }
      current_ = {kind, std::move(word), start};
      return;
    }
    throw PolicySyntaxError(start, "an attribute, '(' or a threshold",
                            "policy syntax error at position " + std::to_string(start) + ": unexpected character '" +
                                std::string(1, c) + "'");
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  Token current_{Tok::End, "", 0};
};

}  // namespace

AccessTree parse_policy(std::string_view text) { return AccessTree(Parser(text).parse()); }

// --- satisfaction -----------------------------------------------------------

namespace {

bool plan_node(const AccessNode& node, const NodePath& path, const AttributeSet& attrs, DecryptionPlan& plan) {
  if (node.is_leaf()) {
    if (!attrs.contains(node.attribute)) return false;
    plan.leaves.push_back({path, node.attribute});
    return true;
  }
  std::vector<std::uint32_t> chosen;
  for (std::size_t i = 0; i < node.children.size() && chosen.size() < node.threshold; ++i) {
    DecryptionPlan sub;
    if (plan_node(node.children[i], child_path(path, i), attrs, sub)) {
      chosen.push_back(static_cast<std::uint32_t>(i + 1));
      plan.selected.merge(sub.selected);
      plan.leaves.insert(plan.leaves.end(), sub.leaves.begin(), sub.leaves.end());
    }
  }
  if (chosen.size() < node.threshold) return false;
  plan.selected.emplace(path, std::move(chosen));
  return true;
}

}  // namespace

DecryptionPlan satisfies(const AccessTree& tree, const AttributeSet& attrs) {
  DecryptionPlan plan;
  if (plan_node(tree.root(), "r", attrs, plan)) {
    plan.satisfied = true;
  } else {
    plan = DecryptionPlan{};
  }
  return plan;
}

// --- sharing ----------------------------------------------------------------

namespace {

void share_node(const AccessNode& node, const NodePath& path, const Scalar& value, RandomSource& rng, ShareMap& out) {
  out.emplace(path, value);
  if (node.is_leaf()) return;
  const GroupContext ctx = value.context();
  std::vector<Scalar> coeffs{value};
  for (std::uint32_t d = 1; d < node.threshold; ++d) coeffs.push_back(rng.uniform(ctx, "poly"));
  for (std::size_t i = 0; i < node.children.size(); ++i) {
    const Scalar x = ctx.scalar(i + 1);
    Scalar y = ctx.zero();
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) y = y * x + *it;  // Horner
    share_node(node.children[i], child_path(path, i), y, rng, out);
  }
}

}  // namespace

ShareMap share_secret(const AccessTree& tree, const Scalar& secret, RandomSource& rng) {
  ShareMap out;
  share_node(tree.root(), "r", secret, rng, out);
  return out;
}

Scalar lagrange_coeff(const GroupContext& ctx, std::uint32_t i, std::span<const std::uint32_t> indices) {
  if (std::find(indices.begin(), indices.end(), i) == indices.end()) {
    throw Error(Errc::IndexNotInSet, "index " + std::to_string(i) + " not in interpolation set");
  }
  Scalar num = ctx.one();
  Scalar den = ctx.one();
  const Scalar xi = ctx.scalar(i);
  for (std::uint32_t j : indices) {
    if (j == i) continue;
    const Scalar xj = ctx.scalar(j);
    num *= -xj;
    den *= xi - xj;
  }
  if (den.is_zero()) throw Error(Errc::IndexNotInSet, "interpolation indices are not distinct mod p");
  return num / den;
}

}  // namespace dabe
