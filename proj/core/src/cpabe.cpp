#include "dabe/cpabe.hpp"

namespace dabe {

AttributeSet SecretKey::attributes() const {
  AttributeSet out;
  for (const auto& [attr, _] : components) out.insert(attr);
  return out;
}

PublicKey public_key_from(const GroupContext& ctx, const MasterKey& mk) {
  return PublicKey{ctx, ctx.g_exp(mk.beta), ctx.gt_exp(mk.alpha), ctx.g_exp(mk.beta.inv())};
}

std::pair<PublicKey, MasterKey> base_setup(const GroupContext& ctx, RandomSource& rng) {
  MasterKey mk{rng.nonzero(ctx, "alpha"), rng.nonzero(ctx, "beta")};
  return {public_key_from(ctx, mk), mk};
}

std::map<std::string, KeyComponent> issue_components(const GroupContext& ctx, const Scalar& r,
                                                     const AttributeSet& attrs, RandomSource& rng,
                                                     std::map<std::string, Scalar>& r_j_out) {
  std::map<std::string, KeyComponent> out;
  const GElem g_r = ctx.g_exp(r);
  for (const auto& attr : attrs) {
    const Scalar r_j = rng.nonzero(ctx, "r_j");
    r_j_out.insert_or_assign(attr, r_j);
    out.emplace(attr, KeyComponent{g_r * ctx.hash_to_group(attr).pow(r_j), ctx.g_exp(r_j)});
  }
  return out;
}

std::map<std::string, KeyComponent> issue_components(const GroupContext& ctx, const Scalar& r,
                                                     const AttributeSet& attrs, RandomSource& rng) {
  std::map<std::string, Scalar> discard;
  return issue_components(ctx, r, attrs, rng, discard);
}

SecretKey base_keygen(const GroupContext& ctx, const MasterKey& mk, const AttributeSet& attrs, RandomSource& rng) {
  if (attrs.empty()) throw Error(Errc::EmptyAttributeSet, "key generation needs at least one attribute");
  return base_keygen_with_r(ctx, mk, attrs, rng.nonzero(ctx, "r"), rng);
}

SecretKey base_keygen_with_r(const GroupContext& ctx, const MasterKey& mk, const AttributeSet& attrs, const Scalar& r,
                             RandomSource& rng) {
  if (attrs.empty()) throw Error(Errc::EmptyAttributeSet, "key generation needs at least one attribute");
  SecretKey sk;
  sk.gid_r = r;
  sk.d = ctx.g_exp((mk.alpha + r) / mk.beta);
  sk.components = issue_components(ctx, r, attrs, rng);
  return sk;
}

Ciphertext encrypt(const PublicKey& pk, const GtElem& message, const AccessTree& policy, RandomSource& rng) {
  const GroupContext& ctx = pk.ctx;
  const Scalar s = rng.nonzero(ctx, "s");
  const ShareMap shares = share_secret(policy, s, rng);
  Ciphertext ct{policy, message * pk.egg_alpha.pow(s), pk.h.pow(s), {}};
  for (const auto& leaf : policy.leaves()) {
    const Scalar& q = shares.at(leaf.path);
    ct.leaves.emplace(leaf.path, LeafCiphertext{ctx.g_exp(q), ctx.hash_to_group(leaf.attribute).pow(q)});
  }
  return ct;
}

namespace {

// Returns e(g,g)^{r q_x(0)} for the subtree at `path`.
GtElem decrypt_node(const AccessNode& node, const NodePath& path, const DecryptionPlan& plan, const SecretKey& sk,
                    const Ciphertext& ct) {
  if (node.is_leaf()) {
    const KeyComponent& kc = sk.components.at(node.attribute);
    const LeafCiphertext& lc = ct.leaves.at(path);
    return pair(kc.d, lc.c) / pair(kc.d_prime, lc.c_prime);
  }
  const auto& chosen = plan.selected.at(path);
  const GroupContext ctx = ct.c.context();
  GtElem acc = ctx.gt_identity();
  for (std::uint32_t index : chosen) {
    const GtElem child =
        decrypt_node(node.children[index - 1], path + "." + std::to_string(index), plan, sk, ct);
    acc *= child.pow(lagrange_coeff(ctx, index, chosen));
  }
  return acc;
}

}  // namespace

GtElem decrypt(const SecretKey& sk, const Ciphertext& ct) {
  const DecryptionPlan plan = satisfies(ct.policy, sk.attributes());
  if (!plan.satisfied) throw Error(Errc::PolicyNotSatisfied, "key attributes do not satisfy the ciphertext policy");
  const GtElem a = decrypt_node(ct.policy.root(), "r", plan, sk, ct);
  return ct.c_tilde * a / pair(ct.c, sk.d);
}

bool key_invariants_hold(const PublicKey& pk, const SecretKey& sk) {
  if (!sk.gid_r) return false;
  const GroupContext& ctx = pk.ctx;
  const GtElem egg_r = ctx.gt_exp(*sk.gid_r);
  if (pair(sk.d, pk.h) != pk.egg_alpha * egg_r) return false;
  for (const auto& [attr, kc] : sk.components) {
    if (pair(kc.d, ctx.g()) / pair(kc.d_prime, ctx.hash_to_group(attr)) != egg_r) return false;
  }
  return true;
}

bool key_consistent_with(const PublicKey& pk, const SecretKey& sk) {
  const GroupContext& ctx = pk.ctx;
  const GtElem egg_r = pair(sk.d, pk.h) / pk.egg_alpha;
  for (const auto& [attr, kc] : sk.components) {
    if (pair(kc.d, ctx.g()) / pair(kc.d_prime, ctx.hash_to_group(attr)) != egg_r) return false;
  }
  return !sk.components.empty();
}

bool key_decrypts(const PublicKey& pk, const SecretKey& sk, RandomSource& rng) {
  if (sk.components.empty()) return false;
  std::vector<AccessNode> leaves;
  for (const auto& [attr, _] : sk.components) leaves.push_back(AccessNode::leaf(attr));
  AccessTree policy(leaves.size() == 1 ? std::move(leaves.front()) : AccessNode::all_of(std::move(leaves)));
  const GtElem m = pk.ctx.gt_exp(rng.uniform(pk.ctx, "m"));
  return decrypt(sk, encrypt(pk, m, policy, rng)) == m;
}

}  // namespace dabe
