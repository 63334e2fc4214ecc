#pragma once

// Symmetric bilinear group e: G0 x G0 -> GT of prime order p.
//
// Only the transparent backend is implemented: every element stores its
// discrete logarithm (base g for G0, base e(g,g) for GT). The group law is
// exponent addition mod p and the pairing multiplies exponents. This provides
// no hardness at all; it exists so that protocol and attack algebra can be
// checked with exact equality.

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "dabe/error.hpp"

namespace dabe {

enum class Backend { transparent, external };

std::string_view to_string(Backend backend) noexcept;

struct GroupParams {
  std::uint64_t p = 0;
  Backend backend = Backend::transparent;
  std::string hash_salt;

  friend bool operator==(const GroupParams&, const GroupParams&) = default;
};

/// 2^61 - 1.
inline constexpr std::uint64_t kDefaultPrime = 2305843009213693951ULL;
/// Small modulus used by the hand-checkable vectors.
inline constexpr std::uint64_t kTestPrime = 101;
inline constexpr std::string_view kDefaultSalt = "dabe/H";

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime(std::uint64_t n) noexcept;

class Scalar;
class GElem;
class GtElem;
class GroupContext;

namespace detail {
using ParamsPtr = std::shared_ptr<const GroupParams>;
bool same_params(const ParamsPtr& a, const ParamsPtr& b) noexcept;
void require_same(const ParamsPtr& a, const ParamsPtr& b);
}  // namespace detail

/// Element of Z_p.
class Scalar {
 public:
  Scalar() = default;

  std::uint64_t value() const noexcept { return value_; }
  bool is_zero() const noexcept { return value_ == 0; }
  GroupContext context() const;
  const GroupParams& params() const;

  Scalar inv() const;
  Scalar pow(std::uint64_t e) const;

  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a);
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

  friend bool operator==(const Scalar& a, const Scalar& b) noexcept {
    return a.value_ == b.value_ && detail::same_params(a.params_, b.params_);
  }

 private:
  friend class GroupContext;
  friend class GElem;
  friend class GtElem;
  Scalar(detail::ParamsPtr params, std::uint64_t v) : params_(std::move(params)), value_(v) {}

  detail::ParamsPtr params_;
  std::uint64_t value_ = 0;
};

/// Element of G0, written multiplicatively.
class GElem {
 public:
  GElem() = default;

  /// Discrete log base g. Transparent backend only.
  const Scalar& exponent() const noexcept { return exp_; }
  GroupContext context() const;
  bool is_identity() const noexcept { return exp_.is_zero(); }

  GElem pow(const Scalar& e) const;
  GElem inverse() const;

  friend GElem operator*(const GElem& a, const GElem& b);
  friend GElem operator/(const GElem& a, const GElem& b);
  GElem& operator*=(const GElem& o) { return *this = *this * o; }

  friend bool operator==(const GElem& a, const GElem& b) noexcept { return a.exp_ == b.exp_; }

 private:
  friend class GroupContext;
  friend GtElem pair(const GElem& a, const GElem& b);
  explicit GElem(Scalar e) : exp_(std::move(e)) {}
  Scalar exp_;
};

/// Element of GT, written multiplicatively.
class GtElem {
 public:
  GtElem() = default;

  /// Discrete log base e(g,g). Transparent backend only.
  const Scalar& exponent() const noexcept { return exp_; }
  GroupContext context() const;
  bool is_identity() const noexcept { return exp_.is_zero(); }

  GtElem pow(const Scalar& e) const;
  GtElem inverse() const;

  friend GtElem operator*(const GtElem& a, const GtElem& b);
  friend GtElem operator/(const GtElem& a, const GtElem& b);
  GtElem& operator*=(const GtElem& o) { return *this = *this * o; }

  friend bool operator==(const GtElem& a, const GtElem& b) noexcept { return a.exp_ == b.exp_; }

 private:
  friend class GroupContext;
  friend GtElem pair(const GElem& a, const GElem& b);
  explicit GtElem(Scalar e) : exp_(std::move(e)) {}
  Scalar exp_;
};

/// e(P, Q). Throws BackendMismatch for elements of different groups.
GtElem pair(const GElem& a, const GElem& b);

/// Handle to one set of group parameters. Cheap to copy; all elements created
/// through a context share its parameters.
class GroupContext {
 public:
  /// Throws NotPrime, UnsupportedBackend.
  static GroupContext create(std::uint64_t p, std::string hash_salt = std::string(kDefaultSalt),
                             Backend backend = Backend::transparent);

  const GroupParams& params() const noexcept { return *params_; }
  std::uint64_t order() const noexcept { return params_->p; }

  Scalar scalar(std::uint64_t v) const;
  /// Reduces a signed value into [0, p).
  Scalar scalar_signed(std::int64_t v) const;
  Scalar zero() const { return scalar(0); }
  Scalar one() const { return scalar(1); }

  GElem g() const { return GElem(one()); }
  GElem identity() const { return GElem(zero()); }
  GElem g_exp(const Scalar& a) const;
  GElem g_exp(std::uint64_t a) const { return g_exp(scalar(a)); }

  /// e(g, g).
  GtElem gt() const { return GtElem(one()); }
  GtElem gt_identity() const { return GtElem(zero()); }
  GtElem gt_exp(const Scalar& a) const;
  GtElem gt_exp(std::uint64_t a) const { return gt_exp(scalar(a)); }

  /// H: {0,1}* -> G0. SHA-256 of (salt, label) reduced mod p; never the identity.
  GElem hash_to_group(std::string_view label) const;
  /// H: {0,1}* -> Z_p^*, domain separated from hash_to_group.
  Scalar hash_to_scalar(std::string_view label) const;

  friend bool operator==(const GroupContext& a, const GroupContext& b) noexcept {
    return detail::same_params(a.params_, b.params_);
  }

 private:
  friend class Scalar;
  friend class GElem;
  friend class GtElem;
  explicit GroupContext(detail::ParamsPtr params) : params_(std::move(params)) {}
  detail::ParamsPtr params_;
};

/// Any value that can travel in a protocol message.
using Element = std::variant<Scalar, GElem, GtElem>;

const GroupParams& params_of(const Element& e);

// Canonical encodings. Text form:
//   {"backend":"transparent","p":"<decimal>","kind":"scalar|g0|gt","exp":"<decimal>"}
// Byte form: 8-byte little-endian length prefix followed by the text form.
std::string encode_text(const Element& e);
std::vector<std::uint8_t> encode_bytes(const Element& e);

/// Throws MalformedEncoding, ParamMismatch.
Element decode_text(const GroupContext& ctx, std::string_view text);
Element decode_bytes(const GroupContext& ctx, std::span<const std::uint8_t> bytes);

/// Typed decode; a kind mismatch is MalformedEncoding.
template <class T>
T decode_text_as(const GroupContext& ctx, std::string_view text) {
  Element e = decode_text(ctx, text);
  if (auto* v = std::get_if<T>(&e)) return *v;
  throw Error(Errc::MalformedEncoding, "encoded element has the wrong kind");
}

}  // namespace dabe
