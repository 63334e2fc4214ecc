#include "dabe/group.hpp"

#include <charconv>

#include <nlohmann/json.hpp>

#include "digest.hpp"

namespace dabe {

namespace {

__extension__ using u128 = unsigned __int128;
__extension__ using i128 = __int128;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t e, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (e > 0) {
    if (e & 1U) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    e >>= 1U;
  }
  return result;
}

std::uint64_t add_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  // a, b < m <= 2^64 - 1; the sum may wrap.
  std::uint64_t s = a + b;
  if (s < a || s >= m) s -= m;
  return s;
}

std::uint64_t sub_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return a >= b ? a - b : a + (m - b);
}

/// Extended Euclid; returns x with a*x = 1 mod m. Requires gcd(a, m) = 1.
std::uint64_t inv_mod(std::uint64_t a, std::uint64_t m) {
  i128 t = 0, new_t = 1;
  i128 r = m, new_r = a;
  while (new_r != 0) {
    i128 q = r / new_r;
    i128 tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (t < 0) t += m;
  return static_cast<std::uint64_t>(t);
}

constexpr std::string_view kind_name(std::size_t index) {
  constexpr std::string_view names[] = {"scalar", "g0", "gt"};
  return names[index];
}

std::uint64_t parse_decimal(const nlohmann::json& j, const char* field) {
  if (!j.contains(field) || !j[field].is_string()) {
    throw Error(Errc::MalformedEncoding, std::string("element encoding lacks string field '") + field + "'");
  }
  const auto& s = j[field].get_ref<const std::string&>();
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
    throw Error(Errc::MalformedEncoding, std::string("field '") + field + "' is not a decimal integer");
  }
  return v;
}

}  // namespace

std::string_view to_string(Backend backend) noexcept {
  return backend == Backend::transparent ? "transparent" : "external";
}

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  for (std::uint64_t small : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % small == 0) return n == small;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++s;
  }
  // These twelve bases are a deterministic witness set below 3.3e24.
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

namespace detail {

bool same_params(const ParamsPtr& a, const ParamsPtr& b) noexcept {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

void require_same(const ParamsPtr& a, const ParamsPtr& b) {
  if (!a || !b) throw Error(Errc::BackendMismatch, "operation on an uninitialized group element");
  if (!same_params(a, b)) throw Error(Errc::BackendMismatch, "operands belong to different groups");
}

}  // namespace detail

// --- GroupContext -----------------------------------------------------------

GroupContext GroupContext::create(std::uint64_t p, std::string hash_salt, Backend backend) {
  if (backend != Backend::transparent) {
    throw Error(Errc::UnsupportedBackend, "only the transparent backend is available");
  }
  if (!is_prime(p)) throw Error(Errc::NotPrime, "group order " + std::to_string(p) + " is not prime");
  return GroupContext(std::make_shared<const GroupParams>(GroupParams{p, backend, std::move(hash_salt)}));
}

Scalar GroupContext::scalar(std::uint64_t v) const { return Scalar(params_, v % params_->p); }

Scalar GroupContext::scalar_signed(std::int64_t v) const {
  const auto p = params_->p;
  if (v >= 0) return scalar(static_cast<std::uint64_t>(v));
  // -(v) fits in uint64 even for INT64_MIN.
  std::uint64_t neg = static_cast<std::uint64_t>(-(v + 1)) + 1;
  return Scalar(params_, sub_mod(0, neg % p, p));
}

GElem GroupContext::g_exp(const Scalar& a) const {
  detail::require_same(params_, a.params_);
  return GElem(a);
}

GtElem GroupContext::gt_exp(const Scalar& a) const {
  detail::require_same(params_, a.params_);
  return GtElem(a);
}

namespace {

std::uint64_t hash_exponent(const GroupParams& params, std::string_view domain, std::string_view label) {
  for (std::uint64_t counter = 0;; ++counter) {
    auto digest = detail::Sha256()
                      .update_framed(params.hash_salt)
                      .update_framed(domain)
                      .update_framed(label)
                      .update_u64(counter)
                      .finish();
    u128 wide = 0;
    for (int i = 0; i < 16; ++i) wide = (wide << 8U) | digest[i];
    auto v = static_cast<std::uint64_t>(wide % params.p);
    if (v != 0) return v;
  }
}

}  // namespace

GElem GroupContext::hash_to_group(std::string_view label) const {
  return GElem(Scalar(params_, hash_exponent(*params_, "G0", label)));
}

Scalar GroupContext::hash_to_scalar(std::string_view label) const {
  return Scalar(params_, hash_exponent(*params_, "Zp", label));
}

// --- Scalar -----------------------------------------------------------------

GroupContext Scalar::context() const {
  if (!params_) throw Error(Errc::BackendMismatch, "uninitialized scalar has no group");
  return GroupContext(params_);
}

const GroupParams& Scalar::params() const {
  if (!params_) throw Error(Errc::BackendMismatch, "uninitialized scalar has no group");
  return *params_;
}

Scalar Scalar::inv() const {
  detail::require_same(params_, params_);
  if (value_ == 0) throw Error(Errc::InversionOfZero, "inversion of zero in Z_p");
  return Scalar(params_, inv_mod(value_, params_->p));
}

Scalar Scalar::pow(std::uint64_t e) const {
  detail::require_same(params_, params_);
  return Scalar(params_, pow_mod(value_, e, params_->p));
}

Scalar operator+(const Scalar& a, const Scalar& b) {
  detail::require_same(a.params_, b.params_);
  return Scalar(a.params_, add_mod(a.value_, b.value_, a.params_->p));
}

Scalar operator-(const Scalar& a, const Scalar& b) {
  detail::require_same(a.params_, b.params_);
  return Scalar(a.params_, sub_mod(a.value_, b.value_, a.params_->p));
}

Scalar operator*(const Scalar& a, const Scalar& b) {
  detail::require_same(a.params_, b.params_);
  return Scalar(a.params_, mul_mod(a.value_, b.value_, a.params_->p));
}

Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inv(); }

Scalar operator-(const Scalar& a) {
  detail::require_same(a.params_, a.params_);
  return Scalar(a.params_, sub_mod(0, a.value_, a.params_->p));
}

// --- GElem / GtElem -----------------------------------------------------------

GroupContext GElem::context() const { return exp_.context(); }
GElem GElem::pow(const Scalar& e) const { return GElem(exp_ * e); }
GElem GElem::inverse() const { return GElem(-exp_); }
GElem operator*(const GElem& a, const GElem& b) { return GElem(a.exp_ + b.exp_); }
GElem operator/(const GElem& a, const GElem& b) { return GElem(a.exp_ - b.exp_); }

GroupContext GtElem::context() const { return exp_.context(); }
GtElem GtElem::pow(const Scalar& e) const { return GtElem(exp_ * e); }
GtElem GtElem::inverse() const { return GtElem(-exp_); }
GtElem operator*(const GtElem& a, const GtElem& b) { return GtElem(a.exp_ + b.exp_); }
GtElem operator/(const GtElem& a, const GtElem& b) { return GtElem(a.exp_ - b.exp_); }

GtElem pair(const GElem& a, const GElem& b) { return GtElem(a.exp_ * b.exp_); }

// --- encoding ---------------------------------------------------------------

const GroupParams& params_of(const Element& e) {
  return std::visit([](const auto& x) -> const GroupParams& {
    if constexpr (std::is_same_v<std::decay_t<decltype(x)>, Scalar>) {
      return x.params();
    } else {
      return x.exponent().params();
    }
  }, e);
}

std::string encode_text(const Element& e) {
  const GroupParams& params = params_of(e);
  const std::uint64_t exp = std::visit([](const auto& x) -> std::uint64_t {
    if constexpr (std::is_same_v<std::decay_t<decltype(x)>, Scalar>) {
      return x.value();
    } else {
      return x.exponent().value();
    }
  }, e);
  std::string out = R"({"backend":")";
  out += to_string(params.backend);
  out += R"(","p":")";
  out += std::to_string(params.p);
  out += R"(","kind":")";
  out += kind_name(e.index());
  out += R"(","exp":")";
  out += std::to_string(exp);
  out += R"("})";
  return out;
}

std::vector<std::uint8_t> encode_bytes(const Element& e) {
  const std::string text = encode_text(e);
  std::vector<std::uint8_t> out(8 + text.size());
  const std::uint64_t n = text.size();
  for (int i = 0; i < 8; ++i) out[i] = static_cast<std::uint8_t>(n >> (8 * i));
  std::copy(text.begin(), text.end(), out.begin() + 8);
  return out;
}

Element decode_text(const GroupContext& ctx, std::string_view text) {
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw Error(Errc::MalformedEncoding, "element encoding is not a JSON object");
  if (j.size() != 4) throw Error(Errc::MalformedEncoding, "element encoding must have exactly four fields");
  if (!j.contains("backend") || !j["backend"].is_string() || !j.contains("kind") || !j["kind"].is_string()) {
    throw Error(Errc::MalformedEncoding, "element encoding lacks backend or kind");
  }
  const auto backend = j["backend"].get<std::string>();
  if (backend != "transparent" && backend != "external") {
    throw Error(Errc::MalformedEncoding, "unknown backend '" + backend + "'");
  }
  const std::uint64_t p = parse_decimal(j, "p");
  const std::uint64_t exp = parse_decimal(j, "exp");
  if (backend != to_string(ctx.params().backend) || p != ctx.order()) {
    throw Error(Errc::ParamMismatch, "element was encoded for p=" + std::to_string(p) + " (" + backend +
                                         "), context has p=" + std::to_string(ctx.order()));
  }
  if (exp >= p) throw Error(Errc::MalformedEncoding, "exponent not reduced mod p");
  const auto kind = j["kind"].get<std::string>();
  const Scalar s = ctx.scalar(exp);
  if (kind == "scalar") return s;
  if (kind == "g0") return ctx.g_exp(s);
  if (kind == "gt") return ctx.gt_exp(s);
  throw Error(Errc::MalformedEncoding, "unknown element kind '" + kind + "'");
}

Element decode_bytes(const GroupContext& ctx, std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 8) throw Error(Errc::MalformedEncoding, "byte encoding shorter than its length prefix");
  std::uint64_t n = 0;
  for (int i = 7; i >= 0; --i) n = (n << 8U) | bytes[i];
  if (n != bytes.size() - 8) throw Error(Errc::MalformedEncoding, "length prefix does not match payload size");
  std::string_view text(reinterpret_cast<const char*>(bytes.data() + 8), bytes.size() - 8);
  return decode_text(ctx, text);
}

}  // namespace dabe
