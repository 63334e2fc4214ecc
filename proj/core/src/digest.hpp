#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string_view>

namespace dabe::detail {

using Digest = std::array<std::uint8_t, 32>;

/// Incremental SHA-256 backed by OpenSSL EVP.
class Sha256 {
 public:
  Sha256();
  ~Sha256();
  Sha256(const Sha256&) = delete;
  Sha256& operator=(const Sha256&) = delete;

  Sha256& update(std::span<const std::uint8_t> data);
  Sha256& update(std::string_view data);
  /// Length-prefixed update, so concatenated fields cannot be re-split.
  Sha256& update_framed(std::string_view data);
  Sha256& update_u64(std::uint64_t v);
  Digest finish();

 private:
  void* ctx_;
};

}  // namespace dabe::detail
