#ifndef URS_BYTES_HPP_
#define URS_BYTES_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace urs {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;
using Digest = std::array<std::uint8_t, 32>;

/// Lowercase hex, no prefix.
std::string to_hex(ByteView bytes);

/// Accepts upper or lower case. Throws DecodeError on odd length or a
/// non-hex character.
Bytes from_hex(std::string_view hex);

Bytes to_bytes(std::string_view s);

void append(Bytes& out, ByteView tail);
void append_u64_be(Bytes& out, std::uint64_t v);

/// Incremental SHA-256 (backed by OpenSSL's EVP interface).
class Sha256 {
 public:
  Sha256();
  ~Sha256();
  Sha256(const Sha256&) = delete;
  Sha256& operator=(const Sha256&) = delete;

  Sha256& update(ByteView data);
  Sha256& update(std::uint8_t byte);
  Digest finish();

  static Digest hash(ByteView data);

 private:
  void* ctx_;
};

}  // namespace urs

#endif  // URS_BYTES_HPP_
