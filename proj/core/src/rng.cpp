#include "urs/rng.hpp"

#include <openssl/rand.h>

#include <algorithm>

namespace urs {

void SystemRng::fill(std::span<std::uint8_t> out) {
  if (out.empty()) return;
  if (RAND_bytes(out.data(), static_cast<int>(out.size())) != 1) throw Error("system entropy unavailable");
}

SeededRng::SeededRng(std::uint64_t seed) {
  Bytes material = to_bytes("urs-seeded-rng");
  append_u64_be(material, seed);
  key_ = Sha256::hash(material);
}

SeededRng::SeededRng(ByteView seed) {
  Bytes material = to_bytes("urs-seeded-rng");
  append(material, seed);
  key_ = Sha256::hash(material);
}

void SeededRng::refill() {
  Bytes block(key_.begin(), key_.end());
  append_u64_be(block, counter_++);
  block_ = Sha256::hash(block);
  used_ = 0;
}

void SeededRng::fill(std::span<std::uint8_t> out) {
  std::size_t pos = 0;
  while (pos < out.size()) {
    if (used_ == block_.size()) refill();
    std::size_t take = std::min(out.size() - pos, block_.size() - used_);
    std::copy_n(block_.begin() + static_cast<std::ptrdiff_t>(used_), take, out.begin() + static_cast<std::ptrdiff_t>(pos));
    used_ += take;
    pos += take;
  }
}

Scalar random_scalar(const ModulusPtr& order, Rng& rng) {
  const std::size_t bits = order->bits();
  Bytes buf(order->byte_width());
  const unsigned excess = static_cast<unsigned>(buf.size() * 8 - bits);
  const std::uint8_t top_mask = static_cast<std::uint8_t>(0xff >> excess);
  for (;;) {
    rng.fill(buf);
    buf[0] &= top_mask;
    mpz_class v = mpz_from_bytes(buf);
    if (v < order->value()) return Scalar(order, std::move(v));
  }
}

Scalar random_nonzero_scalar(const ModulusPtr& order, Rng& rng) {
  for (;;) {
    Scalar s = random_scalar(order, rng);
    if (!s.is_zero()) return s;
  }
}

}  // namespace urs
