#ifndef URS_RNG_HPP_
#define URS_RNG_HPP_

#include <cstdint>
#include <span>

#include "urs/bytes.hpp"
#include "urs/field.hpp"

namespace urs {

// Source of uniform bytes injected into key generation and signing.
class Rng {
 public:
  virtual ~Rng() = default;
  virtual void fill(std::span<std::uint8_t> out) = 0;
};

// Operating-system entropy (OpenSSL RAND_bytes).
class SystemRng final : public Rng {
 public:
  void fill(std::span<std::uint8_t> out) override;
};

// Deterministic generator for reproducible runs: SHA-256 in counter mode over
// the seed. Not for production keys.
class SeededRng final : public Rng {
 public:
  explicit SeededRng(std::uint64_t seed);
  explicit SeededRng(ByteView seed);
  void fill(std::span<std::uint8_t> out) override;

 private:
  void refill();

  Digest key_;
  std::uint64_t counter_ = 0;
  Digest block_{};
  std::size_t used_ = sizeof(Digest);
};

// Uniform in [0, n) by rejection sampling.
Scalar random_scalar(const ModulusPtr& order, Rng& rng);
// Uniform in [1, n).
Scalar random_nonzero_scalar(const ModulusPtr& order, Rng& rng);

}  // namespace urs

#endif  // URS_RNG_HPP_
