#include "urs/attacks.hpp"

namespace urs {

std::optional<std::size_t> attack_naive_hash(const PublicParams& pp, const Ring& ring, const Signature& sig,
                                             ByteView msg) {
  const Scalar h = insecure_hash_scalar(pp.curve, tag_base_input(msg, ring));
  for (std::size_t j = 0; j < ring.size(); ++j) {
    if (pp.curve.mul(h, ring[j]) == sig.tau.point) return j;
  }
  return std::nullopt;
}

std::vector<std::size_t> attack_tag_reveal(const PublicParams& pp, const Ring& ring, const Signature& sig,
                                           ByteView msg, std::span<const Scalar> revealed_sks) {
  const Point h = hash_message_ring(pp, msg, ring);
  std::vector<bool> alive(ring.size(), true);
  for (const Scalar& sk : revealed_sks) {
    auto index = ring.index_of(pp.curve.mul_generator(sk));
    if (!index) throw SchemeError("revealed key does not belong to any ring member");
    if (pp.curve.mul(sk, h) != sig.tau.point) alive[*index] = false;
  }
  std::vector<std::size_t> survivors;
  for (std::size_t j = 0; j < ring.size(); ++j) {
    if (alive[j]) survivors.push_back(j);
  }
  return survivors;
}

}  // namespace urs
