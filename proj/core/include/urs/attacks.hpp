#ifndef URS_ATTACKS_HPP_
#define URS_ATTACKS_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "urs/scheme.hpp"

namespace urs {

// Tag recovery against the generator-multiplication hash. With H(m || R) =
// h * g for a publicly computable h, the tag is x_i * h * g = h * y_i, so the
// attacker compares h * y_j against tau for every member. Returns the matching
// index, or nullopt when nothing matches (the expected outcome for a secure
// hash-to-curve).
std::optional<std::size_t> attack_naive_hash(const PublicParams& pp, const Ring& ring, const Signature& sig,
                                             ByteView msg);

// Colluding members reveal their secret keys. Each revealed key's would-be tag
// sk * H(m || R) is compared with tau and a mismatch removes that member from
// the anonymity set. Returns the surviving indices in ring order. Throws SchemeError when a revealed key is not a ring member.
std::vector<std::size_t> attack_tag_reveal(const PublicParams& pp, const Ring& ring, const Signature& sig,
                                           ByteView msg, std::span<const Scalar> revealed_sks);

}  // namespace urs

#endif  // URS_ATTACKS_HPP_
