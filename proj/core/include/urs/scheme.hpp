#ifndef URS_SCHEME_HPP_
#define URS_SCHEME_HPP_

#include <string>
#include <vector>

#include "urs/bytes.hpp"
#include "urs/curve.hpp"
#include "urs/hash_to_curve.hpp"
#include "urs/ring.hpp"
#include "urs/rng.hpp"

namespace urs {

// pp = (lambda, curve, H, H'). H' is always SHA-256 reduced mod n.
struct PublicParams {
  unsigned lambda = 128;
  Curve curve;
  HashVariant h_variant = HashVariant::kFtDeterministic;
  std::string hprime_id = "sha256";
  bool insecure_override = false;
};

// Throws SchemeError for lambda = 0, for a curve the chosen H cannot serve,
// or for kInsecureMultG without allow_insecure.
PublicParams setup(unsigned lambda, const Curve& curve, HashVariant h_variant, bool allow_insecure = false);

struct KeyPair {
  Scalar sk;
  Point pk;
};

// sk is drawn uniformly from the units mod n (all of [1, n) when n is prime),
// so sk * H(m || R) is never the identity.
KeyPair ring_gen(const PublicParams& pp, Rng& rng);
// Throws SchemeError unless sk is a unit mod n.
KeyPair keypair_from_secret(const PublicParams& pp, const Scalar& sk);

struct Tag {
  Point point;

  friend bool operator==(const Tag& a, const Tag& b) { return a.point == b.point; }
};

struct Signature {
  Tag tau;
  std::vector<Scalar> cs;
  std::vector<Scalar> ts;
  Digest ring_hash{};
  Digest msg_hash{};

  friend bool operator==(const Signature& a, const Signature& b) = default;
};

// Per-member commitment pair (a_j, b_j).
struct Commitments {
  Point a;
  Point b;
};

// len(m) as u64 || m || canonical ring bytes: the input to H for the tag base.
Bytes tag_base_input(ByteView msg, const Ring& ring);
// H(m || R) under pp's hash variant.
Point hash_message_ring(const PublicParams& pp, ByteView msg, const Ring& ring);

// SHA-256(domain || data) reduced mod n.
Scalar hash_to_scalar(const Curve& curve, std::uint8_t domain, ByteView data);

// H'(m, R, {a_j, b_j}). The transcript is len(m) || m || R || a_1 || b_1 ||
// ... || a_n || b_n with compressed points. A non-empty payload is appended as
// len(payload) || payload; it is bound into the challenge but not into the
// tag base, so the tag stays fixed while the payload varies.
Scalar challenge(const PublicParams& pp, ByteView msg, const Ring& ring, const std::vector<Commitments>& commitments,
                 ByteView payload = {});

// Throws SchemeError when the signer's public key is not in the ring.
Signature ring_sign(const PublicParams& pp, const Scalar& sk, const Ring& ring, ByteView msg, Rng& rng,
                    ByteView payload = {});

// Rebuilds every commitment from (c_j, t_j, tau) and accepts iff the
// challenges sum to H'. Also rejects on size or digest mismatch and on a tag
// that is infinity or off the curve.
bool ring_verify(const PublicParams& pp, const Ring& ring, ByteView msg, const Signature& sig,
                 ByteView payload = {});

Tag tag_of(const Signature& sig);

enum class LinkResult { kLinked, kUnlinked, kIncomparable };
std::string to_string(LinkResult r);

// Only meaningful for signatures the caller has already verified.
LinkResult link(const Signature& s1, const Signature& s2);

}  // namespace urs

#endif  // URS_SCHEME_HPP_
