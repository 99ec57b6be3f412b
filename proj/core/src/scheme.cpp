#include "urs/scheme.hpp"

namespace urs {

PublicParams setup(unsigned lambda, const Curve& curve, HashVariant h_variant, bool allow_insecure) {
  if (lambda == 0) throw SchemeError("security parameter must be positive");
  if (h_variant == HashVariant::kInsecureMultG && !allow_insecure) {
    throw SchemeError("the generator-multiplication hash leaks the signer; pass the insecure override to use it");
  }
  const mpz_class& p = curve.field()->value();
  if (mpz_fdiv_ui(p.get_mpz_t(), 4) != 3) throw SchemeError("curve field must satisfy p = 3 mod 4");
  if (h_variant == HashVariant::kFtDeterministic) {
    try {
      FtConstants::for_curve(curve);
    } catch (const Error& e) {
      throw SchemeError(std::string("curve cannot host the FT map: ") + e.what());
    }
  }
  return PublicParams{lambda, curve, h_variant, "sha256", allow_insecure};
}

namespace {

bool is_unit(const Scalar& s) {
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), s.value().get_mpz_t(), s.modulus().value().get_mpz_t());
  return !s.is_zero() && g == 1;
}

void require_usable(const PublicParams& pp) {
  if (pp.h_variant == HashVariant::kInsecureMultG && !pp.insecure_override) {
    throw SchemeError("insecure hash variant used without the override flag");
  }
}

}  // namespace

KeyPair ring_gen(const PublicParams& pp, Rng& rng) {
  for (;;) {
    Scalar sk = random_nonzero_scalar(pp.curve.order(), rng);
    if (is_unit(sk)) return KeyPair{sk, pp.curve.mul_generator(sk)};
  }
}

KeyPair keypair_from_secret(const PublicParams& pp, const Scalar& sk) {
  if (sk.modulus().value() != pp.curve.order()->value()) throw SchemeError("secret key is not reduced mod n");
  if (!is_unit(sk)) throw SchemeError("secret key must be a unit mod n");
  return KeyPair{sk, pp.curve.mul_generator(sk)};
}

Bytes tag_base_input(ByteView msg, const Ring& ring) {
  Bytes out;
  out.reserve(8 + msg.size() + ring.canonical_bytes().size());
  append_u64_be(out, msg.size());
  append(out, msg);
  append(out, ring.canonical_bytes());
  return out;
}

Point hash_message_ring(const PublicParams& pp, ByteView msg, const Ring& ring) {
  require_usable(pp);
  return hash_to_curve(pp.curve, pp.h_variant, tag_base_input(msg, ring));
}

Scalar hash_to_scalar(const Curve& curve, std::uint8_t domain, ByteView data) {
  Digest d = Sha256().update(domain).update(data).finish();
  return Scalar::reduce_bytes(curve.order(), d);
}

Scalar challenge(const PublicParams& pp, ByteView msg, const Ring& ring, const std::vector<Commitments>& commitments,
                 ByteView payload) {
  Bytes transcript = tag_base_input(msg, ring);
  for (const Commitments& c : commitments) {
    append(transcript, pp.curve.encode(c.a));
    append(transcript, pp.curve.encode(c.b));
  }
  if (!payload.empty()) {
    append_u64_be(transcript, payload.size());
    append(transcript, payload);
  }
  return hash_to_scalar(pp.curve, kDomainHashToScalar, transcript);
}

Signature ring_sign(const PublicParams& pp, const Scalar& sk, const Ring& ring, ByteView msg, Rng& rng,
                    ByteView payload) {
  require_usable(pp);
  const Curve& curve = pp.curve;
  const Point pk = curve.mul_generator(sk);
  const auto signer = ring.index_of(pk);
  if (!signer) throw SchemeError("signer's public key is not a member of the ring");

  const std::size_t n = ring.size();
  const Point h = hash_message_ring(pp, msg, ring);
  const Point tau = curve.mul(sk, h);

  std::vector<Scalar> cs(n, curve.scalar(0));
  std::vector<Scalar> ts(n, curve.scalar(0));
  std::vector<Commitments> commitments(n);
  Scalar others = curve.scalar(0);
  Scalar r = curve.scalar(0);
  for (std::size_t j = 0; j < n; ++j) {
    if (j == *signer) {
      r = random_scalar(curve.order(), rng);
      commitments[j] = Commitments{curve.mul_generator(r), curve.mul(r, h)};
      continue;
    }
    ts[j] = random_scalar(curve.order(), rng);
    cs[j] = random_scalar(curve.order(), rng);
    commitments[j] = Commitments{curve.mul2(ts[j], curve.generator(), cs[j], ring[j]), curve.mul2(ts[j], h, cs[j], tau)};
    others += cs[j];
  }

  const std::size_t i = *signer;
  cs[i] = challenge(pp, msg, ring, commitments, payload) - others;
  ts[i] = r - cs[i] * sk;

  return Signature{Tag{tau}, std::move(cs), std::move(ts), ring.digest(), Sha256::hash(msg)};
}

bool ring_verify(const PublicParams& pp, const Ring& ring, ByteView msg, const Signature& sig, ByteView payload) {
  require_usable(pp);
  const Curve& curve = pp.curve;
  const std::size_t n = ring.size();
  if (sig.cs.size() != n || sig.ts.size() != n) return false;
  if (sig.ring_hash != ring.digest() || sig.msg_hash != Sha256::hash(msg)) return false;
  const Point& tau = sig.tau.point;
  if (tau.is_infinity() || !curve.on_curve(tau)) return false;
  for (std::size_t j = 0; j < n; ++j) {
    if (sig.cs[j].modulus().value() != curve.order()->value() || sig.ts[j].modulus().value() != curve.order()->value()) {
      return false;
    }
  }

  const Point h = hash_message_ring(pp, msg, ring);
  std::vector<Commitments> commitments(n);
  Scalar sum = curve.scalar(0);
  for (std::size_t j = 0; j < n; ++j) {
    commitments[j] = Commitments{curve.mul2(sig.ts[j], curve.generator(), sig.cs[j], ring[j]),
                                 curve.mul2(sig.ts[j], h, sig.cs[j], tau)};
    sum += sig.cs[j];
  }
  return sum == challenge(pp, msg, ring, commitments, payload);
}

Tag tag_of(const Signature& sig) { return sig.tau; }

std::string to_string(LinkResult r) {
  switch (r) {
    case LinkResult::kLinked:
      return "LINKED";
    case LinkResult::kUnlinked:
      return "UNLINKED";
    case LinkResult::kIncomparable:
      return "INCOMPARABLE";
  }
  return "UNKNOWN";
}

LinkResult link(const Signature& s1, const Signature& s2) {
  if (s1.msg_hash != s2.msg_hash || s1.ring_hash != s2.ring_hash) return LinkResult::kIncomparable;
  return s1.tau == s2.tau ? LinkResult::kLinked : LinkResult::kUnlinked;
}

}  // namespace urs
