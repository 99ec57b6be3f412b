#include "urs/signature_codec.hpp"

#include <algorithm>

namespace urs {

std::size_t signature_element_width(const Curve& curve) {
  return std::max(curve.field_bytes(), curve.scalar_bytes());
}

std::size_t encoded_signature_size(const Curve& curve, std::size_t ring_size) {
  return 2 * signature_element_width(curve) * (ring_size + 1);
}

Bytes encode_signature(const Curve& curve, const Signature& sig) {
  if (sig.cs.size() != sig.ts.size()) throw SchemeError("signature has mismatched challenge/response counts");
  if (sig.tau.point.is_infinity()) throw SchemeError("cannot encode a tag at infinity");
  const std::size_t w = signature_element_width(curve);
  Bytes out;
  out.reserve(encoded_signature_size(curve, sig.cs.size()));
  append(out, mpz_to_bytes(sig.tau.point.x().value(), w));
  append(out, mpz_to_bytes(sig.tau.point.y().value(), w));
  for (std::size_t j = 0; j < sig.cs.size(); ++j) {
    append(out, mpz_to_bytes(sig.cs[j].value(), w));
    append(out, mpz_to_bytes(sig.ts[j].value(), w));
  }
  return out;
}

Signature decode_signature(const Curve& curve, ByteView bytes, const Ring& ring, ByteView msg) {
  const std::size_t w = signature_element_width(curve);
  if (bytes.size() % (2 * w) != 0 || bytes.size() < 4 * w) throw DecodeError("signature has an invalid length");
  auto element = [&](std::size_t index) { return mpz_from_bytes(bytes.subspan(index * w, w)); };
  auto field = [&](std::size_t index) {
    mpz_class v = element(index);
    if (v >= curve.field()->value()) throw DecodeError("tag coordinate is not reduced");
    return curve.fe(v);
  };
  auto scalar = [&](std::size_t index) {
    mpz_class v = element(index);
    if (v >= curve.order()->value()) throw DecodeError("signature scalar is not reduced");
    return curve.scalar(v);
  };

  Point tau(field(0), field(1));
  if (!curve.on_curve(tau)) throw DecodeError("tag is not on the curve");
  const std::size_t n = bytes.size() / (2 * w) - 1;
  Signature sig{Tag{tau}, {}, {}, ring.digest(), Sha256::hash(msg)};
  sig.cs.reserve(n);
  sig.ts.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    sig.cs.push_back(scalar(2 + 2 * j));
    sig.ts.push_back(scalar(3 + 2 * j));
  }
  return sig;
}

}  // namespace urs
