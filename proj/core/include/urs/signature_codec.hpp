#ifndef URS_SIGNATURE_CODEC_HPP_
#define URS_SIGNATURE_CODEC_HPP_

#include <cstddef>

#include "urs/scheme.hpp"

namespace urs {

// Compact wire form: tau_x || tau_y || c_1 || t_1 || ... || c_n || t_n, every
// element big-endian in a fixed width w = max(field bytes, scalar bytes).
// The ring and message travel out of band. On secp256k1 w = 32 and the
// encoding is exactly 64(n + 1) bytes.
std::size_t signature_element_width(const Curve& curve);
std::size_t encoded_signature_size(const Curve& curve, std::size_t ring_size);

Bytes encode_signature(const Curve& curve, const Signature& sig);

// Decodes the wire form and binds the digests of the supplied context. Throws
// DecodeError when the length is not a multiple of 2w, is shorter than 4w, or
// when tau is not a curve point. The ring size is not checked here.
Signature decode_signature(const Curve& curve, ByteView bytes, const Ring& ring, ByteView msg);

}  // namespace urs

#endif  // URS_SIGNATURE_CODEC_HPP_
