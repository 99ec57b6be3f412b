#ifndef URS_HASH_TO_CURVE_HPP_
#define URS_HASH_TO_CURVE_HPP_

#include <cstdint>
#include <string>

#include "urs/bytes.hpp"
#include "urs/curve.hpp"

namespace urs {

enum class HashVariant {
  kTryIncrement,
  kFtDeterministic,
  // H(m) = SHA-256(m) * g. Its discrete logarithm is public; kept only so the
  // tag-recovery attack can be demonstrated.
  kInsecureMultG,
};

std::string to_string(HashVariant v);
// Accepts "try-increment", "ft", "insecure-mult-g".
HashVariant parse_hash_variant(const std::string& name);

// One-byte domain separators prefixed to every SHA-256 call.
inline constexpr std::uint8_t kDomainHashToCurve = 0x01;
inline constexpr std::uint8_t kDomainHashToScalar = 0x02;
inline constexpr std::uint8_t kDomainDleq = 0x03;

// SHA-256(0x01 || counter || msg) read big-endian, reduced mod p.
FieldElement hash_to_field(const Curve& curve, ByteView msg, std::uint8_t counter);

inline constexpr int kTryIncrementAttempts = 256;

// Try-and-increment: x = u, u+1, ... until x^3 + ax + b is a square, then
// (x, fe_sqrt(x^3 + ax + b)). Throws ArithmeticError if all attempts fail.
Point try_and_increment_from(const Curve& curve, const FieldElement& u, int attempts = kTryIncrementAttempts);
Point try_and_increment(const Curve& curve, ByteView msg);

// sqrt(-3) and (-1 + sqrt(-3)) / 2 for a curve with p = 7 mod 12, a = 0.
struct FtConstants {
  FieldElement sqrt_m3;
  FieldElement c1;

  static FtConstants for_curve(const Curve& curve);
};

// Image of t = 0 and of the t with 1 + b + t^2 = 0: the point with the
// smallest x >= 1 whose x^3 + b is a square, with y = fe_sqrt(x^3 + b).
Point ft_map_fallback(const Curve& curve);

// Deterministic Fouque-Tibouchi (Shallue-van de Woestijne) encoding. Total:
// every t maps to an affine point on the curve.
Point ft_map(const Curve& curve, const FieldElement& t);
Point ft_map(const Curve& curve, const FtConstants& k, const FieldElement& t);

Point hash_to_curve_ft(const Curve& curve, ByteView msg);

// Scalar h = hash_to_field(msg, 0) mod n; the point h * g. Anyone can compute h.
Scalar insecure_hash_scalar(const Curve& curve, ByteView msg);
Point insecure_hash_mult_g(const Curve& curve, ByteView msg);

// Dispatches on the variant.
Point hash_to_curve(const Curve& curve, HashVariant variant, ByteView msg);

}  // namespace urs

#endif  // URS_HASH_TO_CURVE_HPP_
