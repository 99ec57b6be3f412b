#include "urs/hash_to_curve.hpp"

#include <mutex>
#include <map>

namespace urs {

std::string to_string(HashVariant v) {
  switch (v) {
    case HashVariant::kTryIncrement:
      return "try-increment";
    case HashVariant::kFtDeterministic:
      return "ft";
    case HashVariant::kInsecureMultG:
      return "insecure-mult-g";
  }
  return "unknown";
}

HashVariant parse_hash_variant(const std::string& name) {
  if (name == "try-increment") return HashVariant::kTryIncrement;
  if (name == "ft") return HashVariant::kFtDeterministic;
  if (name == "insecure-mult-g") return HashVariant::kInsecureMultG;
  throw SchemeError("unknown hash variant '" + name + "'");
}

FieldElement hash_to_field(const Curve& curve, ByteView msg, std::uint8_t counter) {
  Digest d = Sha256().update(kDomainHashToCurve).update(counter).update(msg).finish();
  return FieldElement::reduce_bytes(curve.field(), d);
}

Point try_and_increment_from(const Curve& curve, const FieldElement& u, int attempts) {
  FieldElement x = u;
  const FieldElement one = curve.fe(1);
  for (int i = 0; i < attempts; ++i, x += one) {
    FieldElement y2 = curve.rhs(x);
    if (fe_chi(y2) >= 0) return Point(x, fe_sqrt(y2));
  }
  throw ArithmeticError("try-and-increment exhausted its attempts");
}

Point try_and_increment(const Curve& curve, ByteView msg) {
  return try_and_increment_from(curve, hash_to_field(curve, msg, 0));
}

FtConstants FtConstants::for_curve(const Curve& curve) {
  const mpz_class& p = curve.field()->value();
  if (mpz_fdiv_ui(p.get_mpz_t(), 12) != 7) throw CurveError("FT map requires p = 7 mod 12");
  if (!curve.a().is_zero()) throw CurveError("FT map requires a = 0");
  FieldElement sqrt_m3 = fe_sqrt(curve.fe(-3));
  FieldElement c1 = (sqrt_m3 - curve.fe(1)) / curve.fe(2);
  return FtConstants{sqrt_m3, c1};
}

Point ft_map_fallback(const Curve& curve) {
  return try_and_increment_from(curve, curve.fe(1), kTryIncrementAttempts);
}

Point ft_map(const Curve& curve, const FtConstants& k, const FieldElement& t) {
  const FieldElement one = curve.fe(1);
  FieldElement denom = one + curve.b() + t * t;
  if (t.is_zero() || denom.is_zero()) return ft_map_fallback(curve);

  FieldElement w = k.sqrt_m3 * t / denom;
  FieldElement x1 = k.c1 - t * w;
  FieldElement x2 = -one - x1;
  FieldElement x3 = one + (w * w).inverse();

  FieldElement g1 = curve.rhs(x1);
  FieldElement g2 = curve.rhs(x2);
  int alpha = fe_chi(g1);
  int beta = fe_chi(g2);
  // Index ((alpha - 1) * beta mod 3) + 1 for alpha, beta in {-1, 1}; a zero
  // character counts as a square so x_i^3 + b always has a root.
  const FieldElement* x = &x3;
  const FieldElement* gx = nullptr;
  if (alpha >= 0) {
    x = &x1;
    gx = &g1;
  } else if (beta >= 0) {
    x = &x2;
    gx = &g2;
  }
  FieldElement g3 = gx == nullptr ? curve.rhs(x3) : *gx;
  FieldElement y = fe_sqrt(g3);
  if (fe_chi(t) < 0) y = -y;
  return Point(*x, std::move(y));
}

Point ft_map(const Curve& curve, const FieldElement& t) {
  return ft_map(curve, FtConstants::for_curve(curve), t);
}

namespace {

// FtConstants costs a square root; cache per field modulus.
const FtConstants& cached_constants(const Curve& curve) {
  static std::mutex mu;
  static std::map<std::string, FtConstants> cache;
  std::string key = curve.field()->value().get_str(16) + ":" + curve.b().value().get_str(16);
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, FtConstants::for_curve(curve)).first;
  return it->second;
}

}  // namespace

Point hash_to_curve_ft(const Curve& curve, ByteView msg) {
  return ft_map(curve, cached_constants(curve), hash_to_field(curve, msg, 0));
}

Scalar insecure_hash_scalar(const Curve& curve, ByteView msg) {
  return curve.scalar(hash_to_field(curve, msg, 0).value());
}

Point insecure_hash_mult_g(const Curve& curve, ByteView msg) {
  return curve.mul_generator(insecure_hash_scalar(curve, msg));
}

Point hash_to_curve(const Curve& curve, HashVariant variant, ByteView msg) {
  switch (variant) {
    case HashVariant::kTryIncrement:
      return try_and_increment(curve, msg);
    case HashVariant::kFtDeterministic:
      return hash_to_curve_ft(curve, msg);
    case HashVariant::kInsecureMultG:
      return insecure_hash_mult_g(curve, msg);
  }
  throw SchemeError("unknown hash variant");
}

}  // namespace urs
