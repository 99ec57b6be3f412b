#ifndef URS_CURVE_HPP_
#define URS_CURVE_HPP_

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "urs/bytes.hpp"
#include "urs/field.hpp"

namespace urs {

// Raw short-Weierstrass parameters y^2 = x^3 + a x + b over F_p with a base
// point of order n.
struct CurveParams {
  std::string curve_id;
  mpz_class p;
  mpz_class a;
  mpz_class b;
  mpz_class gx;
  mpz_class gy;
  mpz_class n;
};

// Affine point or the point at infinity.
class Point {
 public:
  Point() = default;  // infinity
  Point(FieldElement x, FieldElement y) : xy_(Affine{std::move(x), std::move(y)}) {}

  static Point infinity() { return Point(); }

  bool is_infinity() const { return !xy_.has_value(); }
  const FieldElement& x() const;
  const FieldElement& y() const;

  friend bool operator==(const Point& a, const Point& b);

 private:
  struct Affine {
    FieldElement x;
    FieldElement y;
  };
  std::optional<Affine> xy_;
};

// A validated curve. Copies share the underlying moduli, so residues created
// through one copy interoperate with any other.
//
// NOT CONSTANT TIME. Scalar multiplication branches on secret bits and GMP
// arithmetic is variable time. No side-channel resistance is claimed.
class Curve {
 public:
  // Validates the parameter invariants: p prime, nonsingular, g on the curve,
  // n*g = infinity. Throws CurveError.
  explicit Curve(CurveParams params);

  static const Curve& secp256k1();
  // y^2 = x^3 + 7 over F_31; 21 points, g = (1, 15) of order 21.
  static const Curve& test31();
  // y^2 = x^3 + 7 over F_11; 12 points, g = (4, 4) of order 12.
  static const Curve& test11();
  // Looks up one of the built-in curves by id ("secp256k1", "test-31",
  // "test-11").
  static const Curve& by_id(const std::string& id);

  const std::string& id() const { return params_.curve_id; }
  const CurveParams& params() const { return params_; }
  const ModulusPtr& field() const { return p_; }
  const ModulusPtr& order() const { return n_; }

  FieldElement fe(const mpz_class& v) const { return FieldElement(p_, v); }
  FieldElement fe(long v) const { return FieldElement(p_, v); }
  Scalar scalar(const mpz_class& v) const { return Scalar(n_, v); }
  Scalar scalar(long v) const { return Scalar(n_, v); }

  const FieldElement& a() const { return a_; }
  const FieldElement& b() const { return b_; }
  const Point& generator() const { return g_; }

  // x^3 + a x + b
  FieldElement rhs(const FieldElement& x) const;
  bool on_curve(const Point& p) const;
  // Builds a point, throwing CurveError if (x, y) is off the curve.
  Point point(const FieldElement& x, const FieldElement& y) const;
  Point point(long x, long y) const { return point(fe(x), fe(y)); }

  Point negate(const Point& p) const;
  // Affine chord-and-tangent group law.
  Point add(const Point& p, const Point& q) const;
  Point dbl(const Point& p) const;
  // k*P by double-and-add. Internally uses Jacobian coordinates; the affine
  // add/dbl above remain the reference group law.
  Point mul(const Scalar& k, const Point& p) const;
  // k1*P1 + k2*P2 with a single shared doubling chain.
  Point mul2(const Scalar& k1, const Point& p1, const Scalar& k2, const Point& p2) const;
  Point mul_generator(const Scalar& k) const { return mul(k, g_); }

  // Width of one coordinate or one scalar in fixed-width encodings.
  std::size_t field_bytes() const { return p_->byte_width(); }
  std::size_t scalar_bytes() const { return n_->byte_width(); }
  // Width of a compressed point: 1 + field_bytes().
  std::size_t point_bytes() const { return 1 + field_bytes(); }

  // Compressed SEC-style encoding: 0x02/0x03 by y parity followed by the
  // big-endian x coordinate; infinity is the single byte 0x00.
  Bytes encode(const Point& p) const;
  Point decode(ByteView bytes) const;

  // Every affine point plus infinity. Only sensible for tiny fields.
  std::vector<Point> enumerate_points() const;

  friend bool operator==(const Curve& a, const Curve& b);

 private:
  void require_on_curve(const Point& p) const;
  Point mul_integer(const mpz_class& k, const Point& p) const;

  CurveParams params_;
  ModulusPtr p_;
  ModulusPtr n_;
  FieldElement a_;
  FieldElement b_;
  Point g_;
};

}  // namespace urs

#endif  // URS_CURVE_HPP_
