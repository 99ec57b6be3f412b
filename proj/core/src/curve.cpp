#include "urs/curve.hpp"

#include <algorithm>

namespace urs {

const FieldElement& Point::x() const {
  if (!xy_) throw CurveError("point at infinity has no coordinates");
  return xy_->x;
}

const FieldElement& Point::y() const {
  if (!xy_) throw CurveError("point at infinity has no coordinates");
  return xy_->y;
}

bool operator==(const Point& a, const Point& b) {
  if (a.is_infinity() || b.is_infinity()) return a.is_infinity() && b.is_infinity();
  return a.xy_->x == b.xy_->x && a.xy_->y == b.xy_->y;
}

bool operator==(const Curve& a, const Curve& b) {
  const CurveParams& l = a.params_;
  const CurveParams& r = b.params_;
  return l.p == r.p && l.a == r.a && l.b == r.b && l.gx == r.gx && l.gy == r.gy && l.n == r.n;
}

namespace {

// Jacobian (X : Y : Z) with x = X/Z^2, y = Y/Z^3; Z = 0 is infinity. Only used
// inside the scalar multiplication ladders.
struct Jacobian {
  mpz_class x;
  mpz_class y;
  mpz_class z;
};

class JacobianOps {
 public:
  JacobianOps(const mpz_class& p, const mpz_class& a) : p_(p), a_(a), a_is_zero_(a == 0) {}

  void reduce(mpz_class& v) const { mpz_mod(v.get_mpz_t(), v.get_mpz_t(), p_.get_mpz_t()); }

  void dbl(Jacobian& j) const {
    if (j.z == 0) return;
    if (j.y == 0) {
      j.z = 0;
      return;
    }
    yy_ = j.y * j.y;
    reduce(yy_);
    s_ = 4 * j.x * yy_;
    reduce(s_);
    m_ = 3 * j.x * j.x;
    if (!a_is_zero_) {
      t_ = j.z * j.z;
      reduce(t_);
      t_ = t_ * t_;
      reduce(t_);
      m_ += a_ * t_;
    }
    reduce(m_);
    j.z = 2 * j.y * j.z;
    reduce(j.z);
    t_ = m_ * m_ - 2 * s_;
    reduce(t_);
    yy_ = yy_ * yy_;
    j.y = m_ * (s_ - t_) - 8 * yy_;
    reduce(j.y);
    j.x = t_;
  }

  // j += (ax, ay), affine second operand.
  void add_affine(Jacobian& j, const mpz_class& ax, const mpz_class& ay) const {
    if (j.z == 0) {
      j.x = ax;
      j.y = ay;
      j.z = 1;
      return;
    }
    zz_ = j.z * j.z;
    reduce(zz_);
    u2_ = ax * zz_;
    reduce(u2_);
    s2_ = ay * j.z;
    reduce(s2_);
    s2_ *= zz_;
    reduce(s2_);
    h_ = u2_ - j.x;
    reduce(h_);
    r_ = s2_ - j.y;
    reduce(r_);
    if (h_ == 0) {
      if (r_ == 0) {
        dbl(j);
      } else {
        j.z = 0;
      }
      return;
    }
    hh_ = h_ * h_;
    reduce(hh_);
    hhh_ = h_ * hh_;
    reduce(hhh_);
    v_ = j.x * hh_;
    reduce(v_);
    t_ = r_ * r_ - hhh_ - 2 * v_;
    reduce(t_);
    j.y = r_ * (v_ - t_) - j.y * hhh_;
    reduce(j.y);
    j.x = t_;
    j.z *= h_;
    reduce(j.z);
  }

 private:
  const mpz_class& p_;
  const mpz_class& a_;
  bool a_is_zero_;
  mutable mpz_class yy_, s_, m_, t_, zz_, u2_, s2_, h_, r_, hh_, hhh_, v_;
};

}  // namespace

namespace {

const CurveParams& checked(const CurveParams& params) {
  if (params.p < 3) throw CurveError("field modulus must be an odd prime");
  if (params.n < 2) throw CurveError("generator order must exceed 1");
  return params;
}

}  // namespace

Curve::Curve(CurveParams params)
    : params_(checked(params)),
      p_(std::make_shared<Modulus>(params_.p)),
      n_(std::make_shared<Modulus>(params_.n)),
      a_(p_, params_.a),
      b_(p_, params_.b) {
  if (mpz_probab_prime_p(params_.p.get_mpz_t(), 40) == 0) throw CurveError("field modulus is not prime");
  FieldElement disc = fe(4) * a_ * a_ * a_ + fe(27) * b_ * b_;
  if (disc.is_zero()) throw CurveError("curve is singular");
  g_ = Point(fe(params_.gx), fe(params_.gy));
  if (!on_curve(g_)) throw CurveError("generator is not on the curve");
  if (!mul_integer(params_.n, g_).is_infinity()) throw CurveError("n * g is not the point at infinity");
}

const Curve& Curve::secp256k1() {
  static const Curve curve(CurveParams{
      "secp256k1",
      mpz_class("FFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFEFFFFFC2F", 16),
      0,
      7,
      mpz_class("79BE667EF9DCBBAC55A06295CE870B07029BFCDB2DCE28D959F2815B16F81798", 16),
      mpz_class("483ADA7726A3C4655DA4FBFC0E1108A8FD17B448A68554199C47D08FFB10D4B8", 16),
      mpz_class("FFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFEBAAEDCE6AF48A03BBFD25E8CD0364141", 16),
  });
  return curve;
}

const Curve& Curve::test31() {
  static const Curve curve(CurveParams{"test-31", 31, 0, 7, 1, 15, 21});
  return curve;
}

const Curve& Curve::test11() {
  static const Curve curve(CurveParams{"test-11", 11, 0, 7, 4, 4, 12});
  return curve;
}

const Curve& Curve::by_id(const std::string& id) {
  if (id == "secp256k1") return secp256k1();
  if (id == "test-31") return test31();
  if (id == "test-11") return test11();
  throw CurveError("unknown curve '" + id + "'");
}

FieldElement Curve::rhs(const FieldElement& x) const { return x * x * x + a_ * x + b_; }

bool Curve::on_curve(const Point& p) const {
  if (p.is_infinity()) return true;
  if (p.x().modulus().value() != p_->value()) return false;
  return p.y() * p.y() == rhs(p.x());
}

Point Curve::point(const FieldElement& x, const FieldElement& y) const {
  Point p(x, y);
  require_on_curve(p);
  return p;
}

void Curve::require_on_curve(const Point& p) const {
  if (!on_curve(p)) throw CurveError("point is not on curve " + params_.curve_id);
}

Point Curve::negate(const Point& p) const {
  if (p.is_infinity()) return p;
  return Point(p.x(), -p.y());
}

Point Curve::add(const Point& p, const Point& q) const {
  require_on_curve(p);
  require_on_curve(q);
  if (p.is_infinity()) return q;
  if (q.is_infinity()) return p;
  if (p.x() == q.x()) {
    // Either q = -p (vertical chord) or q = p.
    if (p.y() == q.y()) return dbl(p);
    return Point::infinity();
  }
  FieldElement lambda = (q.y() - p.y()) / (q.x() - p.x());
  FieldElement x3 = lambda * lambda - p.x() - q.x();
  FieldElement y3 = lambda * (p.x() - x3) - p.y();
  return Point(std::move(x3), std::move(y3));
}

Point Curve::dbl(const Point& p) const {
  require_on_curve(p);
  if (p.is_infinity() || p.y().is_zero()) return Point::infinity();
  FieldElement lambda = (fe(3) * p.x() * p.x() + a_) / (fe(2) * p.y());
  FieldElement x3 = lambda * lambda - fe(2) * p.x();
  FieldElement y3 = lambda * (p.x() - x3) - p.y();
  return Point(std::move(x3), std::move(y3));
}

namespace {

Point to_affine(const Jacobian& j, const ModulusPtr& p) {
  if (j.z == 0) return Point::infinity();
  FieldElement zinv = FieldElement(p, j.z).inverse();
  FieldElement zinv2 = zinv * zinv;
  return Point(FieldElement(p, j.x) * zinv2, FieldElement(p, j.y) * zinv2 * zinv);
}

}  // namespace

Point Curve::mul_integer(const mpz_class& k, const Point& p) const {
  require_on_curve(p);
  if (k == 0 || p.is_infinity()) return Point::infinity();
  if (k < 0) return mul_integer(-k, negate(p));
  JacobianOps ops(p_->value(), a_.value());
  Jacobian acc{0, 1, 0};
  const mpz_class& px = p.x().value();
  const mpz_class& py = p.y().value();
  for (std::size_t i = mpz_sizeinbase(k.get_mpz_t(), 2); i-- > 0;) {
    ops.dbl(acc);
    if (mpz_tstbit(k.get_mpz_t(), i)) ops.add_affine(acc, px, py);
  }
  return to_affine(acc, p_);
}

Point Curve::mul(const Scalar& k, const Point& p) const {
  if (k.modulus().value() != n_->value()) throw ArithmeticError("scalar is not reduced by this curve's group order");
  return mul_integer(k.value(), p);
}

Point Curve::mul2(const Scalar& k1, const Point& p1, const Scalar& k2, const Point& p2) const {
  if (k1.modulus().value() != n_->value() || k2.modulus().value() != n_->value()) {
    throw ArithmeticError("scalar is not reduced by this curve's group order");
  }
  if (p1.is_infinity() || k1.is_zero()) return mul(k2, p2);
  if (p2.is_infinity() || k2.is_zero()) return mul(k1, p1);
  Point sum = add(p1, p2);
  JacobianOps ops(p_->value(), a_.value());
  Jacobian acc{0, 1, 0};
  mpz_srcptr e1 = k1.value().get_mpz_t();
  mpz_srcptr e2 = k2.value().get_mpz_t();
  std::size_t bits = std::max(mpz_sizeinbase(e1, 2), mpz_sizeinbase(e2, 2));
  for (std::size_t i = bits; i-- > 0;) {
    ops.dbl(acc);
    bool b1 = mpz_tstbit(e1, i) != 0;
    bool b2 = mpz_tstbit(e2, i) != 0;
    if (b1 && b2) {
      if (!sum.is_infinity()) ops.add_affine(acc, sum.x().value(), sum.y().value());
    } else if (b1) {
      ops.add_affine(acc, p1.x().value(), p1.y().value());
    } else if (b2) {
      ops.add_affine(acc, p2.x().value(), p2.y().value());
    }
  }
  return to_affine(acc, p_);
}

Bytes Curve::encode(const Point& p) const {
  require_on_curve(p);
  if (p.is_infinity()) return Bytes{0x00};
  Bytes out;
  out.reserve(point_bytes());
  out.push_back(p.y().is_odd() ? 0x03 : 0x02);
  append(out, p.x().to_bytes());
  return out;
}

Point Curve::decode(ByteView bytes) const {
  if (bytes.size() == 1 && bytes[0] == 0x00) return Point::infinity();
  if (bytes.size() != point_bytes()) throw DecodeError("compressed point has the wrong length");
  std::uint8_t prefix = bytes[0];
  if (prefix != 0x02 && prefix != 0x03) throw DecodeError("invalid compressed point prefix");
  FieldElement x = FieldElement::from_bytes(p_, bytes.subspan(1));
  FieldElement y2 = rhs(x);
  if (fe_chi(y2) < 0) throw DecodeError("x coordinate is not on the curve");
  FieldElement y = fe_sqrt(y2);
  bool want_odd = prefix == 0x03;
  if (y.is_odd() != want_odd) {
    if (y.is_zero()) throw DecodeError("no point with odd y for this x");
    y = -y;
  }
  return Point(std::move(x), std::move(y));
}

std::vector<Point> Curve::enumerate_points() const {
  if (p_->bits() > 20) throw CurveError("refusing to enumerate a large curve");
  std::vector<Point> out{Point::infinity()};
  long p = p_->value().get_si();
  for (long xv = 0; xv < p; ++xv) {
    FieldElement x = fe(xv);
    FieldElement y2 = rhs(x);
    int chi = fe_chi(y2);
    if (chi == 0) {
      out.emplace_back(x, y2);
    } else if (chi > 0) {
      FieldElement y = fe_sqrt(y2);
      out.emplace_back(x, y);
      out.emplace_back(x, -y);
    }
  }
  return out;
}

}  // namespace urs
