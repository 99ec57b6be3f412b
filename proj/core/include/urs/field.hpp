#ifndef URS_FIELD_HPP_
#define URS_FIELD_HPP_

#include <gmpxx.h>

#include <cstddef>
#include <memory>
#include <string>

#include "urs/bytes.hpp"
#include "urs/errors.hpp"

namespace urs {

// A modulus together with its fixed big-endian encoding width.
class Modulus {
 public:
  explicit Modulus(mpz_class value);

  const mpz_class& value() const { return value_; }
  std::size_t bits() const { return bits_; }
  std::size_t byte_width() const { return (bits_ + 7) / 8; }

 private:
  mpz_class value_;
  std::size_t bits_;
};

using ModulusPtr = std::shared_ptr<const Modulus>;

struct BaseFieldTag {};
struct GroupOrderTag {};

// Residue class modulo a runtime modulus. The tag parameter keeps base-field
// coordinates and group-order exponents apart: FieldElement + Scalar does not
// compile, and two residues of the same kind over different moduli throw.
template <typename Tag>
class Residue {
 public:
  Residue(ModulusPtr modulus, mpz_class value) : mod_(std::move(modulus)), v_(std::move(value)) {
    mpz_mod(v_.get_mpz_t(), v_.get_mpz_t(), mod_->value().get_mpz_t());
  }
  Residue(ModulusPtr modulus, long value) : Residue(std::move(modulus), mpz_class(value)) {}

  static Residue zero(ModulusPtr m) { return Residue(std::move(m), 0L); }
  static Residue one(ModulusPtr m) { return Residue(std::move(m), 1L); }

  // Strict decoding: exactly byte_width() bytes, value below the modulus.
  static Residue from_bytes(ModulusPtr m, ByteView bytes);
  // Reducing decoding of an arbitrary-length big-endian integer.
  static Residue reduce_bytes(ModulusPtr m, ByteView bytes);
  static Residue from_hex(ModulusPtr m, const std::string& hex) { return from_bytes(std::move(m), urs::from_hex(hex)); }

  const mpz_class& value() const { return v_; }
  const Modulus& modulus() const { return *mod_; }
  const ModulusPtr& modulus_ptr() const { return mod_; }

  bool is_zero() const { return v_ == 0; }
  bool is_odd() const { return mpz_odd_p(v_.get_mpz_t()) != 0; }

  Residue operator+(const Residue& o) const {
    check(o);
    mpz_class r = v_ + o.v_;
    if (r >= mod_->value()) r -= mod_->value();
    return raw(r);
  }
  Residue operator-(const Residue& o) const {
    check(o);
    mpz_class r = v_ - o.v_;
    if (r < 0) r += mod_->value();
    return raw(r);
  }
  Residue operator*(const Residue& o) const {
    check(o);
    mpz_class r = v_ * o.v_;
    mpz_mod(r.get_mpz_t(), r.get_mpz_t(), mod_->value().get_mpz_t());
    return raw(r);
  }
  Residue operator/(const Residue& o) const { return *this * o.inverse(); }
  Residue operator-() const { return is_zero() ? *this : raw(mod_->value() - v_); }

  Residue& operator+=(const Residue& o) { return *this = *this + o; }
  Residue& operator-=(const Residue& o) { return *this = *this - o; }
  Residue& operator*=(const Residue& o) { return *this = *this * o; }

  Residue inverse() const {
    mpz_class r;
    if (v_ == 0 || mpz_invert(r.get_mpz_t(), v_.get_mpz_t(), mod_->value().get_mpz_t()) == 0) {
      throw ArithmeticError("inverse of a non-invertible residue");
    }
    return raw(r);
  }

  Residue pow(const mpz_class& exponent) const {
    if (exponent < 0) return inverse().pow(-exponent);
    mpz_class r;
    mpz_powm(r.get_mpz_t(), v_.get_mpz_t(), exponent.get_mpz_t(), mod_->value().get_mpz_t());
    return raw(r);
  }

  Bytes to_bytes() const;
  std::string to_hex() const { return urs::to_hex(to_bytes()); }

  friend bool operator==(const Residue& a, const Residue& b) {
    return a.v_ == b.v_ && a.mod_->value() == b.mod_->value();
  }

 private:
  Residue raw(mpz_class r) const {
    Residue out = *this;
    out.v_ = std::move(r);
    return out;
  }
  void check(const Residue& o) const {
    if (mod_ != o.mod_ && mod_->value() != o.mod_->value()) {
      throw ArithmeticError("operands reduced by different moduli");
    }
  }

  ModulusPtr mod_;
  mpz_class v_;
};

using FieldElement = Residue<BaseFieldTag>;
using Scalar = Residue<GroupOrderTag>;

extern template class Residue<BaseFieldTag>;
extern template class Residue<GroupOrderTag>;

// Fixed-width big-endian encoding of a non-negative integer.
Bytes mpz_to_bytes(const mpz_class& v, std::size_t width);
mpz_class mpz_from_bytes(ByteView bytes);

// Quadratic character via Euler's criterion: 0 for zero, +1 for a nonzero
// square, -1 otherwise.
int fe_chi(const FieldElement& a);

// The root a^((p+1)/4). Defined for p = 3 mod 4 only; the caller negates for
// the other root. Throws ArithmeticError when a is not a square.
FieldElement fe_sqrt(const FieldElement& a);

}  // namespace urs

#endif  // URS_FIELD_HPP_
