#include "urs/field.hpp"

namespace urs {

Modulus::Modulus(mpz_class value) : value_(std::move(value)), bits_(0) {
  if (value_ < 2) throw ArithmeticError("modulus must be at least 2");
  bits_ = mpz_sizeinbase(value_.get_mpz_t(), 2);
}

Bytes mpz_to_bytes(const mpz_class& v, std::size_t width) {
  if (v < 0) throw ArithmeticError("cannot encode a negative integer");
  std::size_t needed = (mpz_sizeinbase(v.get_mpz_t(), 2) + 7) / 8;
  if (v == 0) needed = 0;
  if (needed > width) throw ArithmeticError("integer does not fit the encoding width");
  Bytes out(width, 0);
  std::size_t count = 0;
  mpz_export(out.data() + (width - needed), &count, 1, 1, 1, 0, v.get_mpz_t());
  return out;
}

mpz_class mpz_from_bytes(ByteView bytes) {
  mpz_class v;
  if (!bytes.empty()) mpz_import(v.get_mpz_t(), bytes.size(), 1, 1, 1, 0, bytes.data());
  return v;
}

template <typename Tag>
Residue<Tag> Residue<Tag>::from_bytes(ModulusPtr m, ByteView bytes) {
  if (bytes.size() != m->byte_width()) throw DecodeError("residue encoding has the wrong length");
  mpz_class v = mpz_from_bytes(bytes);
  if (v >= m->value()) throw DecodeError("residue encoding is not reduced");
  return Residue(std::move(m), std::move(v));
}

template <typename Tag>
Residue<Tag> Residue<Tag>::reduce_bytes(ModulusPtr m, ByteView bytes) {
  return Residue(std::move(m), mpz_from_bytes(bytes));
}

template <typename Tag>
Bytes Residue<Tag>::to_bytes() const {
  return mpz_to_bytes(v_, mod_->byte_width());
}

template class Residue<BaseFieldTag>;
template class Residue<GroupOrderTag>;

int fe_chi(const FieldElement& a) {
  if (a.is_zero()) return 0;
  mpz_class e = (a.modulus().value() - 1) / 2;
  return a.pow(e).value() == 1 ? 1 : -1;
}

FieldElement fe_sqrt(const FieldElement& a) {
  const mpz_class& p = a.modulus().value();
  if (mpz_fdiv_ui(p.get_mpz_t(), 4) != 3) throw ArithmeticError("square root requires p = 3 mod 4");
  FieldElement u = a.pow((p + 1) / 4);
  if (!(u * u == a)) throw ArithmeticError("square root of a quadratic non-residue");
  return u;
}

}  // namespace urs
