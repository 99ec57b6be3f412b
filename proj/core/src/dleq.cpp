#include "urs/dleq.hpp"

#include "urs/hash_to_curve.hpp"
#include "urs/scheme.hpp"

namespace urs {

Scalar dleq_challenge(const Curve& curve, const Point& g1, const Point& g2, const Point& y1, const Point& y2,
                      const Point& a, const Point& b) {
  Bytes transcript;
  for (const Point* p : {&g1, &g2, &y1, &y2, &a, &b}) append(transcript, curve.encode(*p));
  return hash_to_scalar(curve, kDomainDleq, transcript);
}

DleqProof dleq_prove(const Curve& curve, const Scalar& x, const Point& g1, const Point& g2, Rng& rng) {
  if (x.is_zero()) throw SchemeError("DLEQ witness must be nonzero");
  for (const Point* g : {&g1, &g2}) {
    if (g->is_infinity() || !curve.on_curve(*g)) throw SchemeError("DLEQ base must be a finite curve point");
  }
  Scalar r = random_scalar(curve.order(), rng);
  Point a = curve.mul(r, g1);
  Point b = curve.mul(r, g2);
  Scalar c = dleq_challenge(curve, g1, g2, curve.mul(x, g1), curve.mul(x, g2), a, b);
  return DleqProof{c, r - c * x};
}

bool dleq_verify(const Curve& curve, const Point& y1, const Point& y2, const Point& g1, const Point& g2,
                 const DleqProof& proof) {
  for (const Point* p : {&y1, &y2, &g1, &g2}) {
    if (!curve.on_curve(*p)) return false;
  }
  if (g1.is_infinity() || g2.is_infinity()) return false;
  Point a = curve.mul2(proof.t, g1, proof.c, y1);
  Point b = curve.mul2(proof.t, g2, proof.c, y2);
  return dleq_challenge(curve, g1, g2, y1, y2, a, b) == proof.c;
}

}  // namespace urs
