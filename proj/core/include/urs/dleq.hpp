#ifndef URS_DLEQ_HPP_
#define URS_DLEQ_HPP_

#include "urs/curve.hpp"
#include "urs/rng.hpp"

namespace urs {

// Non-interactive proof that log_{g1}(y1) = log_{g2}(y2).
struct DleqProof {
  Scalar c;
  Scalar t;
};

// Fiat-Shamir challenge H'(g1, g2, y1, y2, a, b) under the DLEQ domain tag.
Scalar dleq_challenge(const Curve& curve, const Point& g1, const Point& g2, const Point& y1, const Point& y2,
                      const Point& a, const Point& b);

// Commits a = r g1, b = r g2, sets c from the transcript and t = r - c x.
// Throws SchemeError for x = 0 or a base at infinity / off the curve.
DleqProof dleq_prove(const Curve& curve, const Scalar& x, const Point& g1, const Point& g2, Rng& rng);

// Recomputes a = t g1 + c y1, b = t g2 + c y2 and checks the challenge.
bool dleq_verify(const Curve& curve, const Point& y1, const Point& y2, const Point& g1, const Point& g2,
                 const DleqProof& proof);

}  // namespace urs

#endif  // URS_DLEQ_HPP_
