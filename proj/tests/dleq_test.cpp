#include <gtest/gtest.h>

#include <numeric>

#include "test_util.hpp"
#include "urs/dleq.hpp"

namespace urs {
namespace {

using testutil::small;
using testutil::to_pt;

TEST(DleqTest, HonestProofsVerifyOnSmallCurveForEveryWitness) {
  const Curve& c = Curve::test31();
  Point g1 = c.generator();
  Point g2 = c.mul_generator(c.scalar(2));
  SeededRng rng(1);
  for (long x = 1; x < 21; ++x) {
    Scalar sx = c.scalar(x);
    DleqProof proof = dleq_prove(c, sx, g1, g2, rng);
    EXPECT_TRUE(dleq_verify(c, c.mul(sx, g1), c.mul(sx, g2), g1, g2, proof)) << x;
  }
}

TEST(DleqTest, HonestProofsVerifyOnSecp256k1) {
  const Curve& c = Curve::secp256k1();
  SeededRng rng(2);
  Point g2 = c.mul_generator(random_nonzero_scalar(c.order(), rng));
  for (int i = 0; i < 20; ++i) {
    Scalar x = random_nonzero_scalar(c.order(), rng);
    DleqProof proof = dleq_prove(c, x, c.generator(), g2, rng);
    EXPECT_TRUE(dleq_verify(c, c.mul_generator(x), c.mul(x, g2), c.generator(), g2, proof));
  }
}

TEST(DleqTest, MismatchedExponentsRejectOnSecp256k1) {
  const Curve& c = Curve::secp256k1();
  SeededRng rng(3);
  Point g2 = c.mul_generator(random_nonzero_scalar(c.order(), rng));
  for (int i = 0; i < 200; ++i) {
    Scalar x = random_nonzero_scalar(c.order(), rng);
    Scalar y = random_nonzero_scalar(c.order(), rng);
    ASSERT_NE(x, y);
    DleqProof proof = dleq_prove(c, x, c.generator(), g2, rng);
    EXPECT_FALSE(dleq_verify(c, c.mul_generator(x), c.mul(y, g2), c.generator(), g2, proof));
  }
}

// Interactive check on test-31, against brute-force group arithmetic: an
// honest response for witness x passes the second equation for y2 = y g2
// exactly when c (y - x) = 0 mod n.
TEST(DleqTest, SecondEquationSeparatesWitnessesExhaustively) {
  const Curve& c = Curve::test31();
  oracle::SmallCurve sc = small(c);
  const long n = 21;
  oracle::Pt g2 = to_pt(c.mul_generator(c.scalar(2)));
  const long r = 5;
  oracle::Pt b = sc.mul(r, g2);
  for (long x = 1; x < n; ++x) {
    for (long y = 1; y < n; ++y) {
      if (x == y) continue;
      oracle::Pt y2 = sc.mul(y, g2);
      for (long ch = 1; ch < n; ++ch) {
        long t = oracle::mod(r - ch * x, n);
        oracle::Pt recomputed = sc.add(sc.mul(t, g2), sc.mul(ch, y2));
        bool collapses = oracle::mod(ch * (y - x), n) == 0;
        EXPECT_EQ(recomputed == b, collapses) << x << " " << y << " " << ch;
        // Same computation through the library.
        Point lib = c.mul2(c.scalar(t), testutil::from_pt(c, g2), c.scalar(ch), testutil::from_pt(c, y2));
        EXPECT_EQ(to_pt(lib), recomputed);
      }
    }
  }
}

// Two accepting transcripts with one commitment and different challenges give
// the witness back: x = (t' - t) / (c - c').
TEST(DleqTest, SpecialSoundnessExtractsWitness) {
  const Curve& c = Curve::test31();
  for (long x = 1; x < 21; ++x) {
    for (long c1 = 0; c1 < 21; ++c1) {
      for (long c2 = 0; c2 < 21; ++c2) {
        if (std::gcd(std::abs(c1 - c2), 21L) != 1) continue;
        Scalar r = c.scalar(11);
        Scalar t1 = r - c.scalar(c1) * c.scalar(x);
        Scalar t2 = r - c.scalar(c2) * c.scalar(x);
        Scalar extracted = (t2 - t1) / (c.scalar(c1) - c.scalar(c2));
        EXPECT_EQ(extracted, c.scalar(x));
      }
    }
  }
}

TEST(DleqTest, RejectsDegenerateInputs) {
  const Curve& c = Curve::secp256k1();
  SeededRng rng(4);
  EXPECT_THROW(dleq_prove(c, c.scalar(0), c.generator(), c.generator(), rng), SchemeError);
  EXPECT_THROW(dleq_prove(c, c.scalar(3), Point::infinity(), c.generator(), rng), SchemeError);
  DleqProof proof = dleq_prove(c, c.scalar(3), c.generator(), c.generator(), rng);
  Point y = c.mul_generator(c.scalar(3));
  EXPECT_FALSE(dleq_verify(c, y, y, Point::infinity(), c.generator(), proof));
  EXPECT_FALSE(dleq_verify(c, Point(c.fe(1), c.fe(1)), y, c.generator(), c.generator(), proof));
}

}  // namespace
}  // namespace urs
