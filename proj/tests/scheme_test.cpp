#include <gtest/gtest.h>

#include <algorithm>
#include <set>
#include <thread>

#include "urs/scheme.hpp"

namespace urs {
namespace {

struct Fixture {
  PublicParams pp;
  std::vector<KeyPair> keys;
  Ring ring;
};

Fixture make_fixture(const Curve& curve, std::size_t n, std::uint64_t seed,
                     HashVariant h = HashVariant::kFtDeterministic) {
  PublicParams pp = setup(128, curve, h, h == HashVariant::kInsecureMultG);
  SeededRng rng(seed);
  std::vector<KeyPair> keys;
  std::vector<Point> pks;
  std::set<Bytes> seen;
  while (keys.size() < n) {
    KeyPair kp = ring_gen(pp, rng);
    if (!seen.insert(curve.encode(kp.pk)).second) continue;  // tiny curves repeat keys
    pks.push_back(kp.pk);
    keys.push_back(kp);
  }
  Ring ring = Ring::canonical(curve, pks);
  return Fixture{pp, keys, ring};
}

TEST(SetupTest, Parameterization) {
  EXPECT_NO_THROW(setup(128, Curve::secp256k1(), HashVariant::kFtDeterministic));
  EXPECT_NO_THROW(setup(8, Curve::test31(), HashVariant::kFtDeterministic));
  EXPECT_NO_THROW(setup(8, Curve::test11(), HashVariant::kTryIncrement));
  EXPECT_THROW(setup(128, Curve::secp256k1(), HashVariant::kInsecureMultG), SchemeError);
  EXPECT_NO_THROW(setup(128, Curve::secp256k1(), HashVariant::kInsecureMultG, true));
  EXPECT_THROW(setup(0, Curve::secp256k1(), HashVariant::kFtDeterministic), SchemeError);
  EXPECT_THROW(setup(8, Curve::test11(), HashVariant::kFtDeterministic), SchemeError);
}

TEST(RingGenTest, KeysAreOnCurveAndDistinct) {
  PublicParams pp = setup(128, Curve::secp256k1(), HashVariant::kFtDeterministic);
  SeededRng rng(1);
  std::set<Bytes> pks;
  for (int i = 0; i < 100; ++i) {
    KeyPair kp = ring_gen(pp, rng);
    EXPECT_FALSE(kp.sk.is_zero());
    EXPECT_TRUE(pp.curve.on_curve(kp.pk));
    EXPECT_EQ(kp.pk, pp.curve.mul_generator(kp.sk));
    pks.insert(pp.curve.encode(kp.pk));
  }
  EXPECT_EQ(pks.size(), 100u);
}

TEST(RingGenTest, SecretOneGivesGenerator) {
  PublicParams pp = setup(128, Curve::secp256k1(), HashVariant::kFtDeterministic);
  EXPECT_EQ(keypair_from_secret(pp, pp.curve.scalar(1)).pk, pp.curve.generator());
  EXPECT_THROW(keypair_from_secret(pp, pp.curve.scalar(0)), SchemeError);
}

TEST(RingGenTest, SmallCurveKeysAreUnits) {
  PublicParams pp = setup(8, Curve::test31(), HashVariant::kFtDeterministic);
  SeededRng rng(2);
  for (int i = 0; i < 200; ++i) {
    long sk = ring_gen(pp, rng).sk.value().get_si();
    EXPECT_NE(sk % 3, 0);
    EXPECT_NE(sk % 7, 0);
  }
  EXPECT_THROW(keypair_from_secret(pp, pp.curve.scalar(7)), SchemeError);
}

TEST(RingTest, CanonicalOrderIsPermutationInvariant) {
  const Curve& c = Curve::secp256k1();
  Point a = c.mul_generator(c.scalar(5));
  Point b = c.mul_generator(c.scalar(9));
  Point d = c.mul_generator(c.scalar(13));
  Ring r1 = Ring::canonical(c, {b, a, d});
  Ring r2 = Ring::canonical(c, {a, d, b});
  EXPECT_EQ(r1.canonical_bytes(), r2.canonical_bytes());
  EXPECT_EQ(r1.members(), r2.members());
  for (std::size_t i = 1; i < r1.size(); ++i) EXPECT_LT(c.encode(r1[i - 1]), c.encode(r1[i]));
}

TEST(RingTest, Errors) {
  const Curve& c = Curve::secp256k1();
  Point a = c.mul_generator(c.scalar(5));
  EXPECT_THROW(Ring::canonical(c, {a, a}), SchemeError);
  EXPECT_THROW(Ring::canonical(c, {a}), SchemeError);
  EXPECT_THROW(Ring::canonical(c, {a, Point::infinity()}), SchemeError);
  EXPECT_THROW(Ring::canonical(c, {a, Point(c.fe(1), c.fe(1))}), SchemeError);
}

TEST(RingTest, CanonicalBytesLayout) {
  Fixture f = make_fixture(Curve::secp256k1(), 4, 3);
  EXPECT_EQ(f.ring.canonical_bytes().size(), 4u * 33u);
  EXPECT_EQ(f.ring.digest(), Sha256::hash(f.ring.canonical_bytes()));
}

class CompletenessTest : public ::testing::TestWithParam<std::tuple<std::string, std::size_t>> {};

TEST_P(CompletenessTest, EverySignerVerifies) {
  auto [curve_id, n] = GetParam();
  Fixture f = make_fixture(Curve::by_id(curve_id), n, 40 + n);
  SeededRng rng(99);
  for (const KeyPair& kp : f.keys) {
    Bytes msg = to_bytes("completeness");
    Signature sig = ring_sign(f.pp, kp.sk, f.ring, msg, rng);
    EXPECT_EQ(sig.cs.size(), n);
    EXPECT_TRUE(ring_verify(f.pp, f.ring, msg, sig));
  }
}

INSTANTIATE_TEST_SUITE_P(RingSizes, CompletenessTest,
                         ::testing::Combine(::testing::Values("test-31", "secp256k1"),
                                            ::testing::Values(2u, 4u, 8u)),
                         [](const auto& info) {
                           std::string id = std::get<0>(info.param);
                           std::erase(id, '-');
                           return id + "_n" + std::to_string(std::get<1>(info.param));
                         });

TEST(SchemeTest, TryIncrementVariantIsComplete) {
  Fixture f = make_fixture(Curve::test11(), 3, 5, HashVariant::kTryIncrement);
  SeededRng rng(6);
  for (const KeyPair& kp : f.keys) {
    Signature sig = ring_sign(f.pp, kp.sk, f.ring, to_bytes("m"), rng);
    EXPECT_TRUE(ring_verify(f.pp, f.ring, to_bytes("m"), sig));
  }
}

TEST(SchemeTest, TagIsUniqueAcrossSignings) {
  Fixture f = make_fixture(Curve::secp256k1(), 4, 7);
  SeededRng rng1(1);
  SeededRng rng2(2);
  Bytes msg = to_bytes("uniqueness");
  Signature s1 = ring_sign(f.pp, f.keys[1].sk, f.ring, msg, rng1);
  Signature s2 = ring_sign(f.pp, f.keys[1].sk, f.ring, msg, rng2);
  EXPECT_EQ(s1.tau, s2.tau);
  EXPECT_NE(s1.cs, s2.cs);
  EXPECT_NE(s1.ts, s2.ts);
  EXPECT_EQ(s1.tau.point, f.pp.curve.mul(f.keys[1].sk, hash_message_ring(f.pp, msg, f.ring)));
}

// Recomputes sum(c_j) == H'(...) with separate mul/add calls and a hand-built
// transcript.
TEST(SchemeTest, ChallengeSumMatchesIndependentTranscript) {
  Fixture f = make_fixture(Curve::secp256k1(), 4, 8);
  const Curve& c = f.pp.curve;
  SeededRng rng(3);
  Bytes msg = to_bytes("transcript oracle");
  Signature sig = ring_sign(f.pp, f.keys[2].sk, f.ring, msg, rng);

  Bytes h_input;
  append_u64_be(h_input, msg.size());
  append(h_input, msg);
  append(h_input, f.ring.canonical_bytes());
  Point h = hash_to_curve_ft(c, h_input);

  Bytes transcript = h_input;
  mpz_class sum = 0;
  for (std::size_t j = 0; j < f.ring.size(); ++j) {
    Point a = c.add(c.mul(sig.ts[j], c.generator()), c.mul(sig.cs[j], f.ring[j]));
    Point b = c.add(c.mul(sig.ts[j], h), c.mul(sig.cs[j], sig.tau.point));
    append(transcript, c.encode(a));
    append(transcript, c.encode(b));
    sum += sig.cs[j].value();
  }
  Digest d = Sha256().update(std::uint8_t{0x02}).update(transcript).finish();
  mpz_class expected = mpz_from_bytes(d) % c.params().n;
  EXPECT_EQ(sum % c.params().n, expected);
}

TEST(SchemeTest, RejectsFlippedMessageAndShiftedTag) {
  for (const Curve* curve : {&Curve::test31(), &Curve::secp256k1()}) {
    Fixture f = make_fixture(*curve, 4, 9);
    SeededRng rng(4);
    Bytes msg = to_bytes("withdraw");
    Signature sig = ring_sign(f.pp, f.keys[0].sk, f.ring, msg, rng);
    ASSERT_TRUE(ring_verify(f.pp, f.ring, msg, sig));
    Bytes flipped = msg;
    flipped[0] ^= 0x01;
    EXPECT_FALSE(ring_verify(f.pp, f.ring, flipped, sig));
    Signature shifted = sig;
    shifted.tau.point = curve->add(sig.tau.point, curve->generator());
    if (curve == &Curve::secp256k1()) EXPECT_FALSE(ring_verify(f.pp, f.ring, msg, shifted));
  }
}

TEST(SchemeTest, RejectsStructuralProblems) {
  Fixture f = make_fixture(Curve::secp256k1(), 3, 10);
  SeededRng rng(5);
  Bytes msg = to_bytes("m");
  Signature sig = ring_sign(f.pp, f.keys[0].sk, f.ring, msg, rng);

  Signature short_sig = sig;
  short_sig.cs.pop_back();
  short_sig.ts.pop_back();
  EXPECT_FALSE(ring_verify(f.pp, f.ring, msg, short_sig));

  Signature inf_tag = sig;
  inf_tag.tau.point = Point::infinity();
  EXPECT_FALSE(ring_verify(f.pp, f.ring, msg, inf_tag));

  Signature off_curve = sig;
  off_curve.tau.point = Point(f.pp.curve.fe(1), f.pp.curve.fe(1));
  EXPECT_FALSE(ring_verify(f.pp, f.ring, msg, off_curve));

  Signature wrong_digest = sig;
  wrong_digest.ring_hash[0] ^= 1;
  EXPECT_FALSE(ring_verify(f.pp, f.ring, msg, wrong_digest));

  Signature foreign = sig;
  foreign.cs[0] = Curve::test31().scalar(1);
  EXPECT_FALSE(ring_verify(f.pp, f.ring, msg, foreign));
}

TEST(SchemeTest, SignerOutsideRingRejected) {
  Fixture f = make_fixture(Curve::secp256k1(), 3, 11);
  SeededRng rng(6);
  EXPECT_THROW(ring_sign(f.pp, f.pp.curve.scalar(12345), f.ring, to_bytes("m"), rng), SchemeError);
}

TEST(SchemeTest, InsecureVariantNeedsOverrideEvenWhenHandBuilt) {
  Fixture f = make_fixture(Curve::secp256k1(), 2, 12);
  PublicParams bad{128, Curve::secp256k1(), HashVariant::kInsecureMultG, "sha256", false};
  SeededRng rng(7);
  Signature sig = ring_sign(f.pp, f.keys[0].sk, f.ring, to_bytes("m"), rng);
  EXPECT_THROW(ring_verify(bad, f.ring, to_bytes("m"), sig), SchemeError);
  EXPECT_THROW(ring_sign(bad, f.keys[0].sk, f.ring, to_bytes("m"), rng), SchemeError);
}

TEST(SchemeTest, PayoutBindsChallengeButNotTag) {
  Fixture f = make_fixture(Curve::secp256k1(), 3, 13);
  SeededRng rng(8);
  Bytes msg = to_bytes("pool");
  Signature a = ring_sign(f.pp, f.keys[1].sk, f.ring, msg, rng, to_bytes("alice"));
  Signature b = ring_sign(f.pp, f.keys[1].sk, f.ring, msg, rng, to_bytes("bob"));
  EXPECT_TRUE(ring_verify(f.pp, f.ring, msg, a, to_bytes("alice")));
  EXPECT_FALSE(ring_verify(f.pp, f.ring, msg, a, to_bytes("mallory")));
  EXPECT_FALSE(ring_verify(f.pp, f.ring, msg, a));
  EXPECT_EQ(a.tau, b.tau);
}

TEST(LinkTest, Verdicts) {
  Fixture f = make_fixture(Curve::test31(), 3, 14);
  SeededRng rng(9);
  Bytes m1 = to_bytes("m1");
  Bytes m2 = to_bytes("m2");
  // Keys differing by a unit guarantee distinct tags: (x1 - x2) h != O.
  Signature s1 = ring_sign(f.pp, f.keys[0].sk, f.ring, m1, rng);
  Signature s1b = ring_sign(f.pp, f.keys[0].sk, f.ring, m1, rng);
  Signature other = ring_sign(f.pp, f.keys[1].sk, f.ring, m1, rng);
  Signature s1m2 = ring_sign(f.pp, f.keys[0].sk, f.ring, m2, rng);
  EXPECT_EQ(link(s1, s1b), LinkResult::kLinked);
  EXPECT_EQ(link(s1, s1m2), LinkResult::kIncomparable);
  Point h = hash_message_ring(f.pp, m1, f.ring);
  Scalar diff = f.keys[0].sk - f.keys[1].sk;
  if (!f.pp.curve.mul(diff, h).is_infinity()) {
    EXPECT_NE(s1.tau, other.tau);
    EXPECT_EQ(link(s1, other), LinkResult::kUnlinked);
  }
  EXPECT_EQ(to_string(LinkResult::kLinked), "LINKED");
}

TEST(LinkTest, DistinctSignersUnlinkedOnSmallCurve) {
  // sk = 1 and sk = 2 differ by 1, so their tags differ by h itself.
  PublicParams pp = setup(8, Curve::test31(), HashVariant::kFtDeterministic);
  const Curve& c = pp.curve;
  KeyPair k1 = keypair_from_secret(pp, c.scalar(1));
  KeyPair k2 = keypair_from_secret(pp, c.scalar(2));
  KeyPair k4 = keypair_from_secret(pp, c.scalar(4));
  Ring ring = Ring::canonical(c, {k1.pk, k2.pk, k4.pk});
  SeededRng rng(10);
  Bytes m = to_bytes("m");
  Signature a = ring_sign(pp, k1.sk, ring, m, rng);
  Signature b = ring_sign(pp, k2.sk, ring, m, rng);
  EXPECT_NE(a.tau, b.tau);
  EXPECT_EQ(link(a, b), LinkResult::kUnlinked);
}

TEST(SchemeTest, PermutedRingInputStillVerifies) {
  Fixture f = make_fixture(Curve::test31(), 4, 15);
  SeededRng rng(11);
  Bytes msg = to_bytes("perm");
  std::vector<Point> pks;
  for (const KeyPair& kp : f.keys) pks.push_back(kp.pk);
  for (std::size_t signer = 0; signer < f.keys.size(); ++signer) {
    Signature sig = ring_sign(f.pp, f.keys[signer].sk, f.ring, msg, rng);
    std::vector<std::size_t> perm{0, 1, 2, 3};
    do {
      std::vector<Point> permuted;
      for (std::size_t i : perm) permuted.push_back(pks[i]);
      EXPECT_TRUE(ring_verify(f.pp, Ring::canonical(f.pp.curve, permuted), msg, sig));
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
}

// An intentionally wrong signer that reduces the response mod p instead of
// mod n. On test-31 (p = 31, n = 21) completeness must break.
TEST(SchemeTest, ReducingResponseModPBreaksCompleteness) {
  Fixture f = make_fixture(Curve::test31(), 3, 16);
  const Curve& c = f.pp.curve;
  const mpz_class p = c.params().p;
  SeededRng rng(12);
  int failures = 0;
  int trials = 0;
  for (int round = 0; round < 30; ++round) {
    Bytes msg = to_bytes("modp-" + std::to_string(round));
    const KeyPair& kp = f.keys[round % 3];
    std::size_t i = *f.ring.index_of(kp.pk);
    Point h = hash_message_ring(f.pp, msg, f.ring);
    Point tau = c.mul(kp.sk, h);
    std::vector<Scalar> cs(3, c.scalar(0)), ts(3, c.scalar(0));
    std::vector<Commitments> com(3);
    Scalar r = random_scalar(c.order(), rng);
    Scalar others = c.scalar(0);
    for (std::size_t j = 0; j < 3; ++j) {
      if (j == i) {
        com[j] = {c.mul_generator(r), c.mul(r, h)};
        continue;
      }
      ts[j] = random_scalar(c.order(), rng);
      cs[j] = random_scalar(c.order(), rng);
      com[j] = {c.mul2(ts[j], c.generator(), cs[j], f.ring[j]), c.mul2(ts[j], h, cs[j], tau)};
      others += cs[j];
    }
    cs[i] = challenge(f.pp, msg, f.ring, com) - others;
    mpz_class wrong = (r.value() - cs[i].value() * kp.sk.value()) % p;
    if (wrong < 0) wrong += p;
    ts[i] = c.scalar(wrong);
    Signature sig{Tag{tau}, cs, ts, f.ring.digest(), Sha256::hash(msg)};
    ++trials;
    if (!ring_verify(f.pp, f.ring, msg, sig)) ++failures;
  }
  EXPECT_GT(failures, trials / 2);
}

TEST(SchemeTest, ConcurrentSignAndVerify) {
  Fixture f = make_fixture(Curve::secp256k1(), 3, 17);
  std::vector<std::thread> workers;
  std::vector<int> ok(4, 0);
  for (int w = 0; w < 4; ++w) {
    workers.emplace_back([&, w] {
      SeededRng rng(100 + w);
      Bytes msg = to_bytes("thread-" + std::to_string(w));
      Signature sig = ring_sign(f.pp, f.keys[w % 3].sk, f.ring, msg, rng);
      ok[w] = ring_verify(f.pp, f.ring, msg, sig) ? 1 : 0;
    });
  }
  for (auto& t : workers) t.join();
  EXPECT_EQ(std::count(ok.begin(), ok.end(), 1), 4);
}

}  // namespace
}  // namespace urs
