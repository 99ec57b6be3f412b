#include <gtest/gtest.h>

#include "urs/attacks.hpp"

namespace urs {
namespace {

struct Scenario {
  PublicParams pp;
  std::vector<KeyPair> keys;
  Ring ring;
};

Scenario make(HashVariant h, std::size_t n, std::uint64_t seed) {
  PublicParams pp = setup(128, Curve::secp256k1(), h, h == HashVariant::kInsecureMultG);
  SeededRng rng(seed);
  std::vector<KeyPair> keys;
  std::vector<Point> pks;
  for (std::size_t i = 0; i < n; ++i) {
    keys.push_back(ring_gen(pp, rng));
    pks.push_back(keys.back().pk);
  }
  Ring ring = Ring::canonical(pp.curve, pks);
  return Scenario{pp, keys, ring};
}

TEST(AttackTest, NaiveHashRecoversEverySigner) {
  Scenario s = make(HashVariant::kInsecureMultG, 6, 1);
  SeededRng rng(2);
  Bytes msg = to_bytes("leaky");
  for (const KeyPair& kp : s.keys) {
    Signature sig = ring_sign(s.pp, kp.sk, s.ring, msg, rng);
    ASSERT_TRUE(ring_verify(s.pp, s.ring, msg, sig));
    auto found = attack_naive_hash(s.pp, s.ring, sig, msg);
    ASSERT_TRUE(found.has_value());
    EXPECT_EQ(s.ring[*found], kp.pk);
  }
}

TEST(AttackTest, NaiveHashFindsNothingUnderFt) {
  Scenario s = make(HashVariant::kFtDeterministic, 6, 3);
  SeededRng rng(4);
  Bytes msg = to_bytes("safe");
  for (const KeyPair& kp : s.keys) {
    Signature sig = ring_sign(s.pp, kp.sk, s.ring, msg, rng);
    EXPECT_FALSE(attack_naive_hash(s.pp, s.ring, sig, msg).has_value());
  }
}

TEST(AttackTest, TagRevealNarrowsAnonymitySet) {
  Scenario s = make(HashVariant::kFtDeterministic, 5, 5);
  SeededRng rng(6);
  Bytes msg = to_bytes("collude");
  const KeyPair& signer = s.keys[2];
  std::size_t signer_index = *s.ring.index_of(signer.pk);
  Signature sig = ring_sign(s.pp, signer.sk, s.ring, msg, rng);

  std::vector<Scalar> colluders;
  for (const KeyPair& kp : s.keys) {
    if (kp.pk != signer.pk) colluders.push_back(kp.sk);
  }
  EXPECT_EQ(attack_tag_reveal(s.pp, s.ring, sig, msg, std::span(colluders.data(), 2)).size(), 3u);
  EXPECT_EQ(attack_tag_reveal(s.pp, s.ring, sig, msg, colluders), std::vector<std::size_t>{signer_index});
  EXPECT_EQ(attack_tag_reveal(s.pp, s.ring, sig, msg, {}).size(), 5u);

  std::vector<Scalar> self{signer.sk};
  EXPECT_EQ(attack_tag_reveal(s.pp, s.ring, sig, msg, self).size(), 5u);

  std::vector<Scalar> outsider{s.pp.curve.scalar(424242)};
  EXPECT_THROW(attack_tag_reveal(s.pp, s.ring, sig, msg, outsider), SchemeError);
}

}  // namespace
}  // namespace urs
