#include <gtest/gtest.h>

#include <set>

#include "afe/crypto.h"
#include "afe/error.h"

namespace afe {
namespace {

// Frozen from an independent SHA-256 counter-mode reference.
constexpr char kRoAbc512[] =
    "cf2db1ac9867debdf8ce91f99f141e5544bf26ca36b3fd4f8e4035eec42cab0d"
    "46c386ebccef82ba0bb0b095aaa5548b03cdff6951871c6fb505af68af688332";
constexpr char kRoEmpty13[] = "df38";
constexpr char kCommitVector[] =
    "524e076f90ae0f0189724a810a23dd800bd58c3010c1cc308e005cc492178a5b";

TEST(RandomOracle, MatchesReferenceVectors) {
  EXPECT_EQ(ToHex(RoExpand(AsBytes("abc"), 512)), kRoAbc512);
  EXPECT_EQ(ToHex(RoExpand({}, 13)), kRoEmpty13);
}

TEST(RandomOracle, ShorterOutputIsPrefix) {
  Rng rng(5);
  for (int i = 0; i < 50; ++i) {
    const Bytes x = rng.Draw(rng.Uniform(0, 100));
    const uint32_t ell = static_cast<uint32_t>(rng.Uniform(8, 1024)) / 8 * 8;
    const Bytes full = RoExpand(x, 1024);
    const Bytes part = RoExpand(x, ell);
    ASSERT_EQ(part.size(), ell / 8);
    EXPECT_TRUE(std::equal(part.begin(), part.end(), full.begin()));
  }
}

TEST(RandomOracle, PartialByteIsMasked) {
  const Bytes out = RoExpand(AsBytes("x"), 3);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0] & 0x1F, 0);
}

TEST(RandomOracle, ZeroLengthThrows) {
  try {
    RoExpand(AsBytes("x"), 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidLength);
  }
}

TEST(Commitment, MatchesReferenceVector) {
  CommitKey ck{Bytes(AsBytes("afe/ck/test").begin(), AsBytes("afe/ck/test").end()), 256};
  Bytes m(64);
  for (size_t i = 0; i < m.size(); ++i) m[i] = static_cast<uint8_t>(i);
  Randomness r;
  r.fill(7);
  EXPECT_EQ(ToHex(Commit(ck, m, r).bytes), kCommitVector);
}

TEST(Commitment, OpensAndBinds) {
  Rng rng(11);
  const CommitKey ck = CommitKeyGen(rng);
  const Bytes m = rng.Draw(64);
  const auto r = rng.DrawArray<kRandomnessSize>();
  const Commitment c = Commit(ck, m, r);
  EXPECT_TRUE(Open(ck, c, m, r));

  for (size_t bit = 0; bit < m.size() * 8; bit += 37) {
    Bytes m2 = m;
    m2[bit / 8] ^= static_cast<uint8_t>(1u << (bit % 8));
    EXPECT_FALSE(Open(ck, c, m2, r));
  }
  for (size_t bit = 0; bit < r.size() * 8; bit += 13) {
    Randomness r2 = r;
    r2[bit / 8] ^= static_cast<uint8_t>(1u << (bit % 8));
    EXPECT_FALSE(Open(ck, c, m, r2));
  }
}

TEST(Commitment, NoCollisionsOverRandomTrials) {
  Rng rng(12);
  const CommitKey ck = CommitKeyGen(rng);
  std::set<Bytes> seen;
  for (int i = 0; i < 10000; ++i) {
    const Bytes m = rng.Draw(16);
    seen.insert(Commit(ck, m, rng.DrawArray<kRandomnessSize>()).bytes);
  }
  EXPECT_EQ(seen.size(), 10000u);
}

TEST(Commitment, DistinctKeysDisagree) {
  Rng rng(13);
  const CommitKey a = CommitKeyGen(rng);
  const CommitKey b = CommitKeyGen(rng);
  const Bytes m = rng.Draw(64);
  const auto r = rng.DrawArray<kRandomnessSize>();
  EXPECT_FALSE(Open(b, Commit(a, m, r), m, r));
}

TEST(Commitment, RejectsShortKappa) {
  CommitKey ck{{'x'}, 128};
  EXPECT_THROW(Commit(ck, {}, Randomness{}), Error);
  EXPECT_FALSE(Open(ck, Commitment{Bytes(16)}, {}, Randomness{}));
}

TEST(Commitment, KeySerializationRoundTrips) {
  Rng rng(14);
  const CommitKey ck = CommitKeyGen(rng);
  EXPECT_EQ(CommitKey::Parse(ck.Serialize()), ck);
}

TEST(SymmetricEncryption, RoundTripsAcrossSizes) {
  Rng rng(21);
  const SymKey k = SymKeyGen(rng);
  for (size_t n : {0u, 1u, 31u, 32u, 33u, 4096u, 100000u}) {
    const Bytes pt = rng.Draw(n);
    const Ciphertext c = SymEncrypt(k, pt, rng.DrawArray<kNonceSize>());
    EXPECT_EQ(c.size(), n + kNonceSize);
    EXPECT_EQ(SymDecrypt(k, c), pt);
    EXPECT_EQ(SymDecrypt(k, Ciphertext::Parse(c.Serialize())), pt);
  }
}

TEST(SymmetricEncryption, WrongKeyGarbles) {
  Rng rng(22);
  const SymKey k = SymKeyGen(rng);
  const SymKey k2 = SymKeyGen(rng);
  const Bytes pt = rng.Draw(256);
  const Ciphertext c = SymEncrypt(k, pt, rng.DrawArray<kNonceSize>());
  EXPECT_NE(SymDecrypt(k2, c), pt);
  EXPECT_FALSE(ContainsSubstring(c.body, ByteView(pt).subspan(0, 16)));
}

TEST(SymmetricEncryption, ShortCiphertextIsMalformed) {
  try {
    Ciphertext::Parse(Bytes(kNonceSize - 1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMalformed);
  }
}

TEST(Signature, SignVerifyAndReject) {
  Rng rng(31);
  const SigKeyPair kp = SigKeyGen(rng);
  const SigKeyPair other = SigKeyGen(rng);
  const Bytes m = rng.Draw(100);
  const Signature s = Sign(kp, m);
  EXPECT_TRUE(Verify(kp.pk, m, s));
  EXPECT_FALSE(Verify(other.pk, m, s));
  Bytes m2 = m;
  m2[0] ^= 1;
  EXPECT_FALSE(Verify(kp.pk, m2, s));
  EXPECT_FALSE(Verify(kp.pk, m, Bytes(10)));
}

TEST(Signature, SeededKeyGenIsDeterministic) {
  Rng a(32), b(32);
  EXPECT_EQ(SigKeyGen(a).pk, SigKeyGen(b).pk);
}

TEST(DiffieHellman, SharedSecretIsSymmetric) {
  Rng rng(41);
  for (int i = 0; i < 100; ++i) {
    const DhKeyPair a = DhGen(rng);
    const DhKeyPair b = DhGen(rng);
    const Bytes ab = DhShared(a.sk, b.pk);
    EXPECT_EQ(ab, DhShared(b.sk, a.pk));
    EXPECT_EQ(ab.size(), kSharedKeyBits / 8);
  }
}

TEST(DiffieHellman, PublicKeyMatchesGenerator) {
  Rng rng(42);
  const DhKeyPair kp = DhGen(rng);
  EXPECT_EQ(DhPublic(kp.sk), kp.pk);
  EXPECT_TRUE(kp.pk.IsValid());
}

TEST(DiffieHellman, ScalarBigEndianRoundTrip) {
  Rng rng(43);
  const DhKeyPair kp = DhGen(rng);
  const Bytes be = kp.sk.ToBigEndian();
  ASSERT_EQ(be.size(), kScalarSize);
  EXPECT_EQ(be.front(), kp.sk.le.back());
  EXPECT_EQ(Scalar::FromBigEndian(be), kp.sk);
}

TEST(DiffieHellman, RejectsIdentityAndInvalidPoints) {
  Rng rng(44);
  const DhKeyPair kp = DhGen(rng);
  GroupElement identity;
  EXPECT_FALSE(identity.IsValid());
  EXPECT_THROW(DhShared(kp.sk, identity), Error);
  GroupElement junk;
  junk.bytes.fill(0xFF);
  EXPECT_FALSE(junk.IsValid());
  EXPECT_THROW(DhShared(kp.sk, junk), Error);
  EXPECT_THROW(DhPublic(Scalar{}), Error);
}

TEST(DiffieHellman, SymKeyIsPrefixOfMaterial) {
  Rng rng(45);
  const DhKeyPair a = DhGen(rng);
  const DhKeyPair b = DhGen(rng);
  const Bytes material = DhShared(a.sk, b.pk);
  const SymKey k = SymKeyFromMaterial(material);
  EXPECT_TRUE(std::equal(k.bytes.begin(), k.bytes.end(), material.begin()));
}

}  // namespace
}  // namespace afe
