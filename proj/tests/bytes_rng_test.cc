#include <gtest/gtest.h>

#include "afe/bytes.h"
#include "afe/error.h"
#include "afe/rng.h"

namespace afe {
namespace {

TEST(Hex, RoundTripsAndRejectsJunk) {
  const Bytes b = {0x00, 0xab, 0xff};
  EXPECT_EQ(ToHex(b), "00abff");
  EXPECT_EQ(FromHex("00ABff"), b);
  EXPECT_THROW(FromHex("abc"), Error);
  EXPECT_THROW(FromHex("zz"), Error);
}

TEST(Codec, WriterReaderRoundTrip) {
  Writer w;
  w.U8(7).U32(0x01020304).U64(42).Field("hello").Raw(Bytes{9, 9});
  Reader r(w.bytes());
  EXPECT_EQ(r.U8(), 7);
  EXPECT_EQ(r.U32(), 0x01020304u);
  EXPECT_EQ(r.U64(), 42u);
  EXPECT_EQ(r.FieldString(), "hello");
  EXPECT_EQ(r.Raw(2), (Bytes{9, 9}));
  EXPECT_NO_THROW(r.ExpectDone());
}

TEST(Codec, BigEndianLayout) {
  Writer w;
  w.U32(0x01020304);
  EXPECT_EQ(w.bytes(), (Bytes{1, 2, 3, 4}));
}

TEST(Codec, ShortReadsThrow) {
  const Bytes b = {0, 0, 0, 9, 1};
  Reader r(b);
  EXPECT_THROW(r.Field(), Error);
  Reader r2(b);
  r2.U32();
  EXPECT_THROW(r2.ExpectDone(), Error);
}

TEST(Substring, FindsAndMisses) {
  const Bytes hay = {1, 2, 3, 4, 5};
  EXPECT_TRUE(ContainsSubstring(hay, Bytes{3, 4}));
  EXPECT_FALSE(ContainsSubstring(hay, Bytes{4, 3}));
  EXPECT_FALSE(ContainsSubstring(Bytes{1}, Bytes{1, 2}));
}

TEST(Rng, SameSeedSameStream) {
  Rng a(9), b(9), c(10);
  const Bytes x = a.Draw(100);
  EXPECT_EQ(x, b.Draw(100));
  EXPECT_NE(x, c.Draw(100));
}

TEST(Rng, ForkDoesNotAdvanceParent) {
  Rng a(9), b(9);
  Rng child = a.Fork("x");
  EXPECT_EQ(a.Draw(32), b.Draw(32));
  EXPECT_NE(child.Draw(32), Rng(9).Fork("y").Draw(32));
}

TEST(Rng, UniformStaysInRange) {
  Rng rng(3);
  std::vector<int> hits(6, 0);
  for (int i = 0; i < 6000; ++i) {
    const uint64_t v = rng.Uniform(10, 15);
    ASSERT_GE(v, 10u);
    ASSERT_LE(v, 15u);
    ++hits[v - 10];
  }
  for (int h : hits) EXPECT_GT(h, 800);
}

}  // namespace
}  // namespace afe
