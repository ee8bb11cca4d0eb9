#include <gtest/gtest.h>

#include <algorithm>

#include "afe/assets.h"
#include "afe/error.h"
#include "support/box_oracle.h"

namespace afe {
namespace {

Image RandomImage(Rng& rng, uint32_t w, uint32_t h) {
  Image img{w, h, {}};
  img.pixels = rng.Draw(size_t(w) * h);
  return img;
}

ErrorCode CodeOf(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kIo;
}

TEST(BilinearHalve, MatchesBoxOracle) {
  Rng rng(7);
  for (int i = 0; i < 30; ++i) {
    const uint32_t w = 2 * static_cast<uint32_t>(rng.Uniform(1, 64));
    const uint32_t h = 2 * static_cast<uint32_t>(rng.Uniform(1, 64));
    const Image img = RandomImage(rng, w, h);
    const Image out = BilinearHalve(img);
    EXPECT_EQ(out.width, w / 2);
    EXPECT_EQ(out.height, h / 2);
    EXPECT_EQ(out.pixels, testing::BoxHalveOracle(img.pixels, w, h));
  }
}

TEST(BilinearHalve, FloorsTheAverage) {
  const Image img{2, 2, {1, 2, 2, 2}};
  EXPECT_EQ(BilinearHalve(img).pixels, std::vector<uint8_t>{1});
  const Image white{2, 2, {255, 255, 255, 255}};
  EXPECT_EQ(BilinearHalve(white).pixels, std::vector<uint8_t>{255});
}

TEST(BilinearHalve, KnownValues) {
  EXPECT_EQ(BilinearHalve(Image{2, 2, {0, 2, 4, 6}}).pixels, std::vector<uint8_t>{3});
  const Image flat{8, 6, std::vector<uint8_t>(48, 91)};
  const Image half = BilinearHalve(flat);
  EXPECT_EQ(half.width, 4u);
  EXPECT_EQ(half.height, 3u);
  EXPECT_EQ(half.pixels, std::vector<uint8_t>(12, 91));
}

TEST(BilinearHalve, StaysWithinSourceBlockRange) {
  Rng rng(6);
  const Image img = RandomImage(rng, 40, 30);
  const Image out = BilinearHalve(img);
  for (uint32_t y = 0; y < out.height; ++y) {
    for (uint32_t x = 0; x < out.width; ++x) {
      const uint8_t block[] = {img.at(2 * y, 2 * x), img.at(2 * y, 2 * x + 1),
                               img.at(2 * y + 1, 2 * x), img.at(2 * y + 1, 2 * x + 1)};
      EXPECT_GE(out.at(y, x), *std::min_element(block, block + 4));
      EXPECT_LE(out.at(y, x), *std::max_element(block, block + 4));
    }
  }
}

TEST(BilinearHalve, RejectsOddOrTinyDimensions) {
  Rng rng(8);
  EXPECT_EQ(CodeOf([&] { BilinearHalve(RandomImage(rng, 3, 4)); }),
            ErrorCode::kUnsupportedDimension);
  EXPECT_EQ(CodeOf([&] { BilinearHalve(RandomImage(rng, 4, 1)); }),
            ErrorCode::kUnsupportedDimension);
  EXPECT_EQ(CodeOf([&] { BilinearHalve(Image{}); }), ErrorCode::kUnsupportedDimension);
}

TEST(Pgm, RoundTripsAndSkipsComments) {
  Rng rng(9);
  const Image img = RandomImage(rng, 6, 4);
  EXPECT_EQ(PgmParse(PgmSerialize(img)), img);

  std::string text = "P5\n# a comment\n2 2\n255\n";
  Bytes b(text.begin(), text.end());
  b.insert(b.end(), {1, 2, 3, 4});
  EXPECT_EQ(PgmParse(b).pixels, (std::vector<uint8_t>{1, 2, 3, 4}));
}

TEST(Pgm, RejectsBadInput) {
  auto bytes = [](std::string s) { return Bytes(s.begin(), s.end()); };
  EXPECT_EQ(CodeOf([&] { PgmParse(bytes("P2\n2 2\n255\n1 2 3 4")); }), ErrorCode::kMalformed);
  EXPECT_EQ(CodeOf([&] { PgmParse(bytes("P5\n2 2\n65535\n")); }),
            ErrorCode::kUnsupportedFormat);
  EXPECT_EQ(CodeOf([&] { PgmParse(bytes("P5\n2 2\n255\n\x01\x02")); }), ErrorCode::kMalformed);
  EXPECT_EQ(CodeOf([&] { PgmParse(bytes("P5\n1 1\n255\n\x01\x02")); }), ErrorCode::kMalformed);
}

TEST(Preview, TruncatePrefix) {
  Rng rng(10);
  const Bytes a = rng.Draw(100);
  const Bytes p = PreviewBody(PreviewFnSpec::TruncatePrefix(10), a);
  EXPECT_EQ(p, Bytes(a.begin(), a.begin() + 10));
  EXPECT_EQ(PreviewBody(PreviewFnSpec::TruncatePrefix(1000), a), a);
  EXPECT_EQ(PreviewBody(PreviewFnSpec::Identity(), a), a);
}

TEST(Preview, BilinearHalveNeedsPgm) {
  Rng rng(11);
  EXPECT_EQ(CodeOf([&] { PreviewBody(PreviewFnSpec::BilinearHalve(), rng.Draw(64)); }),
            ErrorCode::kUnsupportedFormat);
  const Image img = RandomImage(rng, 8, 8);
  const Image half = PgmParse(PreviewBody(PreviewFnSpec::BilinearHalve(), PgmSerialize(img)));
  EXPECT_EQ(half, BilinearHalve(img));
}

TEST(Preview, CarriesCreatorKeyAndChecksSignature) {
  Rng rng(12);
  const SigKeyPair kp = SigKeyGen(rng);
  Asset asset = MakeAsset(rng.Draw(64), kp);
  EXPECT_TRUE(asset.WellFormed());
  EXPECT_EQ(ApplyPreview(PreviewFnSpec::Identity(), asset).pk, kp.pk);
  asset.a[0] ^= 1;
  EXPECT_EQ(CodeOf([&] { ApplyPreview(PreviewFnSpec::Identity(), asset); }),
            ErrorCode::kMalformedAsset);
}

TEST(PreviewFnSpec, DescriptionsRoundTrip) {
  for (const PreviewFnSpec& s : {PreviewFnSpec::Identity(), PreviewFnSpec::TruncatePrefix(64),
                                 PreviewFnSpec::BilinearHalve()}) {
    EXPECT_EQ(PreviewFnSpec::FromDescription(s.Describe()), s);
    EXPECT_EQ(PreviewFnSpec::Parse(s.Serialize()), s);
  }
  EXPECT_THROW(PreviewFnSpec::FromDescription("blur"), Error);
}

}  // namespace
}  // namespace afe
