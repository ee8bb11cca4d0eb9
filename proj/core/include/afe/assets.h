#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "afe/bytes.h"
#include "afe/crypto.h"

namespace afe {

// a* = (a, pk, sigma).
struct Asset {
  Bytes a;
  VerifyKey pk{};
  Signature sigma{};

  bool WellFormed() const { return Verify(pk, a, sigma); }
  friend bool operator==(const Asset&, const Asset&) = default;
};

// (f_sub(a), pk).
struct Preview {
  Bytes body;
  VerifyKey pk{};
  friend bool operator==(const Preview&, const Preview&) = default;
};

struct Image {
  uint32_t width = 0;
  uint32_t height = 0;
  std::vector<uint8_t> pixels;  // row-major

  uint8_t at(uint32_t row, uint32_t col) const { return pixels[size_t(row) * width + col]; }
  friend bool operator==(const Image&, const Image&) = default;
};

struct PreviewFnSpec {
  enum class Kind : uint8_t { kIdentity = 0, kTruncatePrefix = 1, kBilinearHalve = 2 };

  Kind kind = Kind::kIdentity;
  uint64_t prefix_len = 0;  // kTruncatePrefix only

  static PreviewFnSpec Identity() { return {}; }
  static PreviewFnSpec TruncatePrefix(uint64_t k) { return {Kind::kTruncatePrefix, k}; }
  static PreviewFnSpec BilinearHalve() { return {Kind::kBilinearHalve, 0}; }

  // "identity", "truncate_prefix(K)", "bilinear_halve"
  std::string Describe() const;
  static PreviewFnSpec FromDescription(std::string_view text);
  Bytes Serialize() const;
  static PreviewFnSpec Parse(ByteView in);

  friend bool operator==(const PreviewFnSpec&, const PreviewFnSpec&) = default;
};

Asset MakeAsset(Bytes a, const SigKeyPair& kp);

// f_sub alone. Throws kUnsupportedFormat when `a` is not valid input for the
// preview kind.
Bytes PreviewBody(const PreviewFnSpec& spec, ByteView a);
// Throws kMalformedAsset for an asset whose signature does not verify.
Preview ApplyPreview(const PreviewFnSpec& spec, const Asset& asset);

// 2x2 box average with floor rounding. Throws kUnsupportedDimension unless
// both dimensions are even and at least 2.
Image BilinearHalve(const Image& img);

// Binary PGM (P5), maxval 255 only.
Image PgmParse(ByteView bytes);
Bytes PgmSerialize(const Image& img);

}  // namespace afe
