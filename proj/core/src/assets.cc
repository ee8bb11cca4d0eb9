#include "afe/assets.h"

#include <charconv>

#include "afe/error.h"

namespace afe {

std::string PreviewFnSpec::Describe() const {
  switch (kind) {
    case Kind::kIdentity: return "identity";
    case Kind::kTruncatePrefix: return "truncate_prefix(" + std::to_string(prefix_len) + ")";
    case Kind::kBilinearHalve: return "bilinear_halve";
  }
  return "?";
}

PreviewFnSpec PreviewFnSpec::FromDescription(std::string_view text) {
  if (text == "identity") return Identity();
  if (text == "bilinear_halve") return BilinearHalve();
  constexpr std::string_view kPrefix = "truncate_prefix(";
  if (text.starts_with(kPrefix) && text.ends_with(")")) {
    std::string_view num = text.substr(kPrefix.size(), text.size() - kPrefix.size() - 1);
    uint64_t k = 0;
    auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), k);
    if (ec == std::errc() && ptr == num.data() + num.size()) return TruncatePrefix(k);
  }
  throw Error(ErrorCode::kConfig, "unknown preview function '" + std::string(text) + "'");
}

Bytes PreviewFnSpec::Serialize() const {
  Writer w;
  w.U8(static_cast<uint8_t>(kind)).U64(prefix_len);
  return std::move(w).bytes();
}

PreviewFnSpec PreviewFnSpec::Parse(ByteView in) {
  Reader r(in);
  const uint8_t kind = r.U8();
  PreviewFnSpec spec;
  spec.prefix_len = r.U64();
  r.ExpectDone();
  if (kind > static_cast<uint8_t>(Kind::kBilinearHalve)) {
    throw Error(ErrorCode::kMalformed, "unknown preview kind");
  }
  spec.kind = static_cast<Kind>(kind);
  return spec;
}

Asset MakeAsset(Bytes a, const SigKeyPair& kp) {
  Asset asset;
  asset.sigma = Sign(kp, a);
  asset.a = std::move(a);
  asset.pk = kp.pk;
  return asset;
}

Bytes PreviewBody(const PreviewFnSpec& spec, ByteView a) {
  switch (spec.kind) {
    case PreviewFnSpec::Kind::kIdentity:
      return Bytes(a.begin(), a.end());
    case PreviewFnSpec::Kind::kTruncatePrefix: {
      const size_t n = std::min<uint64_t>(spec.prefix_len, a.size());
      return Bytes(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(n));
    }
    case PreviewFnSpec::Kind::kBilinearHalve: {
      Image img;
      try {
        img = PgmParse(a);
      } catch (const Error& e) {
        throw Error(ErrorCode::kUnsupportedFormat,
                    std::string("bilinear_halve needs a PGM payload: ") + e.what());
      }
      return PgmSerialize(BilinearHalve(img));
    }
  }
  throw Error(ErrorCode::kUnsupportedFormat, "unknown preview kind");
}

Preview ApplyPreview(const PreviewFnSpec& spec, const Asset& asset) {
  if (!asset.WellFormed()) {
    throw Error(ErrorCode::kMalformedAsset, "asset signature does not verify");
  }
  return Preview{PreviewBody(spec, asset.a), asset.pk};
}

Image BilinearHalve(const Image& img) {
  if (img.width < 2 || img.height < 2 || img.width % 2 != 0 || img.height % 2 != 0) {
    throw Error(ErrorCode::kUnsupportedDimension,
                std::to_string(img.width) + "x" + std::to_string(img.height) +
                    " is not even in both dimensions");
  }
  if (img.pixels.size() != size_t(img.width) * img.height) {
    throw Error(ErrorCode::kMalformed, "pixel count does not match dimensions");
  }
  Image out;
  out.width = img.width / 2;
  out.height = img.height / 2;
  out.pixels.resize(size_t(out.width) * out.height);
  const uint8_t* src = img.pixels.data();
  for (uint32_t i = 0; i < out.height; ++i) {
    const uint8_t* top = src + size_t(2 * i) * img.width;
    const uint8_t* bottom = top + img.width;
    uint8_t* dst = out.pixels.data() + size_t(i) * out.width;
    for (uint32_t j = 0; j < out.width; ++j) {
      const unsigned sum = top[2 * j] + top[2 * j + 1] + bottom[2 * j] + bottom[2 * j + 1];
      dst[j] = static_cast<uint8_t>(sum >> 2);
    }
  }
  return out;
}

namespace {

class PgmHeaderReader {
 public:
  explicit PgmHeaderReader(ByteView in) : in_(in) {}

  void SkipSpaceAndComments() {
    while (pos_ < in_.size()) {
      const uint8_t c = in_[pos_];
      if (c == '#') {
        while (pos_ < in_.size() && in_[pos_] != '\n') ++pos_;
      } else if (IsSpace(c)) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  uint64_t Number(const char* what) {
    SkipSpaceAndComments();
    uint64_t v = 0;
    size_t digits = 0;
    while (pos_ < in_.size() && in_[pos_] >= '0' && in_[pos_] <= '9') {
      v = v * 10 + (in_[pos_] - '0');
      if (v > UINT32_MAX) throw Error(ErrorCode::kMalformed, std::string(what) + " too large");
      ++pos_;
      ++digits;
    }
    if (digits == 0) throw Error(ErrorCode::kMalformed, std::string("missing ") + what);
    return v;
  }

  size_t pos() const { return pos_; }
  void Expect(uint8_t c) {
    if (pos_ >= in_.size() || in_[pos_] != c) {
      throw Error(ErrorCode::kMalformed, "bad PGM magic");
    }
    ++pos_;
  }
  void ExpectSingleSpace() {
    if (pos_ >= in_.size() || !IsSpace(in_[pos_])) {
      throw Error(ErrorCode::kMalformed, "missing whitespace after maxval");
    }
    ++pos_;
  }

 private:
  static bool IsSpace(uint8_t c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
  }

  ByteView in_;
  size_t pos_ = 0;
};

}  // namespace

Image PgmParse(ByteView bytes) {
  PgmHeaderReader hdr(bytes);
  hdr.Expect('P');
  hdr.Expect('5');
  const uint64_t width = hdr.Number("width");
  const uint64_t height = hdr.Number("height");
  const uint64_t maxval = hdr.Number("maxval");
  if (width == 0 || height == 0) throw Error(ErrorCode::kMalformed, "zero image dimension");
  if (maxval != 255) {
    throw Error(ErrorCode::kUnsupportedFormat,
                "maxval " + std::to_string(maxval) + " unsupported; need 255");
  }
  hdr.ExpectSingleSpace();
  const size_t n = size_t(width) * size_t(height);
  if (bytes.size() - hdr.pos() < n) throw Error(ErrorCode::kMalformed, "truncated PGM body");
  if (bytes.size() - hdr.pos() > n) throw Error(ErrorCode::kMalformed, "trailing bytes after PGM body");
  Image img;
  img.width = static_cast<uint32_t>(width);
  img.height = static_cast<uint32_t>(height);
  img.pixels.assign(bytes.begin() + static_cast<std::ptrdiff_t>(hdr.pos()), bytes.end());
  return img;
}

Bytes PgmSerialize(const Image& img) {
  if (img.pixels.size() != size_t(img.width) * img.height) {
    throw Error(ErrorCode::kMalformed, "pixel count does not match dimensions");
  }
  const std::string header =
      "P5\n" + std::to_string(img.width) + " " + std::to_string(img.height) + "\n255\n";
  Bytes out(header.begin(), header.end());
  out.insert(out.end(), img.pixels.begin(), img.pixels.end());
  return out;
}

}  // namespace afe
