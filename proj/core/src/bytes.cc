#include "afe/bytes.h"

#include <algorithm>

#include "afe/error.h"

namespace afe {

std::string ToHex(ByteView bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (uint8_t b : bytes) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0x0F]);
  }
  return out;
}

namespace {

int HexValue(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

Bytes FromHex(std::string_view hex) {
  if (hex.size() % 2 != 0) {
    throw Error(ErrorCode::kMalformed, "odd-length hex string");
  }
  Bytes out(hex.size() / 2);
  for (size_t i = 0; i < out.size(); ++i) {
    int hi = HexValue(hex[2 * i]);
    int lo = HexValue(hex[2 * i + 1]);
    if (hi < 0 || lo < 0) throw Error(ErrorCode::kMalformed, "bad hex digit");
    out[i] = static_cast<uint8_t>((hi << 4) | lo);
  }
  return out;
}

bool ContainsSubstring(ByteView haystack, ByteView needle) {
  if (needle.empty()) return true;
  return std::search(haystack.begin(), haystack.end(), needle.begin(),
                     needle.end()) != haystack.end();
}

Writer& Writer::U8(uint8_t v) {
  out_.push_back(v);
  return *this;
}

Writer& Writer::U32(uint32_t v) {
  for (int shift = 24; shift >= 0; shift -= 8) {
    out_.push_back(static_cast<uint8_t>(v >> shift));
  }
  return *this;
}

Writer& Writer::U64(uint64_t v) {
  for (int shift = 56; shift >= 0; shift -= 8) {
    out_.push_back(static_cast<uint8_t>(v >> shift));
  }
  return *this;
}

Writer& Writer::Field(ByteView field) {
  if (field.size() > UINT32_MAX) {
    throw Error(ErrorCode::kInvalidLength, "field exceeds u32 length prefix");
  }
  U32(static_cast<uint32_t>(field.size()));
  return Raw(field);
}

Writer& Writer::Raw(ByteView raw) {
  out_.insert(out_.end(), raw.begin(), raw.end());
  return *this;
}

ByteView Reader::Take(size_t n) {
  if (n > remaining()) {
    throw Error(ErrorCode::kMalformed, "truncated input");
  }
  ByteView out = in_.subspan(pos_, n);
  pos_ += n;
  return out;
}

uint8_t Reader::U8() { return Take(1)[0]; }

uint32_t Reader::U32() {
  uint32_t v = 0;
  for (uint8_t b : Take(4)) v = (v << 8) | b;
  return v;
}

uint64_t Reader::U64() {
  uint64_t v = 0;
  for (uint8_t b : Take(8)) v = (v << 8) | b;
  return v;
}

Bytes Reader::Field() {
  uint32_t len = U32();
  ByteView body = Take(len);
  return Bytes(body.begin(), body.end());
}

std::string Reader::FieldString() {
  Bytes f = Field();
  return std::string(f.begin(), f.end());
}

Bytes Reader::Raw(size_t n) {
  ByteView body = Take(n);
  return Bytes(body.begin(), body.end());
}

void Reader::ExpectDone() const {
  if (!done()) throw Error(ErrorCode::kMalformed, "trailing bytes");
}

void Reader::CheckFixed(size_t got, size_t want) {
  if (got != want) {
    throw Error(ErrorCode::kMalformed,
                "fixed field has length " + std::to_string(got) +
                    ", expected " + std::to_string(want));
  }
}

}  // namespace afe
