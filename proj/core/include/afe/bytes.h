#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace afe {

using Bytes = std::vector<uint8_t>;
using ByteView = std::span<const uint8_t>;

std::string ToHex(ByteView bytes);
Bytes FromHex(std::string_view hex);

inline ByteView AsBytes(std::string_view s) {
  return {reinterpret_cast<const uint8_t*>(s.data()), s.size()};
}

template <size_t N>
ByteView AsBytes(const std::array<uint8_t, N>& a) {
  return {a.data(), a.size()};
}

inline Bytes Concat(std::initializer_list<ByteView> parts) {
  size_t total = 0;
  for (auto p : parts) total += p.size();
  Bytes out;
  out.reserve(total);
  for (auto p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

// True if `needle` occurs as a contiguous run inside `haystack`.
bool ContainsSubstring(ByteView haystack, ByteView needle);

// Canonical binary encoding: fixed-width big-endian integers and
// length-prefixed (u32 big-endian) variable fields, concatenated in order.
class Writer {
 public:
  Writer& U8(uint8_t v);
  Writer& U32(uint32_t v);
  Writer& U64(uint64_t v);
  Writer& Field(ByteView field);
  Writer& Field(std::string_view field) { return Field(AsBytes(field)); }
  Writer& Raw(ByteView raw);

  const Bytes& bytes() const& { return out_; }
  Bytes bytes() && { return std::move(out_); }

 private:
  Bytes out_;
};

// Throws Error(kMalformed) on any short read.
class Reader {
 public:
  explicit Reader(ByteView in) : in_(in) {}

  uint8_t U8();
  uint32_t U32();
  uint64_t U64();
  Bytes Field();
  std::string FieldString();
  Bytes Raw(size_t n);

  template <size_t N>
  std::array<uint8_t, N> FixedField() {
    Bytes f = Field();
    std::array<uint8_t, N> out{};
    CheckFixed(f.size(), N);
    std::copy(f.begin(), f.end(), out.begin());
    return out;
  }

  size_t remaining() const { return in_.size() - pos_; }
  bool done() const { return remaining() == 0; }
  // Throws unless every byte was consumed.
  void ExpectDone() const;

 private:
  static void CheckFixed(size_t got, size_t want);
  ByteView Take(size_t n);

  ByteView in_;
  size_t pos_ = 0;
};

}  // namespace afe
