#include "afe/rng.h"

#include <sodium.h>

#include "afe/crypto.h"

namespace afe {

Rng::Rng(uint64_t seed) {
  Writer w;
  w.Field("afe/rng/u64").U64(seed);
  seed_ = Hash(w.bytes()).bytes;
}

Rng::Rng(ByteView seed_material) {
  Writer w;
  w.Field("afe/rng/bytes").Field(seed_material);
  seed_ = Hash(w.bytes()).bytes;
}

void Rng::Fill(std::span<uint8_t> out) {
  Writer w;
  w.Raw(seed_).U64(counter_++);
  Digest draw_seed = Hash(w.bytes());
  static_assert(randombytes_SEEDBYTES == kDigestSize);
  randombytes_buf_deterministic(out.data(), out.size(), draw_seed.bytes.data());
}

Bytes Rng::Draw(size_t n) {
  Bytes out(n);
  Fill(out);
  return out;
}

uint64_t Rng::NextU64() {
  auto b = DrawArray<8>();
  uint64_t v = 0;
  for (uint8_t x : b) v = (v << 8) | x;
  return v;
}

uint64_t Rng::Uniform(uint64_t lo, uint64_t hi) {
  if (hi <= lo) return lo;
  const uint64_t span = hi - lo;
  if (span == UINT64_MAX) return NextU64();
  const uint64_t range = span + 1;
  const uint64_t limit = UINT64_MAX - (UINT64_MAX % range);
  uint64_t v;
  do {
    v = NextU64();
  } while (v >= limit);
  return lo + v % range;
}

Rng Rng::Fork(std::string_view label) const {
  Writer w;
  w.Raw(seed_).U64(counter_).Field(label);
  return Rng(ByteView(w.bytes()));
}

}  // namespace afe
