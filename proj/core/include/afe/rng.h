#pragma once

#include <cstdint>
#include <string_view>

#include "afe/bytes.h"

namespace afe {

// Seeded deterministic byte source (ChaCha20 keystream per draw). Every
// randomized operation in the library takes one of these so a whole
// simulation replays bit-exactly from a single seed.
class Rng {
 public:
  explicit Rng(uint64_t seed);
  explicit Rng(ByteView seed_material);

  Bytes Draw(size_t n);
  void Fill(std::span<uint8_t> out);

  template <size_t N>
  std::array<uint8_t, N> DrawArray() {
    std::array<uint8_t, N> out{};
    Fill(out);
    return out;
  }

  uint64_t NextU64();
  // Uniform in [lo, hi], inclusive.
  uint64_t Uniform(uint64_t lo, uint64_t hi);

  // Independent child stream; same label on the same parent state gives the
  // same child, without advancing the parent.
  Rng Fork(std::string_view label) const;

 private:
  std::array<uint8_t, 32> seed_{};
  uint64_t counter_ = 0;
};

}  // namespace afe
