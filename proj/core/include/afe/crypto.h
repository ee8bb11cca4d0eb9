#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>

#include "afe/bytes.h"
#include "afe/rng.h"

namespace afe {

inline constexpr size_t kDigestSize = 32;
inline constexpr size_t kSymKeySize = 32;
inline constexpr size_t kNonceSize = 16;
inline constexpr size_t kRandomnessSize = 32;
inline constexpr size_t kScalarSize = 32;
inline constexpr size_t kGroupElementSize = 32;
inline constexpr size_t kVerifyKeySize = 32;
inline constexpr size_t kSignatureSize = 64;
inline constexpr uint32_t kMinCommitBits = 256;

// Key material derived from a Diffie-Hellman share covers the symmetric key
// plus the 32-byte randomness length, i.e. |K_e| + |M_c| bits.
inline constexpr uint32_t kSharedKeyBits = 8 * (kSymKeySize + kRandomnessSize);

struct Digest {
  std::array<uint8_t, kDigestSize> bytes{};

  std::string Hex() const { return ToHex(bytes); }
  static Digest FromHex(std::string_view hex);
  friend bool operator==(const Digest&, const Digest&) = default;
  friend auto operator<=>(const Digest&, const Digest&) = default;
};

// SHA-256.
Digest Hash(ByteView input);

// First `ell_bits` bits of H(input||0) || H(input||1) || ... with a 4-byte
// big-endian counter. Trailing bits of a partial last byte are zeroed.
Bytes RoExpand(ByteView input, uint32_t ell_bits);

// ---------------------------------------------------------------------------
// Commitments

struct CommitKey {
  Bytes label;
  uint32_t kappa = kMinCommitBits;

  Bytes Serialize() const;
  static CommitKey Parse(ByteView in);
  friend bool operator==(const CommitKey&, const CommitKey&) = default;
};

struct Commitment {
  Bytes bytes;
  friend bool operator==(const Commitment&, const Commitment&) = default;
};

using Randomness = std::array<uint8_t, kRandomnessSize>;

CommitKey CommitKeyGen(Rng& rng);
Commitment Commit(const CommitKey& ck, ByteView message, const Randomness& r);
bool Open(const CommitKey& ck, const Commitment& c, ByteView message,
          const Randomness& r);

// ---------------------------------------------------------------------------
// Symmetric encryption: RO keystream XOR with an explicit nonce.

struct SymKey {
  std::array<uint8_t, kSymKeySize> bytes{};
  friend bool operator==(const SymKey&, const SymKey&) = default;
};

using Nonce = std::array<uint8_t, kNonceSize>;

struct Ciphertext {
  Nonce nonce{};
  Bytes body;

  // nonce || body
  Bytes Serialize() const;
  // Throws kMalformed when shorter than the nonce.
  static Ciphertext Parse(ByteView in);
  size_t size() const { return kNonceSize + body.size(); }
  friend bool operator==(const Ciphertext&, const Ciphertext&) = default;
};

SymKey SymKeyGen(Rng& rng);
Ciphertext SymEncrypt(const SymKey& k, ByteView plaintext, const Nonce& nonce);
Bytes SymDecrypt(const SymKey& k, const Ciphertext& c);

// ---------------------------------------------------------------------------
// Signatures (Ed25519, deterministic).

using VerifyKey = std::array<uint8_t, kVerifyKeySize>;
using Signature = std::array<uint8_t, kSignatureSize>;

struct SigKeyPair {
  std::array<uint8_t, 64> sk{};
  VerifyKey pk{};
};

SigKeyPair SigKeyGen(Rng& rng);
Signature Sign(const SigKeyPair& kp, ByteView message);
// Returns false for any malformed key or signature encoding.
bool Verify(const VerifyKey& pk, ByteView message, ByteView signature);

// ---------------------------------------------------------------------------
// Diffie-Hellman over the ristretto255 prime-order group.

// Scalars are held in the group library's native little-endian form; the
// canonical wire encoding is big-endian.
struct Scalar {
  std::array<uint8_t, kScalarSize> le{};

  Bytes ToBigEndian() const;
  static Scalar FromBigEndian(ByteView be);
  friend bool operator==(const Scalar&, const Scalar&) = default;
};

struct GroupElement {
  std::array<uint8_t, kGroupElementSize> bytes{};

  bool IsValid() const;
  friend bool operator==(const GroupElement&, const GroupElement&) = default;
};

struct DhKeyPair {
  Scalar sk;
  GroupElement pk;
};

DhKeyPair DhGen(Rng& rng);
// sk * G. Throws kInvalidPoint for the zero scalar.
GroupElement DhPublic(const Scalar& sk);
// RO_ell(sk * pk_other). Throws kInvalidPoint when pk_other is not a valid
// non-identity group element.
Bytes DhShared(const Scalar& sk, const GroupElement& pk_other,
               uint32_t ell_bits = kSharedKeyBits);
// Symmetric key taken from the leading bytes of DH key material.
SymKey SymKeyFromMaterial(ByteView material);

}  // namespace afe
