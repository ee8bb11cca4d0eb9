#include "afe/crypto.h"

#include <sodium.h>

#include <algorithm>

#include "afe/error.h"

namespace afe {
namespace {

void EnsureSodium() {
  static const bool ready = [] {
    if (sodium_init() < 0) throw Error(ErrorCode::kConfig, "sodium_init failed");
    return true;
  }();
  (void)ready;
}

constexpr char kCommitLabelPrefix[] = "afe/ck/";

static_assert(crypto_hash_sha256_BYTES == kDigestSize);
static_assert(crypto_core_ristretto255_BYTES == kGroupElementSize);
static_assert(crypto_core_ristretto255_SCALARBYTES == kScalarSize);
static_assert(crypto_sign_PUBLICKEYBYTES == kVerifyKeySize);
static_assert(crypto_sign_BYTES == kSignatureSize);
static_assert(crypto_sign_SECRETKEYBYTES == 64);

}  // namespace

Digest Digest::FromHex(std::string_view hex) {
  Bytes raw = afe::FromHex(hex);
  if (raw.size() != kDigestSize) {
    throw Error(ErrorCode::kMalformed, "digest must be 32 bytes");
  }
  Digest d;
  std::copy(raw.begin(), raw.end(), d.bytes.begin());
  return d;
}

Digest Hash(ByteView input) {
  EnsureSodium();
  Digest d;
  crypto_hash_sha256(d.bytes.data(), input.data(), input.size());
  return d;
}

Bytes RoExpand(ByteView input, uint32_t ell_bits) {
  if (ell_bits == 0) throw Error(ErrorCode::kInvalidLength, "ell must be > 0");
  EnsureSodium();
  const size_t out_len = (static_cast<size_t>(ell_bits) + 7) / 8;
  Bytes out;
  out.reserve(out_len + kDigestSize);

  crypto_hash_sha256_state base;
  crypto_hash_sha256_init(&base);
  crypto_hash_sha256_update(&base, input.data(), input.size());
  for (uint32_t ctr = 0; out.size() < out_len; ++ctr) {
    crypto_hash_sha256_state st = base;
    const uint8_t be[4] = {static_cast<uint8_t>(ctr >> 24),
                           static_cast<uint8_t>(ctr >> 16),
                           static_cast<uint8_t>(ctr >> 8),
                           static_cast<uint8_t>(ctr)};
    crypto_hash_sha256_update(&st, be, sizeof(be));
    uint8_t block[kDigestSize];
    crypto_hash_sha256_final(&st, block);
    out.insert(out.end(), block, block + kDigestSize);
  }
  out.resize(out_len);
  if (const uint32_t rem = ell_bits % 8; rem != 0) {
    out.back() &= static_cast<uint8_t>(0xFF << (8 - rem));
  }
  return out;
}

// ---------------------------------------------------------------------------

Bytes CommitKey::Serialize() const {
  Writer w;
  w.Field(label).U32(kappa);
  return std::move(w).bytes();
}

CommitKey CommitKey::Parse(ByteView in) {
  Reader r(in);
  CommitKey ck;
  ck.label = r.Field();
  ck.kappa = r.U32();
  r.ExpectDone();
  if (ck.kappa < kMinCommitBits) {
    throw Error(ErrorCode::kMalformed, "commitment kappa below 256 bits");
  }
  return ck;
}

CommitKey CommitKeyGen(Rng& rng) {
  CommitKey ck;
  Bytes tag = rng.Draw(16);
  std::string label = kCommitLabelPrefix + ToHex(tag);
  ck.label.assign(label.begin(), label.end());
  ck.kappa = kMinCommitBits;
  return ck;
}

Commitment Commit(const CommitKey& ck, ByteView message, const Randomness& r) {
  if (ck.kappa < kMinCommitBits) {
    throw Error(ErrorCode::kInvalidLength, "commitment kappa below 256 bits");
  }
  Writer w;
  w.Field(ck.label).Raw(message).Raw(r);
  return Commitment{RoExpand(w.bytes(), ck.kappa)};
}

bool Open(const CommitKey& ck, const Commitment& c, ByteView message,
          const Randomness& r) {
  if (ck.kappa < kMinCommitBits) return false;
  if (c.bytes.size() != (static_cast<size_t>(ck.kappa) + 7) / 8) return false;
  return Commit(ck, message, r) == c;
}

// ---------------------------------------------------------------------------

Bytes Ciphertext::Serialize() const {
  return Concat({nonce, body});
}

Ciphertext Ciphertext::Parse(ByteView in) {
  if (in.size() < kNonceSize) {
    throw Error(ErrorCode::kMalformed, "ciphertext shorter than its nonce");
  }
  Ciphertext c;
  std::copy_n(in.begin(), kNonceSize, c.nonce.begin());
  c.body.assign(in.begin() + kNonceSize, in.end());
  return c;
}

SymKey SymKeyGen(Rng& rng) { return SymKey{rng.DrawArray<kSymKeySize>()}; }

namespace {

Bytes Keystream(const SymKey& k, const Nonce& nonce, size_t len) {
  if (len == 0) return {};
  return RoExpand(Concat({k.bytes, nonce}), static_cast<uint32_t>(8 * len));
}

}  // namespace

Ciphertext SymEncrypt(const SymKey& k, ByteView plaintext, const Nonce& nonce) {
  if (plaintext.size() > UINT32_MAX / 8) {
    throw Error(ErrorCode::kInvalidLength, "plaintext too long");
  }
  Ciphertext c;
  c.nonce = nonce;
  c.body = Keystream(k, nonce, plaintext.size());
  for (size_t i = 0; i < plaintext.size(); ++i) c.body[i] ^= plaintext[i];
  return c;
}

Bytes SymDecrypt(const SymKey& k, const Ciphertext& c) {
  if (c.body.size() > UINT32_MAX / 8) {
    throw Error(ErrorCode::kMalformed, "ciphertext too long");
  }
  Bytes out = Keystream(k, c.nonce, c.body.size());
  for (size_t i = 0; i < c.body.size(); ++i) out[i] ^= c.body[i];
  return out;
}

// ---------------------------------------------------------------------------

SigKeyPair SigKeyGen(Rng& rng) {
  EnsureSodium();
  auto seed = rng.DrawArray<crypto_sign_SEEDBYTES>();
  SigKeyPair kp;
  crypto_sign_seed_keypair(kp.pk.data(), kp.sk.data(), seed.data());
  sodium_memzero(seed.data(), seed.size());
  return kp;
}

Signature Sign(const SigKeyPair& kp, ByteView message) {
  EnsureSodium();
  Signature sig{};
  crypto_sign_detached(sig.data(), nullptr, message.data(), message.size(),
                       kp.sk.data());
  return sig;
}

bool Verify(const VerifyKey& pk, ByteView message, ByteView signature) {
  EnsureSodium();
  if (signature.size() != kSignatureSize) return false;
  return crypto_sign_verify_detached(signature.data(), message.data(),
                                     message.size(), pk.data()) == 0;
}

// ---------------------------------------------------------------------------

Bytes Scalar::ToBigEndian() const { return Bytes(le.rbegin(), le.rend()); }

Scalar Scalar::FromBigEndian(ByteView be) {
  if (be.size() != kScalarSize) {
    throw Error(ErrorCode::kMalformed, "scalar must be 32 bytes");
  }
  Scalar s;
  std::reverse_copy(be.begin(), be.end(), s.le.begin());
  return s;
}

bool GroupElement::IsValid() const {
  EnsureSodium();
  return crypto_core_ristretto255_is_valid_point(bytes.data()) == 1 &&
         !sodium_is_zero(bytes.data(), bytes.size());
}

DhKeyPair DhGen(Rng& rng) {
  EnsureSodium();
  DhKeyPair kp;
  do {
    auto wide = rng.DrawArray<crypto_core_ristretto255_NONREDUCEDSCALARBYTES>();
    crypto_core_ristretto255_scalar_reduce(kp.sk.le.data(), wide.data());
  } while (sodium_is_zero(kp.sk.le.data(), kp.sk.le.size()));
  kp.pk = DhPublic(kp.sk);
  return kp;
}

GroupElement DhPublic(const Scalar& sk) {
  EnsureSodium();
  GroupElement pk;
  if (crypto_scalarmult_ristretto255_base(pk.bytes.data(), sk.le.data()) != 0) {
    throw Error(ErrorCode::kInvalidPoint, "scalar maps to the identity");
  }
  return pk;
}

Bytes DhShared(const Scalar& sk, const GroupElement& pk_other,
               uint32_t ell_bits) {
  if (!pk_other.IsValid()) {
    throw Error(ErrorCode::kInvalidPoint, "peer key is not a group element");
  }
  std::array<uint8_t, kGroupElementSize> shared{};
  if (crypto_scalarmult_ristretto255(shared.data(), sk.le.data(),
                                     pk_other.bytes.data()) != 0) {
    throw Error(ErrorCode::kInvalidPoint, "shared point is the identity");
  }
  Bytes out = RoExpand(shared, ell_bits);
  sodium_memzero(shared.data(), shared.size());
  return out;
}

SymKey SymKeyFromMaterial(ByteView material) {
  if (material.size() < kSymKeySize) {
    throw Error(ErrorCode::kInvalidLength, "key material shorter than a key");
  }
  SymKey k;
  std::copy_n(material.begin(), kSymKeySize, k.bytes.begin());
  return k;
}

}  // namespace afe
