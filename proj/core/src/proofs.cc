#include "afe/proofs.h"

#include <sodium.h>

#include "afe/error.h"

namespace afe {
namespace {

constexpr std::string_view kProofDomain = "afe/proof/v1";

Bytes SignedMessage(const Crs& crs, const Statement& x) {
  Writer w;
  w.Field(kProofDomain).Field(crs.Serialize()).Field(x.Serialize());
  return std::move(w).bytes();
}

}  // namespace

Bytes Statement::Serialize() const {
  Writer w;
  w.Field(a_enc.Serialize())
      .Field(preview.body)
      .Field(preview.pk)
      .Field(c_k.bytes)
      .Field(ck.Serialize())
      .Field(context);
  return std::move(w).bytes();
}

Statement Statement::Parse(ByteView in) {
  Reader r(in);
  Statement x;
  x.a_enc = Ciphertext::Parse(r.Field());
  x.preview.body = r.Field();
  x.preview.pk = r.FixedField<kVerifyKeySize>();
  x.c_k.bytes = r.Field();
  x.ck = CommitKey::Parse(r.Field());
  x.context = r.Field();
  r.ExpectDone();
  return x;
}

Bytes Crs::Serialize() const {
  Writer w;
  w.Field(backend_id).Field(spec.Serialize()).Field(verification_key);
  return std::move(w).bytes();
}

Crs Crs::Parse(ByteView in) {
  Reader r(in);
  Crs crs;
  crs.backend_id = r.FieldString();
  crs.spec = PreviewFnSpec::Parse(r.Field());
  crs.verification_key = r.FixedField<kVerifyKeySize>();
  r.ExpectDone();
  if (crs.backend_id != kOracleBackendId) {
    throw Error(ErrorCode::kMalformed, "unknown proof backend '" + crs.backend_id + "'");
  }
  return crs;
}

Bytes EncodeAssetPlaintext(ByteView a, const Signature& sigma) {
  if (a.size() > UINT32_MAX) throw Error(ErrorCode::kInvalidLength, "asset too large");
  Writer w;
  w.U32(static_cast<uint32_t>(a.size())).Raw(a).Raw(sigma);
  return std::move(w).bytes();
}

bool DecodeAssetPlaintext(ByteView plaintext, Bytes& a, Signature& sigma) {
  if (plaintext.size() < 4 + kSignatureSize) return false;
  Reader r(plaintext);
  const uint32_t len = r.U32();
  if (r.remaining() != size_t(len) + kSignatureSize) return false;
  a = r.Raw(len);
  Bytes sig = r.Raw(kSignatureSize);
  std::copy(sig.begin(), sig.end(), sigma.begin());
  return true;
}

bool RelationCheck(const Statement& x, const Witness& w, const PreviewFnSpec& spec) {
  try {
    const Bytes plaintext = SymDecrypt(w.k_a, x.a_enc);
    Bytes a;
    Signature sigma{};
    if (!DecodeAssetPlaintext(plaintext, a, sigma)) return false;
    if (!Verify(x.preview.pk, a, sigma)) return false;
    if (PreviewBody(spec, a) != x.preview.body) return false;
    return Open(x.ck, x.c_k, w.k_a.bytes, w.r);
  } catch (const Error&) {
    return false;
  }
}

ProverHandle::ProverHandle(Crs crs, const SigKeyPair& key)
    : crs_(std::move(crs)), key_(std::make_unique<SigKeyPair>(key)) {}

ProverHandle::~ProverHandle() {
  if (key_) sodium_memzero(key_->sk.data(), key_->sk.size());
}

Proof ProverHandle::Prove(const Statement& x, const Witness& w) const {
  if (!key_) throw Error(ErrorCode::kInvalidArgument, "moved-from prover handle");
  if (!RelationCheck(x, w, crs_.spec)) {
    throw Error(ErrorCode::kInvalidWitness, "witness does not satisfy the relation");
  }
  const Signature sig = Sign(*key_, SignedMessage(crs_, x));
  return Proof{Bytes(sig.begin(), sig.end())};
}

ProofSetupResult ProofSetup(const PreviewFnSpec& spec, Rng& rng) {
  const SigKeyPair key = SigKeyGen(rng);
  Crs crs;
  crs.spec = spec;
  crs.verification_key = key.pk;
  return ProofSetupResult{crs, ProverHandle(crs, key)};
}

bool VerifyProof(const Crs& crs, const Statement& x, const Proof& pi) {
  if (crs.backend_id != kOracleBackendId) return false;
  return Verify(crs.verification_key, SignedMessage(crs, x), pi.bytes);
}

SimulatedSetup SimulateSetup(const PreviewFnSpec& spec, Rng& rng) {
  SimulatedSetup sim;
  sim.trapdoor = SigKeyGen(rng);
  sim.crs.spec = spec;
  sim.crs.verification_key = sim.trapdoor.pk;
  return sim;
}

Proof SimulateProof(const SimulatedSetup& sim, const Statement& x) {
  const Signature sig = Sign(sim.trapdoor, SignedMessage(sim.crs, x));
  return Proof{Bytes(sig.begin(), sig.end())};
}

}  // namespace afe
