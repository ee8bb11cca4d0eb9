#pragma once

#include <memory>
#include <string>

#include "afe/assets.h"
#include "afe/bytes.h"
#include "afe/crypto.h"
#include "afe/rng.h"

namespace afe {

// x = (a_enc, a_p, c_k, ck), plus an optional context tag binding the
// statement to one listing. An empty context means "unbound".
struct Statement {
  Ciphertext a_enc;
  Preview preview;
  Commitment c_k;
  CommitKey ck;
  Bytes context;

  // Length-prefixed (a_enc, preview.body, preview.pk, c_k, ck, context).
  Bytes Serialize() const;
  static Statement Parse(ByteView in);
  friend bool operator==(const Statement&, const Statement&) = default;
};

// w = (k_a, r).
struct Witness {
  SymKey k_a;
  Randomness r{};
};

inline constexpr std::string_view kOracleBackendId = "oracle-signed-v1";

struct Crs {
  std::string backend_id{kOracleBackendId};
  PreviewFnSpec spec;
  VerifyKey verification_key{};

  Bytes Serialize() const;
  static Crs Parse(ByteView in);
  friend bool operator==(const Crs&, const Crs&) = default;
};

struct Proof {
  Bytes bytes;
  friend bool operator==(const Proof&, const Proof&) = default;
};

// (a || sigma) plaintext layout inside a_enc: u32 big-endian |a|, a, sigma.
Bytes EncodeAssetPlaintext(ByteView a, const Signature& sigma);
// Returns false when the layout does not parse.
bool DecodeAssetPlaintext(ByteView plaintext, Bytes& a, Signature& sigma);

// All four clauses of the advertised relation. Never throws.
bool RelationCheck(const Statement& x, const Witness& w, const PreviewFnSpec& spec);

struct ProofSetupResult;

// Proving capability of the reference backend: a trusted oracle that checks
// the relation and signs the statement. Only the seller role holds one.
class ProverHandle {
 public:
  ProverHandle(ProverHandle&&) noexcept = default;
  ProverHandle& operator=(ProverHandle&&) noexcept = default;
  ProverHandle(const ProverHandle&) = delete;
  ProverHandle& operator=(const ProverHandle&) = delete;
  ~ProverHandle();

  const Crs& crs() const { return crs_; }

  // Throws kInvalidWitness when RelationCheck fails.
  Proof Prove(const Statement& x, const Witness& w) const;

 private:
  friend ProofSetupResult ProofSetup(const PreviewFnSpec& spec, Rng& rng);
  ProverHandle(Crs crs, const SigKeyPair& key);

  Crs crs_;
  std::unique_ptr<SigKeyPair> key_;
};

struct ProofSetupResult {
  Crs crs;
  ProverHandle prover;
};

ProofSetupResult ProofSetup(const PreviewFnSpec& spec, Rng& rng);

bool VerifyProof(const Crs& crs, const Statement& x, const Proof& pi);

// Simulation trapdoor: setup that also returns the capability to produce
// accepting proofs for any statement, with no witness. Only the fairness
// simulator uses it.
struct SimulatedSetup {
  Crs crs;
  SigKeyPair trapdoor;
};

SimulatedSetup SimulateSetup(const PreviewFnSpec& spec, Rng& rng);
Proof SimulateProof(const SimulatedSetup& sim, const Statement& x);

}  // namespace afe
