#pragma once

#include <optional>
#include <string>
#include <utility>

#include "afe/assets.h"
#include "afe/chain.h"
#include "afe/crypto.h"
#include "afe/offstore.h"
#include "afe/proofs.h"
#include "afe/rng.h"

namespace afe {

// prm = (ck, crs).
struct Params {
  CommitKey ck;
  Crs crs;

  Bytes Serialize() const;
  static Params Parse(ByteView in);
  friend bool operator==(const Params&, const Params&) = default;
};

struct SetupResult {
  Params params;
  ProverHandle prover;  // handed to the seller role only
};

SetupResult Setup(uint64_t seed, const PreviewFnSpec& spec = PreviewFnSpec::Identity());
SetupResult Setup(Rng& rng, const PreviewFnSpec& spec);

// V_A: accept a locked token set iff it holds exactly the price.
struct VaSpec {
  uint64_t tk_thr = 0;

  bool Accepts(size_t k) const { return k == tk_thr; }
  bool Accepts(const TokenSet& tokens) const { return Accepts(tokens.size()); }
  friend bool operator==(const VaSpec&, const VaSpec&) = default;
};

// V_B parameters: the key commitment to check against and the size of the
// DH key material. The deadline comes from the listing's t_comp.
struct VbSpec {
  CommitKey ck;
  Commitment c_k;
  uint32_t shared_key_bits = kSharedKeyBits;
  friend bool operator==(const VbSpec&, const VbSpec&) = default;
};

std::pair<VaSpec, VbSpec> DefineVerAlg(uint64_t tk_thr, const CommitKey& ck,
                                       const Commitment& c_k);

// a_prv = k_a || r, 64 bytes with no delimiter.
struct AdvertPrivate {
  SymKey k_a;
  Randomness r{};

  Bytes Serialize() const;
  // Returns nullopt unless `in` is exactly 64 bytes.
  static std::optional<AdvertPrivate> Parse(ByteView in);
  friend bool operator==(const AdvertPrivate&, const AdvertPrivate&) = default;
};

// a_pub = (x, pi, V_A, V_B). The blob layout is
// Field(x) || Field(pi) || Field(parameter block).
struct AdvertPublic {
  Statement statement;
  Proof proof;
  VaSpec va;
  VbSpec vb;

  Bytes Serialize() const;
  static AdvertPublic Parse(ByteView in);
  friend bool operator==(const AdvertPublic&, const AdvertPublic&) = default;
};

struct AdvertiseOptions {
  // Embed a tag naming the listing the advert will be minted under.
  bool bind_listing = false;
};

struct Advertisement {
  AdvertPrivate prv;
  AdvertPublic pub;
  Digest apub_ptr;
  ListingId listing = 0;
};

// Listing binding tag for listing `id` on the chain labelled `chain_label`.
Bytes ListingBindingTag(std::string_view chain_label, ListingId id);

// Builds (a_prv, a_pub) without publishing anything. `context` is the
// optional listing binding tag.
std::pair<AdvertPrivate, AdvertPublic> MakeAdvert(const Params& prm,
                                                  const ProverHandle& prover,
                                                  const Asset& asset, uint64_t tk_thr,
                                                  Rng& rng, ByteView context = {});

// Full advertisement: builds the advert, puts a_pub off-chain, and mints a
// listing holding only (ck, c_k, tk_thr, pointer).
Advertisement Advertise(const Params& prm, const ProverHandle& prover,
                        const Asset& asset, uint64_t tk_thr, Chain& chain,
                        BlobStore& store, const PartyId& seller, Rng& rng,
                        AdvertiseOptions options = {});

struct Evaluation {
  bool ok = false;
  std::string reason;
  std::optional<AdvertPublic> advert;
};

// Buyer-side check of a listing before bidding.
Evaluation BuyerEvaluate(const Params& prm, const BlobStore& store, const Chain& chain,
                         ListingId listing);

// Decrypts a_enc with k_a and returns the authenticated asset. Throws
// kCorruptAsset when the plaintext does not split or the signature fails.
Asset RecoverAsset(const Ciphertext& a_enc, const SymKey& k_a, const VerifyKey& pk);

// --- messages the engines hand to the scheduler -----------------------------

struct BidMessage {
  ListingId listing = 0;
  GroupElement pk_b;
  TokenSet tokens;
  ClockTime t_comp = 0;
  ClockTime t_final = 0;
};

struct AcceptMessage {
  ListingId listing = 0;
  GroupElement pk_a;
  Ciphertext e_k;
};

struct ConfirmMessage {
  ListingId listing = 0;
};

struct ComplainMessage {
  ListingId listing = 0;
  Scalar sk_b;
};

void Submit(Chain& chain, const PartyId& from, const BidMessage& m);
void Submit(Chain& chain, const PartyId& from, const AcceptMessage& m);
void Submit(Chain& chain, const PartyId& from, const ConfirmMessage& m);
ComplaintOutcome Submit(Chain& chain, const PartyId& from, const ComplainMessage& m);

// Seller half of the key delivery: fresh ephemeral key, k_AB from pk_B, and
// e_k = Enc(k_AB, payload). Honest sellers pass a_prv as the payload.
struct KeyDelivery {
  AcceptMessage message;
  SymKey k_ab;
};
KeyDelivery DeliverKey(ListingId listing, const GroupElement& pk_b, ByteView payload,
                       Rng& rng);

class SellerEngine {
 public:
  SellerEngine(PartyId self, AdvertPrivate prv, AdvertPublic pub, Rng rng);

  const PartyId& self() const { return self_; }

  // nullopt is the seller's bottom output: the locked tokens fail V_A and
  // nothing is sent.
  std::optional<AcceptMessage> Respond(const Chain& chain, ListingId listing);

  bool aborted() const { return aborted_; }
  const std::optional<SymKey>& shared_key() const { return k_ab_; }

 private:
  PartyId self_;
  AdvertPrivate prv_;
  AdvertPublic pub_;
  Rng rng_;
  bool aborted_ = false;
  std::optional<SymKey> k_ab_;
};

enum class BuyerDecision { kConfirm, kComplain, kWait };
std::string_view BuyerDecisionName(BuyerDecision d);

class BuyerEngine {
 public:
  BuyerEngine(PartyId self, Params params, Rng rng);

  const PartyId& self() const { return self_; }

  Evaluation Evaluate(const Chain& chain, const BlobStore& store, ListingId listing);

  // Throws kPolicy unless Evaluate accepted this listing, and
  // kInsufficientTokens unless the wallet owns `tokens`.
  BidMessage MakeBid(const Chain& chain, ListingId listing, const TokenSet& tokens,
                     ClockTime t_comp, ClockTime t_final);

  // V_B against the current chain state.
  BuyerDecision Finalize(const Chain& chain, ListingId listing);

  ConfirmMessage ConfirmMsg() const;
  ComplainMessage ComplainMsg() const;

  // Available after Finalize returned kConfirm.
  Asset Recover() const;

  const std::optional<DhKeyPair>& ephemeral() const { return eph_; }
  const std::optional<SymKey>& shared_key() const { return k_ab_; }
  const std::optional<AdvertPrivate>& opened() const { return opened_; }

 private:
  PartyId self_;
  Params params_;
  Rng rng_;
  std::optional<ListingId> listing_;
  std::optional<AdvertPublic> advert_;
  std::optional<DhKeyPair> eph_;
  std::optional<SymKey> k_ab_;
  std::optional<AdvertPrivate> opened_;
};

}  // namespace afe
