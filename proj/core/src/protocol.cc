#include "afe/protocol.h"

#include "afe/error.h"

namespace afe {

// ---------------------------------------------------------------------------
// Setup and parameter types

Bytes Params::Serialize() const {
  Writer w;
  w.Field(ck.Serialize()).Field(crs.Serialize());
  return std::move(w).bytes();
}

Params Params::Parse(ByteView in) {
  Reader r(in);
  Params p;
  p.ck = CommitKey::Parse(r.Field());
  p.crs = Crs::Parse(r.Field());
  r.ExpectDone();
  return p;
}

SetupResult Setup(Rng& rng, const PreviewFnSpec& spec) {
  Rng ck_rng = rng.Fork("setup/ck");
  Rng crs_rng = rng.Fork("setup/crs");
  CommitKey ck = CommitKeyGen(ck_rng);
  ProofSetupResult proof = ProofSetup(spec, crs_rng);
  return SetupResult{Params{std::move(ck), proof.crs}, std::move(proof.prover)};
}

SetupResult Setup(uint64_t seed, const PreviewFnSpec& spec) {
  Rng rng(seed);
  return Setup(rng, spec);
}

std::pair<VaSpec, VbSpec> DefineVerAlg(uint64_t tk_thr, const CommitKey& ck,
                                       const Commitment& c_k) {
  if (tk_thr == 0) throw Error(ErrorCode::kInvalidArgument, "price must be at least 1");
  return {VaSpec{tk_thr}, VbSpec{ck, c_k, kSharedKeyBits}};
}

Bytes AdvertPrivate::Serialize() const { return Concat({k_a.bytes, r}); }

std::optional<AdvertPrivate> AdvertPrivate::Parse(ByteView in) {
  if (in.size() != kSymKeySize + kRandomnessSize) return std::nullopt;
  AdvertPrivate prv;
  std::copy_n(in.begin(), kSymKeySize, prv.k_a.bytes.begin());
  std::copy(in.begin() + kSymKeySize, in.end(), prv.r.begin());
  return prv;
}

Bytes AdvertPublic::Serialize() const {
  Writer params;
  params.U64(va.tk_thr).Field(vb.ck.Serialize()).Field(vb.c_k.bytes).U32(vb.shared_key_bits);
  Writer w;
  w.Field(statement.Serialize()).Field(proof.bytes).Field(params.bytes());
  return std::move(w).bytes();
}

AdvertPublic AdvertPublic::Parse(ByteView in) {
  Reader r(in);
  AdvertPublic pub;
  pub.statement = Statement::Parse(r.Field());
  pub.proof.bytes = r.Field();
  const Bytes block = r.Field();
  r.ExpectDone();
  Reader pr(block);
  pub.va.tk_thr = pr.U64();
  pub.vb.ck = CommitKey::Parse(pr.Field());
  pub.vb.c_k.bytes = pr.Field();
  pub.vb.shared_key_bits = pr.U32();
  pr.ExpectDone();
  return pub;
}

// ---------------------------------------------------------------------------
// Advertise

Bytes ListingBindingTag(std::string_view chain_label, ListingId id) {
  Writer w;
  w.Field("afe/listing-binding").Field(chain_label).U64(id);
  const Digest d = Hash(w.bytes());
  return Bytes(d.bytes.begin(), d.bytes.end());
}

std::pair<AdvertPrivate, AdvertPublic> MakeAdvert(const Params& prm,
                                                  const ProverHandle& prover,
                                                  const Asset& asset, uint64_t tk_thr,
                                                  Rng& rng, ByteView context) {
  if (tk_thr == 0) throw Error(ErrorCode::kInvalidArgument, "price must be at least 1");
  if (!asset.WellFormed()) {
    throw Error(ErrorCode::kMalformedAsset, "asset signature does not verify");
  }
  Statement x;
  x.preview = ApplyPreview(prm.crs.spec, asset);
  AdvertPrivate prv;
  prv.k_a = SymKeyGen(rng);
  x.a_enc = SymEncrypt(prv.k_a, EncodeAssetPlaintext(asset.a, asset.sigma),
                       rng.DrawArray<kNonceSize>());
  prv.r = rng.DrawArray<kRandomnessSize>();
  x.ck = prm.ck;
  x.c_k = Commit(prm.ck, prv.k_a.bytes, prv.r);
  x.context.assign(context.begin(), context.end());

  AdvertPublic pub;
  pub.proof = prover.Prove(x, Witness{prv.k_a, prv.r});
  std::tie(pub.va, pub.vb) = DefineVerAlg(tk_thr, x.ck, x.c_k);
  pub.statement = std::move(x);
  return {prv, std::move(pub)};
}

Advertisement Advertise(const Params& prm, const ProverHandle& prover,
                        const Asset& asset, uint64_t tk_thr, Chain& chain,
                        BlobStore& store, const PartyId& seller, Rng& rng,
                        AdvertiseOptions options) {
  Bytes context;
  const ListingId expected = chain.NextListingId();
  if (options.bind_listing) context = ListingBindingTag(chain.label(), expected);

  auto [prv, pub] = MakeAdvert(prm, prover, asset, tk_thr, rng, context);
  Advertisement out;
  out.apub_ptr = store.Put(pub.Serialize());
  out.listing = chain.MintListing(seller, tk_thr, pub.statement.ck, pub.statement.c_k,
                                  out.apub_ptr);
  if (options.bind_listing && out.listing != expected) {
    throw Error(ErrorCode::kWrongState, "listing id changed while advertising");
  }
  out.prv = prv;
  out.pub = std::move(pub);
  return out;
}

Evaluation BuyerEvaluate(const Params& prm, const BlobStore& store, const Chain& chain,
                         ListingId listing_id) {
  Evaluation ev;
  Listing listing;
  try {
    listing = chain.ListingOf(listing_id);
  } catch (const Error& e) {
    ev.reason = e.what();
    return ev;
  }
  AdvertPublic pub;
  try {
    pub = AdvertPublic::Parse(store.Get(listing.apub_ptr));
  } catch (const Error& e) {
    ev.reason = e.what();
    return ev;
  }
  const Statement& x = pub.statement;
  if (!(x.ck == prm.ck)) {
    ev.reason = "advert uses a foreign commitment key";
  } else if (!VerifyProof(prm.crs, x, pub.proof)) {
    ev.reason = "proof does not verify";
  } else if (!(listing.ck == x.ck) || !(listing.c_k == x.c_k)) {
    ev.reason = "on-chain commitment differs from the advertised statement";
  } else if (listing.tk_thr != pub.va.tk_thr) {
    ev.reason = "on-chain price differs from V_A";
  } else if (!(pub.vb.ck == x.ck) || !(pub.vb.c_k == x.c_k) ||
             pub.vb.shared_key_bits != kSharedKeyBits) {
    ev.reason = "V_B does not check the advertised commitment";
  } else if (!x.context.empty() &&
             x.context != ListingBindingTag(chain.label(), listing_id)) {
    ev.reason = "advert is bound to a different listing";
  } else {
    ev.ok = true;
  }
  ev.advert = std::move(pub);
  return ev;
}

Asset RecoverAsset(const Ciphertext& a_enc, const SymKey& k_a, const VerifyKey& pk) {
  Asset asset;
  asset.pk = pk;
  if (!DecodeAssetPlaintext(SymDecrypt(k_a, a_enc), asset.a, asset.sigma)) {
    throw Error(ErrorCode::kCorruptAsset, "plaintext does not split into (a, sigma)");
  }
  if (!asset.WellFormed()) {
    throw Error(ErrorCode::kCorruptAsset, "recovered asset signature does not verify");
  }
  return asset;
}

// ---------------------------------------------------------------------------
// Messages

void Submit(Chain& chain, const PartyId& from, const BidMessage& m) {
  chain.Bid(m.listing, from, m.pk_b, m.tokens, m.t_comp, m.t_final);
}

void Submit(Chain& chain, const PartyId& from, const AcceptMessage& m) {
  chain.Accept(m.listing, from, m.pk_a, m.e_k);
}

void Submit(Chain& chain, const PartyId& from, const ConfirmMessage& m) {
  chain.Confirm(m.listing, from);
}

ComplaintOutcome Submit(Chain& chain, const PartyId& from, const ComplainMessage& m) {
  return chain.Complain(m.listing, from, m.sk_b);
}

KeyDelivery DeliverKey(ListingId listing, const GroupElement& pk_b, ByteView payload,
                       Rng& rng) {
  const DhKeyPair eph = DhGen(rng);
  KeyDelivery out;
  out.k_ab = SymKeyFromMaterial(DhShared(eph.sk, pk_b));
  out.message.listing = listing;
  out.message.pk_a = eph.pk;
  out.message.e_k = SymEncrypt(out.k_ab, payload, rng.DrawArray<kNonceSize>());
  return out;
}

// ---------------------------------------------------------------------------
// Seller

SellerEngine::SellerEngine(PartyId self, AdvertPrivate prv, AdvertPublic pub, Rng rng)
    : self_(std::move(self)), prv_(prv), pub_(std::move(pub)), rng_(std::move(rng)) {}

std::optional<AcceptMessage> SellerEngine::Respond(const Chain& chain, ListingId id) {
  const Listing listing = chain.ListingOf(id);
  if (listing.state != ListingState::kBid) {
    throw Error(ErrorCode::kWrongState, "seller responds only to a pending bid");
  }
  const Escrow escrow = chain.EscrowOf(*listing.escrow);
  if (!pub_.va.Accepts(escrow.tokens)) {
    aborted_ = true;
    return std::nullopt;
  }
  KeyDelivery d = DeliverKey(id, *listing.pk_b, prv_.Serialize(), rng_);
  k_ab_ = d.k_ab;
  return d.message;
}

// ---------------------------------------------------------------------------
// Buyer

std::string_view BuyerDecisionName(BuyerDecision d) {
  switch (d) {
    case BuyerDecision::kConfirm: return "confirm";
    case BuyerDecision::kComplain: return "complain";
    case BuyerDecision::kWait: return "wait";
  }
  return "?";
}

BuyerEngine::BuyerEngine(PartyId self, Params params, Rng rng)
    : self_(std::move(self)), params_(std::move(params)), rng_(std::move(rng)) {}

Evaluation BuyerEngine::Evaluate(const Chain& chain, const BlobStore& store,
                                 ListingId listing) {
  Evaluation ev = BuyerEvaluate(params_, store, chain, listing);
  if (ev.ok) {
    listing_ = listing;
    advert_ = ev.advert;
  }
  return ev;
}

BidMessage BuyerEngine::MakeBid(const Chain& chain, ListingId listing,
                                const TokenSet& tokens, ClockTime t_comp,
                                ClockTime t_final) {
  if (!listing_ || *listing_ != listing) {
    throw Error(ErrorCode::kPolicy, "honest buyer bids only on an evaluated listing");
  }
  if (!Owner(tokens, chain.WalletOf(self_))) {
    throw Error(ErrorCode::kInsufficientTokens, "wallet does not own the offered tokens");
  }
  eph_ = DhGen(rng_);
  return BidMessage{listing, eph_->pk, tokens, t_comp, t_final};
}

BuyerDecision BuyerEngine::Finalize(const Chain& chain, ListingId id) {
  if (!eph_ || !advert_) throw Error(ErrorCode::kPolicy, "finalize before bidding");
  const Listing listing = chain.ListingOf(id);
  if (listing.state != ListingState::kBid && listing.state != ListingState::kKeyPosted) {
    throw Error(ErrorCode::kWrongState,
                "finalize in state " + std::string(ListingStateName(listing.state)));
  }
  if (!listing.e_k) {
    return chain.Now() <= listing.t_comp ? BuyerDecision::kWait : BuyerDecision::kComplain;
  }
  k_ab_ = SymKeyFromMaterial(DhShared(eph_->sk, *listing.pk_a, advert_->vb.shared_key_bits));
  const auto opened = AdvertPrivate::Parse(SymDecrypt(*k_ab_, *listing.e_k));
  if (!opened || !Open(advert_->vb.ck, advert_->vb.c_k, opened->k_a.bytes, opened->r)) {
    return BuyerDecision::kComplain;
  }
  opened_ = opened;
  return BuyerDecision::kConfirm;
}

ConfirmMessage BuyerEngine::ConfirmMsg() const {
  if (!listing_) throw Error(ErrorCode::kPolicy, "no listing to confirm");
  return ConfirmMessage{*listing_};
}

ComplainMessage BuyerEngine::ComplainMsg() const {
  if (!listing_ || !eph_) throw Error(ErrorCode::kPolicy, "no bid to complain about");
  return ComplainMessage{*listing_, eph_->sk};
}

Asset BuyerEngine::Recover() const {
  if (!opened_ || !advert_) throw Error(ErrorCode::kPolicy, "asset key not yet obtained");
  return RecoverAsset(advert_->statement.a_enc, opened_->k_a, advert_->statement.preview.pk);
}

}  // namespace afe
