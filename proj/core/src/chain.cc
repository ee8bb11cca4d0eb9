#include "afe/chain.h"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <mutex>
#include <numeric>

#include "afe/error.h"
#include "json.hpp"

namespace afe {

// ---------------------------------------------------------------------------
// TokenSet

void TokenSet::Insert(TokenId id) {
  if (!ids_.insert(id).second) {
    throw Error(ErrorCode::kInvalidArgument,
                "duplicate token id " + std::to_string(id));
  }
}

void TokenSet::Erase(TokenId id) { ids_.erase(id); }

TokenSet TokenSet::Take(size_t n) const {
  if (n > ids_.size()) {
    throw Error(ErrorCode::kInsufficientTokens,
                "need " + std::to_string(n) + " tokens, hold " +
                    std::to_string(ids_.size()));
  }
  std::set<TokenId> out;
  auto it = ids_.begin();
  for (size_t i = 0; i < n; ++i, ++it) out.insert(*it);
  return TokenSet(std::move(out));
}

bool Owner(const TokenSet& tokens, const Wallet& wallet) {
  return std::all_of(tokens.ids().begin(), tokens.ids().end(),
                     [&](TokenId id) { return wallet.tokens.Contains(id); });
}

// ---------------------------------------------------------------------------
// Names

std::string_view ListingStateName(ListingState s) {
  switch (s) {
    case ListingState::kListed: return "Listed";
    case ListingState::kBid: return "Bid";
    case ListingState::kKeyPosted: return "KeyPosted";
    case ListingState::kConfirmed: return "Confirmed";
    case ListingState::kRefunded: return "Refunded";
    case ListingState::kSettled: return "Settled";
  }
  return "?";
}

ListingState ParseListingState(std::string_view name) {
  for (auto s : {ListingState::kListed, ListingState::kBid, ListingState::kKeyPosted,
                 ListingState::kConfirmed, ListingState::kRefunded,
                 ListingState::kSettled}) {
    if (ListingStateName(s) == name) return s;
  }
  throw Error(ErrorCode::kConfig, "unknown listing state '" + std::string(name) + "'");
}

std::string_view ComplaintOutcomeName(ComplaintOutcome o) {
  switch (o) {
    case ComplaintOutcome::kTimeoutRefund: return "timeout_refund";
    case ComplaintOutcome::kWrongKeyNoOp: return "wrong_key_noop";
    case ComplaintOutcome::kBadCommitmentRefund: return "bad_commitment_refund";
    case ComplaintOutcome::kRejected: return "rejected";
  }
  return "?";
}

ComplaintOutcome ParseComplaintOutcome(std::string_view name) {
  for (auto o : {ComplaintOutcome::kTimeoutRefund, ComplaintOutcome::kWrongKeyNoOp,
                 ComplaintOutcome::kBadCommitmentRefund, ComplaintOutcome::kRejected}) {
    if (ComplaintOutcomeName(o) == name) return o;
  }
  throw Error(ErrorCode::kConfig,
              "unknown complaint outcome '" + std::string(name) + "'");
}

const std::vector<std::string>& CostReportRows() {
  static const std::vector<std::string> rows = {
      std::string(ops::kDeployment), std::string(ops::kMint),
      std::string(ops::kBid),        std::string(ops::kAccept),
      std::string(ops::kConfirm),    std::string(ops::kComplain)};
  return rows;
}

// ---------------------------------------------------------------------------
// CostModel

CostModel CostModel::Default() {
  CostModel m;
  m.Set(std::string(ops::kDeployment), 281);
  m.Set(std::string(ops::kMint), 26);
  m.Set(std::string(ops::kBid), 16);
  m.Set(std::string(ops::kAccept), 33);
  m.Set(std::string(ops::kConfirm), 6);
  m.Set(std::string(ops::kComplain), 163);
  return m;
}

CostModel CostModel::Parse(std::string_view yaml_text) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(yaml_text));
  } catch (const YAML::Exception& e) {
    throw Error(ErrorCode::kConfig, std::string("cost model: ") + e.what());
  }
  if (!root.IsMap()) throw Error(ErrorCode::kConfig, "cost model must be a mapping");
  CostModel m;
  for (const auto& kv : root) {
    long long v = 0;
    try {
      v = kv.second.as<long long>();
    } catch (const YAML::Exception&) {
      throw Error(ErrorCode::kConfig, "cost for '" + kv.first.as<std::string>() +
                                          "' is not an integer");
    }
    if (v < 0) throw Error(ErrorCode::kConfig, "negative cost units");
    m.Set(kv.first.as<std::string>(), static_cast<uint64_t>(v));
  }
  m.Validate();
  return m;
}

uint64_t CostModel::Cost(std::string_view op) const {
  auto it = units_.find(op);
  return it == units_.end() ? 0 : it->second;
}

void CostModel::Set(std::string op, uint64_t units) { units_[std::move(op)] = units; }

void CostModel::Validate() const {
  if (Cost(ops::kComplain) <= Cost(ops::kConfirm)) {
    throw Error(ErrorCode::kConfig, "complain must cost strictly more than confirm");
  }
}

uint64_t CostModel::ConfirmPathTotal() const {
  return Cost(ops::kMint) + Cost(ops::kBid) + Cost(ops::kAccept) + Cost(ops::kConfirm);
}

// ---------------------------------------------------------------------------
// Payload codecs

Bytes EncodeMint(const MintRecord& r) {
  Writer w;
  w.U64(r.listing).U64(r.tk_thr).Field(r.ck.Serialize()).Field(r.c_k.bytes)
      .Field(r.apub_ptr.bytes);
  return std::move(w).bytes();
}

MintRecord DecodeMint(ByteView in) {
  Reader rd(in);
  MintRecord r;
  r.listing = rd.U64();
  r.tk_thr = rd.U64();
  r.ck = CommitKey::Parse(rd.Field());
  r.c_k.bytes = rd.Field();
  r.apub_ptr.bytes = rd.FixedField<kDigestSize>();
  rd.ExpectDone();
  return r;
}

Bytes EncodeBid(const BidRecord& r) {
  Writer w;
  w.U64(r.listing).Field(r.pk_b.bytes).U64(r.n_tokens).U64(r.t_comp).U64(r.t_final);
  return std::move(w).bytes();
}

BidRecord DecodeBid(ByteView in) {
  Reader rd(in);
  BidRecord r;
  r.listing = rd.U64();
  r.pk_b.bytes = rd.FixedField<kGroupElementSize>();
  r.n_tokens = rd.U64();
  r.t_comp = rd.U64();
  r.t_final = rd.U64();
  rd.ExpectDone();
  return r;
}

Bytes EncodeAccept(const AcceptRecord& r) {
  Writer w;
  w.U64(r.listing).Field(r.pk_a.bytes).Field(r.e_k.Serialize());
  return std::move(w).bytes();
}

AcceptRecord DecodeAccept(ByteView in) {
  Reader rd(in);
  AcceptRecord r;
  r.listing = rd.U64();
  r.pk_a.bytes = rd.FixedField<kGroupElementSize>();
  r.e_k = Ciphertext::Parse(rd.Field());
  rd.ExpectDone();
  return r;
}

Bytes EncodeComplain(const ComplainRecord& r) {
  Writer w;
  w.U64(r.listing).Field(r.sk_b.ToBigEndian());
  return std::move(w).bytes();
}

ComplainRecord DecodeComplain(ByteView in) {
  Reader rd(in);
  ComplainRecord r;
  r.listing = rd.U64();
  r.sk_b = Scalar::FromBigEndian(rd.Field());
  rd.ExpectDone();
  return r;
}

namespace {

Bytes EncodeRelease(EscrowId escrow, std::optional<ListingId> listing, size_t n) {
  Writer w;
  w.U64(escrow).U64(listing.value_or(0)).U64(n);
  return std::move(w).bytes();
}

}  // namespace

// ---------------------------------------------------------------------------
// Arbiter

ComplaintOutcome Arbitrate(const ArbiterInput& in) {
  if (in.now > in.t_comp && !in.e_k.has_value()) {
    return ComplaintOutcome::kTimeoutRefund;
  }
  bool key_matches = false;
  try {
    key_matches = DhPublic(in.sk_b) == in.pk_b;
  } catch (const Error&) {
    key_matches = false;
  }
  if (!key_matches) return ComplaintOutcome::kWrongKeyNoOp;

  if (!in.e_k.has_value() || !in.pk_a.has_value()) {
    throw Error(ErrorCode::kTooEarly, "no key posted and complaint window still open");
  }
  const SymKey k_ab = SymKeyFromMaterial(DhShared(in.sk_b, *in.pk_a));
  const Bytes opened = SymDecrypt(k_ab, *in.e_k);
  if (opened.size() != kSymKeySize + kRandomnessSize) {
    return ComplaintOutcome::kBadCommitmentRefund;
  }
  Randomness r{};
  std::copy(opened.begin() + kSymKeySize, opened.end(), r.begin());
  const ByteView k_a(opened.data(), kSymKeySize);
  return Open(in.ck, in.c_k, k_a, r) ? ComplaintOutcome::kRejected
                                     : ComplaintOutcome::kBadCommitmentRefund;
}

ArbiterInput ArbiterInputFromTranscript(const std::vector<TranscriptEntry>& entries,
                                        uint64_t complaint_seq) {
  auto it = std::find_if(entries.begin(), entries.end(),
                         [&](const TranscriptEntry& e) { return e.seq == complaint_seq; });
  if (it == entries.end() || it->op_name != ops::kComplain) {
    throw Error(ErrorCode::kNotFound,
                "no complaint at sequence " + std::to_string(complaint_seq));
  }
  const ComplainRecord complaint = DecodeComplain(it->payload);
  ArbiterInput in;
  in.now = it->time;
  in.sk_b = complaint.sk_b;
  bool minted = false, bid = false;
  for (const auto& e : entries) {
    if (e.seq >= complaint_seq) break;
    if (e.op_name == ops::kMint) {
      MintRecord m = DecodeMint(e.payload);
      if (m.listing != complaint.listing) continue;
      in.ck = m.ck;
      in.c_k = m.c_k;
      minted = true;
    } else if (e.op_name == ops::kBid) {
      BidRecord b = DecodeBid(e.payload);
      if (b.listing != complaint.listing) continue;
      in.pk_b = b.pk_b;
      in.t_comp = b.t_comp;
      bid = true;
    } else if (e.op_name == ops::kAccept) {
      AcceptRecord a = DecodeAccept(e.payload);
      if (a.listing != complaint.listing) continue;
      in.pk_a = a.pk_a;
      in.e_k = a.e_k;
    }
  }
  if (!minted || !bid) {
    throw Error(ErrorCode::kMalformed, "transcript lacks the listing's mint or bid");
  }
  return in;
}

// ---------------------------------------------------------------------------
// Listing

size_t Listing::OnChainFootprint() const {
  size_t n = ck.Serialize().size() + c_k.bytes.size() + sizeof(tk_thr) +
             apub_ptr.bytes.size();
  if (pk_a) n += kGroupElementSize;
  if (pk_b) n += kGroupElementSize;
  if (e_k) n += e_k->size();
  return n;
}

// ---------------------------------------------------------------------------
// Chain

Chain::Chain(ChainOptions options) : options_(std::move(options)) {
  options_.costs.Validate();
  std::unique_lock lock(mu_);
  AppendLocked(kChainActor, ops::kDeployment, AsBytes(options_.chain_label));
}

ClockTime Chain::Now() const {
  std::shared_lock lock(mu_);
  return now_;
}

ClockTime Chain::Advance(uint64_t delta) {
  if (delta == 0) throw Error(ErrorCode::kInvalidArgument, "advance by zero ticks");
  std::unique_lock lock(mu_);
  now_ += delta;
  SettleDueLocked();
  return now_;
}

void Chain::SettleDueLocked() {
  for (auto& [id, e] : escrows_) {
    if (!e.open() || e.release_time > now_) continue;
    bool refund = false;
    if (e.listing) {
      Listing& l = ListingLocked(*e.listing);
      // No key was ever posted: the buyer gets the tokens back.
      if (l.state == ListingState::kBid) {
        refund = true;
        l.state = ListingState::kRefunded;
      } else if (l.state == ListingState::kKeyPosted) {
        l.state = ListingState::kSettled;
      }
    }
    ReleaseLocked(e, refund);
  }
}

void Chain::OpenWallet(const PartyId& party, const VerifyKey& owner_pk) {
  std::unique_lock lock(mu_);
  if (wallets_.count(party)) {
    throw Error(ErrorCode::kInvalidArgument, "wallet exists for " + party.name);
  }
  wallets_[party] = Wallet{party, owner_pk, {}};
}

TokenSet Chain::Issue(const PartyId& party, size_t n) {
  std::unique_lock lock(mu_);
  Wallet& w = WalletLocked(party);
  std::set<TokenId> ids;
  for (size_t i = 0; i < n; ++i) {
    const TokenId id = next_token_++;
    w.tokens.Insert(id);
    ids.insert(id);
  }
  Writer payload;
  payload.Field(party.name).U64(n);
  AppendLocked(kChainActor, ops::kIssue, payload.bytes());
  return TokenSet(std::move(ids));
}

Wallet Chain::WalletOf(const PartyId& party) const {
  std::shared_lock lock(mu_);
  auto it = wallets_.find(party);
  if (it == wallets_.end()) throw Error(ErrorCode::kNotFound, "no wallet for " + party.name);
  return it->second;
}

size_t Chain::Balance(const PartyId& party) const { return WalletOf(party).tokens.size(); }

size_t Chain::TotalSupply() const {
  std::shared_lock lock(mu_);
  return static_cast<size_t>(next_token_ - 1);
}

size_t Chain::EscrowedSupply() const {
  std::shared_lock lock(mu_);
  size_t n = 0;
  for (const auto& [id, e] : escrows_) {
    if (e.open()) n += e.tokens.size();
  }
  return n;
}

bool Chain::CheckConservation() const {
  std::shared_lock lock(mu_);
  std::map<TokenId, int> seen;
  for (const auto& [p, w] : wallets_) {
    for (TokenId id : w.tokens.ids()) ++seen[id];
  }
  for (const auto& [eid, e] : escrows_) {
    if (!e.open()) continue;
    for (TokenId id : e.tokens.ids()) ++seen[id];
  }
  if (seen.size() != next_token_ - 1) return false;
  return std::all_of(seen.begin(), seen.end(),
                     [](const auto& kv) { return kv.second == 1; });
}

TranscriptEntry Chain::Store(const PartyId& actor, ByteView message) {
  std::unique_lock lock(mu_);
  return AppendLocked(actor, ops::kStore, message);
}

std::vector<TranscriptEntry> Chain::Transcript() const {
  std::shared_lock lock(mu_);
  return transcript_;
}

TranscriptEntry Chain::AppendLocked(const PartyId& actor, std::string_view op,
                                    ByteView payload) {
  TranscriptEntry e;
  e.seq = transcript_.size();
  e.time = now_;
  e.actor = actor;
  e.op_name = std::string(op);
  e.payload.assign(payload.begin(), payload.end());
  e.payload_digest = Hash(payload);
  e.cost_units = options_.costs.Cost(op);
  transcript_.push_back(e);
  return e;
}

EscrowId Chain::TxLock(const PartyId& sender, const PartyId& receiver,
                       const TokenSet& tokens, ClockTime t_prime) {
  std::unique_lock lock(mu_);
  return LockLocked(sender, receiver, tokens, t_prime, std::nullopt);
}

EscrowId Chain::LockLocked(const PartyId& sender, const PartyId& receiver,
                           const TokenSet& tokens, ClockTime t_prime,
                           std::optional<ListingId> listing) {
  Wallet& from = WalletLocked(sender);
  WalletLocked(receiver);
  if (!Owner(tokens, from)) {
    throw Error(ErrorCode::kInsufficientTokens,
                sender.name + " does not own all " + std::to_string(tokens.size()) +
                    " tokens");
  }
  if (t_prime < now_) {
    throw Error(ErrorCode::kPastDeadline, "release time lies in the past");
  }
  for (TokenId id : tokens.ids()) from.tokens.Erase(id);
  Escrow e;
  e.id = next_escrow_++;
  e.tokens = tokens;
  e.sender = sender;
  e.receiver = receiver;
  e.release_time = t_prime;
  e.listing = listing;
  escrows_[e.id] = e;
  if (!listing) {
    Writer payload;
    payload.U64(e.id).Field(receiver.name).U64(tokens.size()).U64(t_prime);
    AppendLocked(sender, ops::kTxLock, payload.bytes());
  }
  return e.id;
}

void Chain::ReleaseLocked(Escrow& e, bool refund) {
  if (!e.open()) throw Error(ErrorCode::kWrongState, "escrow already released");
  Wallet& to = WalletLocked(refund ? e.sender : e.receiver);
  for (TokenId id : e.tokens.ids()) to.tokens.Insert(id);
  if (refund) {
    e.refunded = true;
  } else {
    e.settled = true;
  }
  AppendLocked(kChainActor, refund ? ops::kRefund : ops::kSettle,
               EncodeRelease(e.id, e.listing, e.tokens.size()));
}

Escrow Chain::EscrowOf(EscrowId id) const {
  std::shared_lock lock(mu_);
  auto it = escrows_.find(id);
  if (it == escrows_.end()) throw Error(ErrorCode::kNotFound, "no such escrow");
  return it->second;
}

Wallet& Chain::WalletLocked(const PartyId& party) {
  auto it = wallets_.find(party);
  if (it == wallets_.end()) throw Error(ErrorCode::kNotFound, "no wallet for " + party.name);
  return it->second;
}

Listing& Chain::ListingLocked(ListingId id) {
  auto it = listings_.find(id);
  if (it == listings_.end()) {
    throw Error(ErrorCode::kNotFound, "no listing " + std::to_string(id));
  }
  return it->second;
}

ListingId Chain::NextListingId() const {
  std::shared_lock lock(mu_);
  return next_listing_;
}

ListingId Chain::MintListing(const PartyId& seller, uint64_t tk_thr,
                             const CommitKey& ck, const Commitment& c_k,
                             const Digest& apub_ptr) {
  if (tk_thr == 0) throw Error(ErrorCode::kInvalidArgument, "price must be at least 1");
  std::unique_lock lock(mu_);
  WalletLocked(seller);
  Listing l;
  l.id = next_listing_++;
  l.seller = seller;
  l.tk_thr = tk_thr;
  l.ck = ck;
  l.c_k = c_k;
  l.apub_ptr = apub_ptr;
  listings_[l.id] = l;
  AppendLocked(seller, ops::kMint, EncodeMint({l.id, tk_thr, ck, c_k, apub_ptr}));
  return l.id;
}

void Chain::Bid(ListingId id, const PartyId& buyer, const GroupElement& pk_b,
                const TokenSet& tokens, ClockTime t_comp, ClockTime t_final) {
  std::unique_lock lock(mu_);
  Listing& l = ListingLocked(id);
  if (l.state != ListingState::kListed) {
    throw Error(ErrorCode::kWrongState,
                "bid on listing in state " + std::string(ListingStateName(l.state)));
  }
  if (!(now_ < t_comp && t_comp < t_final)) {
    throw Error(ErrorCode::kBadTimeline, "need t_init < t_comp < t_final");
  }
  if (!pk_b.IsValid()) throw Error(ErrorCode::kInvalidPoint, "pk_B is not a group element");
  const EscrowId eid = LockLocked(buyer, l.seller, tokens, t_final, id);
  l.state = ListingState::kBid;
  l.buyer = buyer;
  l.pk_b = pk_b;
  l.t_init = now_;
  l.t_comp = t_comp;
  l.t_final = t_final;
  l.escrow = eid;
  AppendLocked(buyer, ops::kBid, EncodeBid({id, pk_b, tokens.size(), t_comp, t_final}));
}

void Chain::Accept(ListingId id, const PartyId& seller, const GroupElement& pk_a,
                   const Ciphertext& e_k) {
  std::unique_lock lock(mu_);
  Listing& l = ListingLocked(id);
  if (seller != l.seller) throw Error(ErrorCode::kUnauthorized, "caller is not the seller");
  if (l.state != ListingState::kBid) {
    throw Error(ErrorCode::kWrongState,
                "accept in state " + std::string(ListingStateName(l.state)));
  }
  if (now_ > l.t_comp) throw Error(ErrorCode::kTooLate, "complaint deadline passed");
  if (escrows_.at(*l.escrow).tokens.size() != l.tk_thr) {
    throw Error(ErrorCode::kUnderpriced, "escrow does not hold exactly the price");
  }
  if (!pk_a.IsValid()) throw Error(ErrorCode::kInvalidPoint, "pk_A is not a group element");
  l.pk_a = pk_a;
  l.e_k = e_k;
  l.state = ListingState::kKeyPosted;
  AppendLocked(seller, ops::kAccept, EncodeAccept({id, pk_a, e_k}));
}

void Chain::Confirm(ListingId id, const PartyId& buyer) {
  std::unique_lock lock(mu_);
  Listing& l = ListingLocked(id);
  if (l.state != ListingState::kKeyPosted) {
    throw Error(ErrorCode::kWrongState,
                "confirm in state " + std::string(ListingStateName(l.state)));
  }
  if (!l.buyer || buyer != *l.buyer) {
    throw Error(ErrorCode::kUnauthorized, "caller is not the bidder");
  }
  Writer payload;
  payload.U64(id);
  AppendLocked(buyer, ops::kConfirm, payload.bytes());
  l.state = ListingState::kConfirmed;
  ReleaseLocked(escrows_.at(*l.escrow), /*refund=*/false);
}

ComplaintOutcome Chain::Complain(ListingId id, const PartyId& caller,
                                 const Scalar& sk_b) {
  std::unique_lock lock(mu_);
  Listing& l = ListingLocked(id);
  if (l.state != ListingState::kBid && l.state != ListingState::kKeyPosted) {
    throw Error(ErrorCode::kWrongState,
                "complaint in state " + std::string(ListingStateName(l.state)));
  }
  ArbiterInput in;
  in.now = now_;
  in.t_comp = l.t_comp;
  in.ck = l.ck;
  in.c_k = l.c_k;
  in.pk_b = *l.pk_b;
  in.pk_a = l.pk_a;
  in.e_k = l.e_k;
  in.sk_b = sk_b;
  const ComplaintOutcome outcome = Arbitrate(in);

  AppendLocked(caller, ops::kComplain, EncodeComplain({id, sk_b}));
  if (IsRefund(outcome)) {
    l.state = ListingState::kRefunded;
    ReleaseLocked(escrows_.at(*l.escrow), /*refund=*/true);
  }
  return outcome;
}

Listing Chain::ListingOf(ListingId id) const {
  std::shared_lock lock(mu_);
  auto it = listings_.find(id);
  if (it == listings_.end()) {
    throw Error(ErrorCode::kNotFound, "no listing " + std::to_string(id));
  }
  return it->second;
}

size_t Chain::OnChainBytes(ListingId id) const { return ListingOf(id).OnChainFootprint(); }

std::map<std::string, uint64_t> Chain::CostTotals() const {
  std::shared_lock lock(mu_);
  std::map<std::string, uint64_t> totals;
  for (const auto& e : transcript_) {
    if (e.cost_units > 0) totals[e.op_name] += e.cost_units;
  }
  return totals;
}

// ---------------------------------------------------------------------------
// JSON Lines

std::string TranscriptToJsonl(const std::vector<TranscriptEntry>& entries) {
  std::string out;
  for (const auto& e : entries) {
    nlohmann::ordered_json j;
    j["seq"] = e.seq;
    j["time"] = e.time;
    j["actor"] = e.actor.name;
    j["op"] = e.op_name;
    j["payload_digest"] = e.payload_digest.Hex();
    j["cost_units"] = e.cost_units;
    j["payload"] = ToHex(e.payload);
    out += j.dump();
    out += '\n';
  }
  return out;
}

std::vector<TranscriptEntry> TranscriptFromJsonl(std::string_view text) {
  std::vector<TranscriptEntry> entries;
  size_t start = 0;
  while (start < text.size()) {
    size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    if (line.empty()) continue;
    try {
      auto j = nlohmann::json::parse(line);
      TranscriptEntry e;
      e.seq = j.at("seq").get<uint64_t>();
      e.time = j.at("time").get<uint64_t>();
      e.actor.name = j.at("actor").get<std::string>();
      e.op_name = j.at("op").get<std::string>();
      e.payload_digest = Digest::FromHex(j.at("payload_digest").get<std::string>());
      e.cost_units = j.at("cost_units").get<uint64_t>();
      e.payload = FromHex(j.at("payload").get<std::string>());
      if (Hash(e.payload) != e.payload_digest) {
        throw Error(ErrorCode::kIntegrity,
                    "payload digest mismatch at seq " + std::to_string(e.seq));
      }
      entries.push_back(std::move(e));
    } catch (const nlohmann::json::exception& ex) {
      throw Error(ErrorCode::kMalformed, std::string("transcript line: ") + ex.what());
    }
  }
  return entries;
}

}  // namespace afe
