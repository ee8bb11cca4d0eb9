#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

#include "afe/bytes.h"
#include "afe/crypto.h"

namespace afe {

using ClockTime = uint64_t;
using TokenId = uint64_t;
using ListingId = uint64_t;
using EscrowId = uint64_t;

struct PartyId {
  std::string name;

  friend bool operator==(const PartyId&, const PartyId&) = default;
  friend auto operator<=>(const PartyId&, const PartyId&) = default;
};

inline const PartyId kChainActor{"chain"};

// Tokens are fungible for pricing purposes: two sets compare by how many
// tokens they hold, never by which ids.
class TokenSet {
 public:
  TokenSet() = default;
  explicit TokenSet(std::set<TokenId> ids) : ids_(std::move(ids)) {}

  size_t size() const { return ids_.size(); }
  bool empty() const { return ids_.empty(); }
  const std::set<TokenId>& ids() const { return ids_; }
  bool Contains(TokenId id) const { return ids_.count(id) != 0; }

  // Throws kInvalidArgument if `id` is already present.
  void Insert(TokenId id);
  void Erase(TokenId id);
  // Lowest `n` ids; throws kInsufficientTokens when fewer are held.
  TokenSet Take(size_t n) const;

  friend bool operator==(const TokenSet& a, const TokenSet& b) {
    return a.size() == b.size();
  }
  friend auto operator<=>(const TokenSet& a, const TokenSet& b) {
    return a.size() <=> b.size();
  }

 private:
  std::set<TokenId> ids_;
};

struct Wallet {
  PartyId owner;
  VerifyKey owner_pk{};
  TokenSet tokens;
};

// 1 iff every id of `tokens` sits in `wallet`.
bool Owner(const TokenSet& tokens, const Wallet& wallet);

struct Escrow {
  EscrowId id = 0;
  TokenSet tokens;
  PartyId sender;
  PartyId receiver;
  ClockTime release_time = 0;
  bool refunded = false;
  bool settled = false;
  std::optional<ListingId> listing;

  bool open() const { return !refunded && !settled; }
};

enum class ListingState { kListed, kBid, kKeyPosted, kConfirmed, kRefunded, kSettled };

std::string_view ListingStateName(ListingState s);
ListingState ParseListingState(std::string_view name);

struct Listing {
  ListingId id = 0;
  PartyId seller;
  ListingState state = ListingState::kListed;
  uint64_t tk_thr = 0;
  CommitKey ck;
  Commitment c_k;
  Digest apub_ptr;

  std::optional<PartyId> buyer;
  std::optional<GroupElement> pk_a;
  std::optional<GroupElement> pk_b;
  std::optional<Ciphertext> e_k;
  ClockTime t_init = 0;
  ClockTime t_comp = 0;
  ClockTime t_final = 0;
  std::optional<EscrowId> escrow;

  // Bytes the contract keeps in state for this listing.
  size_t OnChainFootprint() const;
};

struct TranscriptEntry {
  uint64_t seq = 0;
  ClockTime time = 0;
  PartyId actor;
  std::string op_name;
  Digest payload_digest;
  uint64_t cost_units = 0;
  Bytes payload;

  friend bool operator==(const TranscriptEntry&, const TranscriptEntry&) = default;
};

// Operation names as they appear in the transcript and the cost report.
namespace ops {
inline constexpr std::string_view kDeployment = "Deployment";
inline constexpr std::string_view kMint = "Mint";
inline constexpr std::string_view kBid = "Bid";
inline constexpr std::string_view kAccept = "Accept";
inline constexpr std::string_view kConfirm = "Confirm";
inline constexpr std::string_view kComplain = "Complain";
inline constexpr std::string_view kStore = "Store";
inline constexpr std::string_view kTxLock = "TxLock";
inline constexpr std::string_view kSettle = "Settle";
inline constexpr std::string_view kRefund = "Refund";
inline constexpr std::string_view kIssue = "Issue";
}  // namespace ops

// The six contract functions in report order.
const std::vector<std::string>& CostReportRows();

class CostModel {
 public:
  // Contract gas figures scaled down by 10^4.
  static CostModel Default();
  // YAML mapping of op name to non-negative integer units; unknown ops
  // default to zero. Throws kConfig when complain is not strictly dearer than
  // confirm.
  static CostModel Parse(std::string_view yaml_text);

  uint64_t Cost(std::string_view op) const;
  void Set(std::string op, uint64_t units);
  const std::map<std::string, uint64_t, std::less<>>& units() const { return units_; }
  void Validate() const;

  // Mint + Bid + Accept + Confirm: the optimistic happy path.
  uint64_t ConfirmPathTotal() const;

 private:
  std::map<std::string, uint64_t, std::less<>> units_;
};

enum class ComplaintOutcome {
  kTimeoutRefund,
  kWrongKeyNoOp,
  kBadCommitmentRefund,
  kRejected,
};

std::string_view ComplaintOutcomeName(ComplaintOutcome o);
ComplaintOutcome ParseComplaintOutcome(std::string_view name);
inline bool IsRefund(ComplaintOutcome o) {
  return o == ComplaintOutcome::kTimeoutRefund ||
         o == ComplaintOutcome::kBadCommitmentRefund;
}

// Everything the arbiter reads. It is a pure function of this record, which
// is reconstructible from the public transcript.
struct ArbiterInput {
  ClockTime now = 0;
  ClockTime t_comp = 0;
  CommitKey ck;
  Commitment c_k;
  GroupElement pk_b;
  std::optional<GroupElement> pk_a;
  std::optional<Ciphertext> e_k;
  Scalar sk_b;
};

// The complaint procedure run by the contract.
ComplaintOutcome Arbitrate(const ArbiterInput& in);

// Rebuilds the arbiter input for the complaint recorded at transcript
// position `complaint_seq` and re-runs it.
ArbiterInput ArbiterInputFromTranscript(const std::vector<TranscriptEntry>& entries,
                                        uint64_t complaint_seq);

struct ChainOptions {
  CostModel costs = CostModel::Default();
  std::string chain_label = "afe-sim";
};

// Single-actor simulated blockchain: clock, bulletin board, ledger, escrow
// and the exchange contract. Mutations are serialized by an internal lock;
// const accessors return copies so readers never observe a torn state.
class Chain {
 public:
  explicit Chain(ChainOptions options = {});

  Chain(const Chain&) = delete;
  Chain& operator=(const Chain&) = delete;

  const std::string& label() const { return options_.chain_label; }
  const CostModel& costs() const { return options_.costs; }

  // --- clock ---------------------------------------------------------------
  ClockTime Now() const;
  // Moves the clock forward and settles every escrow that came due.
  ClockTime Advance(uint64_t delta);

  // --- ledger --------------------------------------------------------------
  void OpenWallet(const PartyId& party, const VerifyKey& owner_pk);
  // Genesis issuance of `n` fresh token ids into `party`'s wallet.
  TokenSet Issue(const PartyId& party, size_t n);
  Wallet WalletOf(const PartyId& party) const;
  size_t Balance(const PartyId& party) const;
  size_t TotalSupply() const;
  // Tokens currently in open escrows.
  size_t EscrowedSupply() const;
  // Every id is in exactly one wallet or one open escrow.
  bool CheckConservation() const;

  // --- bulletin board -------------------------------------------------------
  TranscriptEntry Store(const PartyId& actor, ByteView message);
  std::vector<TranscriptEntry> Transcript() const;

  // --- escrow --------------------------------------------------------------
  EscrowId TxLock(const PartyId& sender, const PartyId& receiver,
                  const TokenSet& tokens, ClockTime t_prime);
  Escrow EscrowOf(EscrowId id) const;

  // --- exchange contract ----------------------------------------------------
  ListingId NextListingId() const;
  ListingId MintListing(const PartyId& seller, uint64_t tk_thr,
                        const CommitKey& ck, const Commitment& c_k,
                        const Digest& apub_ptr);
  void Bid(ListingId id, const PartyId& buyer, const GroupElement& pk_b,
           const TokenSet& tokens, ClockTime t_comp, ClockTime t_final);
  void Accept(ListingId id, const PartyId& seller, const GroupElement& pk_a,
              const Ciphertext& e_k);
  void Confirm(ListingId id, const PartyId& buyer);
  ComplaintOutcome Complain(ListingId id, const PartyId& caller,
                            const Scalar& sk_b);

  Listing ListingOf(ListingId id) const;
  // Raw bytes held in contract state for a listing.
  size_t OnChainBytes(ListingId id) const;

  // Cost units charged per op name so far.
  std::map<std::string, uint64_t> CostTotals() const;

 private:
  TranscriptEntry AppendLocked(const PartyId& actor, std::string_view op,
                               ByteView payload);
  EscrowId LockLocked(const PartyId& sender, const PartyId& receiver,
                      const TokenSet& tokens, ClockTime t_prime,
                      std::optional<ListingId> listing);
  void ReleaseLocked(Escrow& e, bool refund);
  Listing& ListingLocked(ListingId id);
  Wallet& WalletLocked(const PartyId& party);
  void SettleDueLocked();

  ChainOptions options_;
  mutable std::shared_mutex mu_;
  ClockTime now_ = 0;
  TokenId next_token_ = 1;
  EscrowId next_escrow_ = 1;
  ListingId next_listing_ = 1;
  std::map<PartyId, Wallet> wallets_;
  std::map<EscrowId, Escrow> escrows_;
  std::map<ListingId, Listing> listings_;
  std::vector<TranscriptEntry> transcript_;
};

// --- transcript payload codecs ----------------------------------------------

struct MintRecord {
  ListingId listing = 0;
  uint64_t tk_thr = 0;
  CommitKey ck;
  Commitment c_k;
  Digest apub_ptr;
};
struct BidRecord {
  ListingId listing = 0;
  GroupElement pk_b;
  uint64_t n_tokens = 0;
  ClockTime t_comp = 0;
  ClockTime t_final = 0;
};
struct AcceptRecord {
  ListingId listing = 0;
  GroupElement pk_a;
  Ciphertext e_k;
};
struct ComplainRecord {
  ListingId listing = 0;
  Scalar sk_b;
};

Bytes EncodeMint(const MintRecord& r);
MintRecord DecodeMint(ByteView in);
Bytes EncodeBid(const BidRecord& r);
BidRecord DecodeBid(ByteView in);
Bytes EncodeAccept(const AcceptRecord& r);
AcceptRecord DecodeAccept(ByteView in);
Bytes EncodeComplain(const ComplainRecord& r);
ComplainRecord DecodeComplain(ByteView in);

// JSON Lines: one entry per line with hex-encoded digest and payload.
std::string TranscriptToJsonl(const std::vector<TranscriptEntry>& entries);
std::vector<TranscriptEntry> TranscriptFromJsonl(std::string_view text);

}  // namespace afe
