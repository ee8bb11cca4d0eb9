#include "afe/harness.h"

#include <fstream>
#include <iterator>
#include <unordered_set>

#include "afe/error.h"

namespace afe {

namespace {

const PartyId kSeller{"seller"};
const PartyId kBuyer{"buyer"};
const PartyId kVictim{"victim"};

Bytes LoadAssetPayload(const AssetSource& src, Rng& rng) {
  switch (src.kind) {
    case AssetSource::Kind::kGenerated:
      return rng.Draw(src.size);
    case AssetSource::Kind::kGeneratedImage: {
      Image img;
      img.width = src.width;
      img.height = src.height;
      img.pixels = rng.Draw(size_t(src.width) * src.height);
      return PgmSerialize(img);
    }
    case AssetSource::Kind::kFile: {
      std::ifstream in(src.path, std::ios::binary);
      if (!in) throw Error(ErrorCode::kIo, "cannot open asset " + src.path.string());
      return Bytes(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    }
  }
  throw Error(ErrorCode::kConfig, "unknown asset kind");
}

uint64_t PathCost(const std::map<std::string, uint64_t>& costs) {
  uint64_t total = 0;
  for (std::string_view op :
       {ops::kMint, ops::kBid, ops::kAccept, ops::kConfirm, ops::kComplain}) {
    auto it = costs.find(std::string(op));
    if (it != costs.end()) total += it->second;
  }
  return total;
}

// Drives one exchange tick by tick. Engines read the chain and hand
// messages back; only this class writes.
class Simulation {
 public:
  explicit Simulation(const Scenario& s)
      : s_(s),
        root_(s.seed),
        chain_(ChainOptions{s.costs.value_or(CostModel::Default()), "afe-sim"}) {}

  RunResult Run() {
    s_.Validate();
    Rng asset_rng = root_.Fork("asset");
    const SigKeyPair creator = SigKeyGen(asset_rng);
    const Asset asset = MakeAsset(LoadAssetPayload(s_.asset, asset_rng), creator);
    const PreviewFnSpec spec = s_.EffectivePreview(asset.a);

    Rng setup_rng = root_.Fork("setup");
    SetupResult setup = Setup(setup_rng, spec);
    art_.params = setup.params;
    art_.asset = asset;

    OpenWallets();
    const size_t funds = s_.buyer_funds.value_or(s_.tk_thr + 2);
    chain_.Issue(kBuyer, funds);

    Advertisement ad = AdvertiseForStrategy(setup, asset);
    art_.prv = ad.prv;
    art_.pub = ad.pub;
    art_.listing = ad.listing;

    SellerEngine seller(kSeller, ad.prv, ad.pub, root_.Fork("seller-exchange"));
    BuyerEngine buyer(kBuyer, setup.params, root_.Fork("buyer-exchange"));
    Exchange(seller, buyer, ad);

    return Finish(funds);
  }

 private:
  void OpenWallets() {
    Rng wallet_rng = root_.Fork("wallets");
    chain_.OpenWallet(kSeller, SigKeyGen(wallet_rng).pk);
    chain_.OpenWallet(kBuyer, SigKeyGen(wallet_rng).pk);
    if (s_.seller == Strategy::kSellerReplayAdvert) {
      chain_.OpenWallet(kVictim, SigKeyGen(wallet_rng).pk);
    }
  }

  Advertisement AdvertiseForStrategy(const SetupResult& setup, const Asset& asset) {
    Rng adv_rng = root_.Fork("advertise");
    const AdvertiseOptions opts{s_.bind_listing};
    if (s_.seller != Strategy::kSellerReplayAdvert) {
      return Advertise(setup.params, setup.prover, asset, s_.tk_thr, chain_, store_, kSeller,
                       adv_rng, opts);
    }
    // Victim advertises; the replayer relists its a_pub under its own name.
    Advertisement genuine = Advertise(setup.params, setup.prover, asset, s_.tk_thr, chain_,
                                      store_, kVictim, adv_rng, opts);
    Advertisement copy;
    copy.pub = genuine.pub;
    copy.apub_ptr = genuine.apub_ptr;
    copy.listing = chain_.MintListing(kSeller, s_.tk_thr, genuine.pub.statement.ck,
                                      genuine.pub.statement.c_k, genuine.apub_ptr);
    Rng guess_rng = root_.Fork("replay-guess");
    copy.prv = *AdvertPrivate::Parse(guess_rng.Draw(kSymKeySize + kRandomnessSize));
    replay_victim_prv_ = genuine.prv;
    return copy;
  }

  void Exchange(SellerEngine& seller, BuyerEngine& buyer, const Advertisement& ad) {
    const ListingId id = ad.listing;
    verdict_.buyer_evaluated = buyer.Evaluate(chain_, store_, id).ok;
    if (!verdict_.buyer_evaluated) return;

    uint64_t offered = s_.tk_thr;
    if (s_.buyer == Strategy::kBuyerUnderbid) offered = s_.tk_thr - 1;
    const TokenSet tokens = chain_.WalletOf(kBuyer).tokens.Take(offered);
    const ClockTime t_init = chain_.Now();
    Submit(chain_, kBuyer,
           buyer.MakeBid(chain_, id, tokens, t_init + s_.timeline.t_comp_offset,
                         t_init + s_.timeline.t_final_offset));
    verdict_.buyer_bid = true;
    art_.buyer_sk = buyer.ephemeral()->sk;

    Rng deviation_rng = root_.Fork("deviation");
    bool seller_done = false;
    bool buyer_done = false;
    while (IsOpen(chain_.ListingOf(id).state)) {
      chain_.Advance(1);
      if (!IsOpen(chain_.ListingOf(id).state)) break;

      if (!seller_done && chain_.Now() >= t_init + s_.timeline.seller_delay) {
        seller_done = true;
        SellerStep(seller, id, deviation_rng);
      }
      if (!buyer_done) buyer_done = BuyerStep(buyer, id, deviation_rng);
    }
  }

  static bool IsOpen(ListingState st) {
    return st == ListingState::kBid || st == ListingState::kKeyPosted;
  }

  void SellerStep(SellerEngine& seller, ListingId id, Rng& rng) {
    const Listing listing = chain_.ListingOf(id);
    switch (s_.seller) {
      case Strategy::kHonest: {
        if (auto msg = seller.Respond(chain_, id)) {
          Submit(chain_, kSeller, *msg);
        } else {
          verdict_.seller_aborted = true;
        }
        return;
      }
      case Strategy::kSellerTimeout:
        return;
      case Strategy::kSellerWrongKey: {
        AdvertPrivate forged = art_.prv;
        forged.k_a = SymKeyGen(rng);
        Submit(chain_, kSeller, DeliverKey(id, *listing.pk_b, forged.Serialize(), rng).message);
        return;
      }
      case Strategy::kSellerWrongRandomness: {
        AdvertPrivate forged = art_.prv;
        forged.r = rng.DrawArray<kRandomnessSize>();
        Submit(chain_, kSeller, DeliverKey(id, *listing.pk_b, forged.Serialize(), rng).message);
        return;
      }
      case Strategy::kSellerGarbageCiphertext: {
        AcceptMessage msg;
        msg.listing = id;
        msg.pk_a = DhGen(rng).pk;
        msg.e_k = Ciphertext::Parse(rng.Draw(kNonceSize + kSymKeySize + kRandomnessSize));
        Submit(chain_, kSeller, msg);
        return;
      }
      case Strategy::kSellerReplayAdvert:
        // Best effort without a_prv: deliver its guess.
        Submit(chain_, kSeller, DeliverKey(id, *listing.pk_b, art_.prv.Serialize(), rng).message);
        return;
      default:
        throw Error(ErrorCode::kConfig, "not a seller strategy");
    }
  }

  // Returns true once the buyer has nothing left to do.
  bool BuyerStep(BuyerEngine& buyer, ListingId id, Rng& rng) {
    const BuyerDecision d = buyer.Finalize(chain_, id);
    if (d == BuyerDecision::kWait) return false;

    if (d == BuyerDecision::kConfirm) {
      const Asset got = buyer.Recover();
      verdict_.asset_recovered = got == art_.asset && got.WellFormed();
      switch (s_.buyer) {
        case Strategy::kBuyerFalseComplaint:
          Complain(buyer.ComplainMsg());
          return true;
        case Strategy::kBuyerWrongSk:
          Complain(WrongKeyComplaint(buyer, rng));
          return true;
        default:
          Submit(chain_, kBuyer, buyer.ConfirmMsg());
          return true;
      }
    }

    // V_B failed or timed out.
    if (s_.buyer == Strategy::kBuyerWrongSk) {
      Complain(WrongKeyComplaint(buyer, rng));
    } else {
      Complain(buyer.ComplainMsg());
    }
    return true;
  }

  ComplainMessage WrongKeyComplaint(const BuyerEngine& buyer, Rng& rng) {
    ComplainMessage msg = buyer.ComplainMsg();
    msg.sk_b = DhGen(rng).sk;
    return msg;
  }

  void Complain(const ComplainMessage& msg) {
    verdict_.complaint = Submit(chain_, kBuyer, msg);
    verdict_.complaint_seq = chain_.Transcript().size() - 1;
    if (IsRefund(*verdict_.complaint)) --*verdict_.complaint_seq;
  }

  RunResult Finish(size_t funds) {
    const Listing listing = chain_.ListingOf(art_.listing);
    verdict_.final_state = listing.state;
    verdict_.buyer_delta =
        static_cast<int64_t>(chain_.Balance(kBuyer)) - static_cast<int64_t>(funds);
    verdict_.seller_delta = static_cast<int64_t>(chain_.Balance(kSeller));
    verdict_.escrow_residue = chain_.EscrowedSupply();
    verdict_.conservation_ok = chain_.CheckConservation();
    verdict_.costs = chain_.CostTotals();
    verdict_.path_cost = PathCost(verdict_.costs);

    for (const Digest& d : store_.List()) art_.offstore_blobs.push_back(store_.Get(d));
    if (replay_victim_prv_) art_.prv = *replay_victim_prv_;

    RunResult out;
    out.verdict = verdict_;
    out.transcript = chain_.Transcript();
    out.artifacts = std::move(art_);
    return out;
  }

  Scenario s_;
  Rng root_;
  Chain chain_;
  BlobStore store_;
  Verdict verdict_;
  RunArtifacts art_;
  std::optional<AdvertPrivate> replay_victim_prv_;
};

}  // namespace

RunResult RunScenario(const Scenario& s) { return Simulation(s).Run(); }

std::vector<std::string> Verdict::Mismatches(const ExpectedVerdict& e) const {
  std::vector<std::string> out;
  auto check = [&](const char* field, bool ok, const std::string& want,
                   const std::string& got) {
    if (!ok) out.push_back(std::string(field) + ": expected " + want + ", got " + got);
  };
  if (e.state) {
    check("state", *e.state == final_state, std::string(ListingStateName(*e.state)),
          std::string(ListingStateName(final_state)));
  }
  if (e.buyer_delta) {
    check("buyer_delta", *e.buyer_delta == buyer_delta, std::to_string(*e.buyer_delta),
          std::to_string(buyer_delta));
  }
  if (e.seller_delta) {
    check("seller_delta", *e.seller_delta == seller_delta, std::to_string(*e.seller_delta),
          std::to_string(seller_delta));
  }
  if (e.asset_recovered) {
    check("asset_recovered", *e.asset_recovered == asset_recovered,
          *e.asset_recovered ? "true" : "false", asset_recovered ? "true" : "false");
  }
  if (e.buyer_bid) {
    check("buyer_bid", *e.buyer_bid == buyer_bid, *e.buyer_bid ? "true" : "false",
          buyer_bid ? "true" : "false");
  }
  if (e.complaint) {
    auto name = [](const std::optional<ComplaintOutcome>& o) {
      return o ? std::string(ComplaintOutcomeName(*o)) : std::string("none");
    };
    check("complaint", *e.complaint == complaint, name(*e.complaint), name(complaint));
  }
  if (buyer_delta + seller_delta + static_cast<int64_t>(escrow_residue) != 0) {
    out.push_back("token deltas do not sum to zero");
  }
  if (!conservation_ok) out.push_back("token conservation violated");
  return out;
}

SecrecyReport ScanForSecrets(const std::vector<TranscriptEntry>& transcript,
                             const std::vector<Bytes>& blobs, const AdvertPrivate& prv,
                             ByteView asset_plaintext, ByteView preview_body,
                             size_t window) {
  std::vector<ByteView> payloads;
  for (const auto& e : transcript) payloads.emplace_back(e.payload);
  for (const auto& b : blobs) payloads.emplace_back(b);

  SecrecyReport report;
  for (ByteView p : payloads) {
    report.k_a_found |= ContainsSubstring(p, prv.k_a.bytes);
    report.r_found |= ContainsSubstring(p, prv.r);
  }
  if (window == 0 || asset_plaintext.size() < window) return report;

  auto key = [window](ByteView v, size_t i) {
    return std::string(reinterpret_cast<const char*>(v.data() + i), window);
  };
  std::unordered_set<std::string> revealed;
  for (size_t i = 0; i + window <= preview_body.size(); ++i) {
    revealed.insert(key(preview_body, i));
  }
  std::unordered_set<std::string> secret;
  for (size_t i = 0; i + window <= asset_plaintext.size(); ++i) {
    std::string k = key(asset_plaintext, i);
    if (!revealed.count(k)) secret.insert(std::move(k));
  }
  std::unordered_set<std::string> hits;
  for (ByteView p : payloads) {
    for (size_t i = 0; i + window <= p.size(); ++i) {
      std::string k = key(p, i);
      if (secret.count(k)) hits.insert(std::move(k));
    }
  }
  report.leaked_windows = hits.size();
  return report;
}

ComplaintOutcome ReplayComplaint(const std::vector<TranscriptEntry>& transcript,
                                 uint64_t complaint_seq) {
  return Arbitrate(ArbiterInputFromTranscript(transcript, complaint_seq));
}

void EmitTranscript(const std::vector<TranscriptEntry>& transcript,
                    const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out << TranscriptToJsonl(transcript);
  if (!out) throw Error(ErrorCode::kIo, "write failed for " + path.string());
}

}  // namespace afe
