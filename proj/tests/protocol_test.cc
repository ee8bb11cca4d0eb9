#include <gtest/gtest.h>

#include "afe/error.h"
#include "afe/protocol.h"
#include "support/seller_simulator.h"

namespace afe {
namespace {

const PartyId kSeller{"seller"};
const PartyId kBuyer{"buyer"};

class ProtocolTest : public ::testing::Test {
 protected:
  ProtocolTest()
      : rng_(99),
        setup_(afe::Setup(rng_, PreviewFnSpec::TruncatePrefix(32))),
        asset_(MakeAsset(rng_.Draw(2048), SigKeyGen(rng_))) {
    chain_.OpenWallet(kSeller, SigKeyGen(rng_).pk);
    chain_.OpenWallet(kBuyer, SigKeyGen(rng_).pk);
    chain_.Issue(kBuyer, 8);
  }

  Advertisement Publish(uint64_t price = 3, bool bind = false) {
    return Advertise(setup_.params, setup_.prover, asset_, price, chain_, store_, kSeller,
                     rng_, AdvertiseOptions{bind});
  }

  Rng rng_;
  SetupResult setup_;
  Asset asset_;
  Chain chain_;
  BlobStore store_;
};

TEST_F(ProtocolTest, ParamsAndAdvertRoundTrip) {
  EXPECT_EQ(Params::Parse(setup_.params.Serialize()), setup_.params);
  const Advertisement ad = Publish();
  EXPECT_EQ(AdvertPublic::Parse(ad.pub.Serialize()), ad.pub);
  EXPECT_EQ(AdvertPrivate::Parse(ad.prv.Serialize()), ad.prv);
  EXPECT_EQ(ad.prv.Serialize().size(), 64u);
  EXPECT_FALSE(AdvertPrivate::Parse(Bytes(63)).has_value());
}

TEST_F(ProtocolTest, DefineVerAlg) {
  auto [va, vb] = DefineVerAlg(4, setup_.params.ck, Commitment{Bytes(32)});
  EXPECT_TRUE(va.Accepts(4));
  EXPECT_FALSE(va.Accepts(3));
  EXPECT_FALSE(va.Accepts(5));
  EXPECT_EQ(vb.shared_key_bits, kSharedKeyBits);
  EXPECT_THROW(DefineVerAlg(0, setup_.params.ck, Commitment{}), Error);
}

TEST_F(ProtocolTest, ListingHoldsOnlyCommitmentData) {
  const Advertisement ad = Publish();
  const Listing l = chain_.ListingOf(ad.listing);
  EXPECT_EQ(l.c_k, ad.pub.statement.c_k);
  EXPECT_EQ(l.apub_ptr, ad.apub_ptr);
  EXPECT_LT(chain_.OnChainBytes(ad.listing), ad.pub.statement.a_enc.size());
}

TEST_F(ProtocolTest, BuyerEvaluateAcceptsHonestAdvert) {
  const Advertisement ad = Publish();
  const Evaluation ev = BuyerEvaluate(setup_.params, store_, chain_, ad.listing);
  EXPECT_TRUE(ev.ok) << ev.reason;
  ASSERT_TRUE(ev.advert);
  EXPECT_EQ(*ev.advert, ad.pub);
}

TEST_F(ProtocolTest, BuyerEvaluateRejectsForeignParams) {
  const Advertisement ad = Publish();
  Rng other(5);
  SetupResult foreign = afe::Setup(other, PreviewFnSpec::TruncatePrefix(32));
  EXPECT_FALSE(BuyerEvaluate(foreign.params, store_, chain_, ad.listing).ok);
  EXPECT_FALSE(BuyerEvaluate(setup_.params, store_, chain_, 999).ok);
}

TEST_F(ProtocolTest, BuyerEvaluateRejectsPriceMismatch) {
  const Advertisement ad = Publish(3);
  const ListingId relist = chain_.MintListing(kSeller, 1, ad.pub.statement.ck,
                                              ad.pub.statement.c_k, ad.apub_ptr);
  EXPECT_FALSE(BuyerEvaluate(setup_.params, store_, chain_, relist).ok);
}

TEST_F(ProtocolTest, BindingTagStopsReplay) {
  const Advertisement ad = Publish(3, true);
  EXPECT_TRUE(BuyerEvaluate(setup_.params, store_, chain_, ad.listing).ok);
  const ListingId copy = chain_.MintListing(PartyId{"seller"}, 3, ad.pub.statement.ck,
                                            ad.pub.statement.c_k, ad.apub_ptr);
  const Evaluation ev = BuyerEvaluate(setup_.params, store_, chain_, copy);
  EXPECT_FALSE(ev.ok);
}

TEST_F(ProtocolTest, UnboundAdvertCanBeRelisted) {
  const Advertisement ad = Publish(3, false);
  const ListingId copy = chain_.MintListing(kSeller, 3, ad.pub.statement.ck,
                                            ad.pub.statement.c_k, ad.apub_ptr);
  EXPECT_TRUE(BuyerEvaluate(setup_.params, store_, chain_, copy).ok);
}

TEST_F(ProtocolTest, RecoverAssetChecksSignature) {
  const Advertisement ad = Publish();
  EXPECT_EQ(RecoverAsset(ad.pub.statement.a_enc, ad.prv.k_a, asset_.pk), asset_);
  VerifyKey wrong = asset_.pk;
  wrong[0] ^= 1;
  try {
    RecoverAsset(ad.pub.statement.a_enc, ad.prv.k_a, wrong);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kCorruptAsset);
  }
}

TEST_F(ProtocolTest, EnginesRunOptimisticExchange) {
  const Advertisement ad = Publish();
  SellerEngine seller(kSeller, ad.prv, ad.pub, rng_.Fork("s"));
  BuyerEngine buyer(kBuyer, setup_.params, rng_.Fork("b"));

  EXPECT_THROW(buyer.MakeBid(chain_, ad.listing, chain_.WalletOf(kBuyer).tokens.Take(3), 5, 9),
               Error);
  ASSERT_TRUE(buyer.Evaluate(chain_, store_, ad.listing).ok);
  Submit(chain_, kBuyer,
         buyer.MakeBid(chain_, ad.listing, chain_.WalletOf(kBuyer).tokens.Take(3), 5, 9));
  EXPECT_EQ(buyer.Finalize(chain_, ad.listing), BuyerDecision::kWait);

  auto msg = seller.Respond(chain_, ad.listing);
  ASSERT_TRUE(msg);
  Submit(chain_, kSeller, *msg);
  EXPECT_EQ(buyer.Finalize(chain_, ad.listing), BuyerDecision::kConfirm);
  EXPECT_EQ(buyer.shared_key(), seller.shared_key());
  EXPECT_EQ(buyer.opened(), ad.prv);
  EXPECT_EQ(buyer.Recover(), asset_);
  Submit(chain_, kBuyer, buyer.ConfirmMsg());
  EXPECT_EQ(chain_.ListingOf(ad.listing).state, ListingState::kConfirmed);
  EXPECT_EQ(chain_.Balance(kSeller), 3u);
}

TEST_F(ProtocolTest, SellerAbortsOnUnderpricedLock) {
  const Advertisement ad = Publish(3);
  SellerEngine seller(kSeller, ad.prv, ad.pub, rng_.Fork("s"));
  BuyerEngine buyer(kBuyer, setup_.params, rng_.Fork("b"));
  ASSERT_TRUE(buyer.Evaluate(chain_, store_, ad.listing).ok);
  Submit(chain_, kBuyer,
         buyer.MakeBid(chain_, ad.listing, chain_.WalletOf(kBuyer).tokens.Take(2), 5, 9));
  EXPECT_FALSE(seller.Respond(chain_, ad.listing));
  EXPECT_TRUE(seller.aborted());
}

TEST_F(ProtocolTest, BuyerComplainsOnWrongKeyAndAfterDeadline) {
  const Advertisement ad = Publish();
  BuyerEngine buyer(kBuyer, setup_.params, rng_.Fork("b"));
  ASSERT_TRUE(buyer.Evaluate(chain_, store_, ad.listing).ok);
  Submit(chain_, kBuyer,
         buyer.MakeBid(chain_, ad.listing, chain_.WalletOf(kBuyer).tokens.Take(3), 5, 9));
  chain_.Advance(6);
  EXPECT_EQ(buyer.Finalize(chain_, ad.listing), BuyerDecision::kComplain);
  EXPECT_EQ(Submit(chain_, kBuyer, buyer.ComplainMsg()), ComplaintOutcome::kTimeoutRefund);
}

TEST_F(ProtocolTest, BuyerComplainsOnForgedKeyDelivery) {
  const Advertisement ad = Publish();
  BuyerEngine buyer(kBuyer, setup_.params, rng_.Fork("b"));
  ASSERT_TRUE(buyer.Evaluate(chain_, store_, ad.listing).ok);
  Submit(chain_, kBuyer,
         buyer.MakeBid(chain_, ad.listing, chain_.WalletOf(kBuyer).tokens.Take(3), 5, 9));
  const Listing l = chain_.ListingOf(ad.listing);
  Submit(chain_, kSeller, DeliverKey(ad.listing, *l.pk_b, rng_.Draw(64), rng_).message);
  EXPECT_EQ(buyer.Finalize(chain_, ad.listing), BuyerDecision::kComplain);
  EXPECT_EQ(Submit(chain_, kBuyer, buyer.ComplainMsg()),
            ComplaintOutcome::kBadCommitmentRefund);
  EXPECT_EQ(chain_.Balance(kBuyer), 8u);
}

TEST_F(ProtocolTest, SimulatedAdvertPassesEvaluation) {
  const Advertisement real = Publish();
  Rng sim_rng(123);
  const auto sim = testing::SimulateSellerAdvert(
      setup_.params.crs.spec, real.pub.statement.preview,
      EncodeAssetPlaintext(asset_.a, asset_.sigma).size(), 3, sim_rng);
  Chain chain;
  BlobStore store;
  chain.OpenWallet(kSeller, SigKeyGen(sim_rng).pk);
  const ListingId id = chain.MintListing(kSeller, 3, sim.pub.statement.ck,
                                         sim.pub.statement.c_k, store.Put(sim.pub.Serialize()));
  const Evaluation ev = BuyerEvaluate(sim.params, store, chain, id);
  EXPECT_TRUE(ev.ok) << ev.reason;
  EXPECT_EQ(sim.pub.Serialize().size(), real.pub.Serialize().size());
}

}  // namespace
}  // namespace afe
