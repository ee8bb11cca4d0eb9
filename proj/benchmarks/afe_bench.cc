#include <benchmark/benchmark.h>

#include "afe/assets.h"
#include "afe/protocol.h"

namespace afe {
namespace {

const PartyId kSeller{"seller"};

void BM_Advertise(benchmark::State& state) {
  Rng rng(1);
  SetupResult setup = Setup(rng, PreviewFnSpec::TruncatePrefix(64));
  const Asset asset = MakeAsset(rng.Draw(static_cast<size_t>(state.range(0))), SigKeyGen(rng));
  for (auto _ : state) {
    auto advert = MakeAdvert(setup.params, setup.prover, asset, 3, rng);
    benchmark::DoNotOptimize(advert);
  }
  state.SetBytesProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Advertise)->RangeMultiplier(8)->Range(1 << 10, 1 << 20);

void BM_VerifyProof(benchmark::State& state) {
  Rng rng(2);
  SetupResult setup = Setup(rng, PreviewFnSpec::TruncatePrefix(64));
  const Asset asset = MakeAsset(rng.Draw(static_cast<size_t>(state.range(0))), SigKeyGen(rng));
  auto [prv, pub] = MakeAdvert(setup.params, setup.prover, asset, 3, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(VerifyProof(setup.params.crs, pub.statement, pub.proof));
  }
}
BENCHMARK(BM_VerifyProof)->RangeMultiplier(8)->Range(1 << 10, 1 << 20);

void BM_Arbitrate(benchmark::State& state) {
  Rng rng(3);
  const CommitKey ck = CommitKeyGen(rng);
  const SymKey k_a = SymKeyGen(rng);
  const auto r = rng.DrawArray<kRandomnessSize>();
  const DhKeyPair a = DhGen(rng);
  const DhKeyPair b = DhGen(rng);
  const SymKey k_ab = SymKeyFromMaterial(DhShared(a.sk, b.pk));
  ArbiterInput in;
  in.now = 5;
  in.t_comp = 10;
  in.ck = ck;
  in.c_k = Commit(ck, k_a.bytes, r);
  in.pk_b = b.pk;
  in.pk_a = a.pk;
  in.e_k = SymEncrypt(k_ab, Concat({k_a.bytes, r}), rng.DrawArray<kNonceSize>());
  in.sk_b = b.sk;
  for (auto _ : state) benchmark::DoNotOptimize(Arbitrate(in));
}
BENCHMARK(BM_Arbitrate);

void BM_BilinearHalve(benchmark::State& state) {
  Rng rng(4);
  const auto side = static_cast<uint32_t>(state.range(0));
  const Image img{side, side, rng.Draw(size_t(side) * side)};
  for (auto _ : state) benchmark::DoNotOptimize(BilinearHalve(img));
  state.SetBytesProcessed(state.iterations() * side * side);
}
BENCHMARK(BM_BilinearHalve)->RangeMultiplier(2)->Range(128, 2048);

void BM_OptimisticExchange(benchmark::State& state) {
  Rng rng(5);
  SetupResult setup = Setup(rng, PreviewFnSpec::TruncatePrefix(64));
  const Asset asset = MakeAsset(rng.Draw(4096), SigKeyGen(rng));
  for (auto _ : state) {
    Chain chain;
    BlobStore store;
    const PartyId buyer_id{"buyer"};
    chain.OpenWallet(kSeller, SigKeyGen(rng).pk);
    chain.OpenWallet(buyer_id, SigKeyGen(rng).pk);
    chain.Issue(buyer_id, 3);
    Advertisement ad =
        Advertise(setup.params, setup.prover, asset, 3, chain, store, kSeller, rng);
    SellerEngine seller(kSeller, ad.prv, ad.pub, rng.Fork("s"));
    BuyerEngine buyer(buyer_id, setup.params, rng.Fork("b"));
    buyer.Evaluate(chain, store, ad.listing);
    Submit(chain, buyer_id,
           buyer.MakeBid(chain, ad.listing, chain.WalletOf(buyer_id).tokens, 5, 9));
    Submit(chain, kSeller, *seller.Respond(chain, ad.listing));
    buyer.Finalize(chain, ad.listing);
    Submit(chain, buyer_id, buyer.ConfirmMsg());
  }
}
BENCHMARK(BM_OptimisticExchange);

}  // namespace
}  // namespace afe

BENCHMARK_MAIN();
