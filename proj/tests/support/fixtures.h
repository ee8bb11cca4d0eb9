#pragma once

#include "afe/protocol.h"

namespace afe::testing {

struct HonestInstance {
  SetupResult setup;
  Asset asset;
  AdvertPrivate prv;
  AdvertPublic pub;

  Witness witness() const { return Witness{prv.k_a, prv.r}; }
};

inline HonestInstance MakeHonestInstance(uint64_t seed, size_t asset_size = 1024,
                                         const PreviewFnSpec& spec =
                                             PreviewFnSpec::TruncatePrefix(64),
                                         uint64_t tk_thr = 3) {
  Rng rng(seed);
  SetupResult setup = Setup(rng, spec);
  const Asset asset = MakeAsset(rng.Draw(asset_size), SigKeyGen(rng));
  auto [prv, pub] = MakeAdvert(setup.params, setup.prover, asset, tk_thr, rng);
  return HonestInstance{std::move(setup), asset, prv, std::move(pub)};
}

}  // namespace afe::testing
