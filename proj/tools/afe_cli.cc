#include <fstream>
#include <iostream>
#include <iterator>

#include "CLI11.hpp"
#include "afe/error.h"
#include "afe/harness.h"

namespace {

using namespace afe;

struct CommonFlags {
  std::optional<uint64_t> seed;
  std::optional<uint64_t> t_comp;
  std::optional<uint64_t> t_final;
  bool bind_listing = false;
  std::string transcript;

  ScenarioOverrides Overrides() const {
    ScenarioOverrides o;
    o.seed = seed;
    o.t_comp_offset = t_comp;
    o.t_final_offset = t_final;
    if (bind_listing) o.bind_listing = true;
    return o;
  }
};

void AddCommonFlags(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--seed", f.seed, "Override the scenario seed");
  cmd->add_option("--t-comp", f.t_comp, "Complaint deadline offset in ticks");
  cmd->add_option("--t-final", f.t_final, "Escrow release offset in ticks");
  cmd->add_flag("--bind-listing", f.bind_listing, "Bind adverts to their listing id");
}

int CmdRun(const std::string& file, const CommonFlags& flags) {
  Scenario s = LoadScenario(file);
  flags.Overrides().ApplyTo(s);
  RunResult run = RunScenario(s);
  if (!flags.transcript.empty()) EmitTranscript(run.transcript, flags.transcript);

  const Verdict& v = run.verdict;
  std::cout << "scenario        " << s.name << "\n"
            << "strategies      " << StrategyName(s.seller) << " / "
            << StrategyName(s.buyer) << "\n"
            << "final state     " << ListingStateName(v.final_state) << "\n"
            << "buyer delta     " << v.buyer_delta << "\n"
            << "seller delta    " << v.seller_delta << "\n"
            << "asset recovered " << (v.asset_recovered ? "yes" : "no") << "\n"
            << "complaint       "
            << (v.complaint ? std::string(ComplaintOutcomeName(*v.complaint)) : "none")
            << "\n"
            << "path cost       " << v.path_cost << "\n"
            << "transcript      " << run.transcript.size() << " entries\n";
  const auto mismatches = v.Mismatches(s.expect);
  for (const auto& m : mismatches) std::cout << "MISMATCH " << m << "\n";
  std::cout << (mismatches.empty() ? "PASS" : "FAIL") << "\n";
  return mismatches.empty() ? 0 : 1;
}

int CmdCorpus(const std::string& dir, const CommonFlags& flags, const std::string& format) {
  const CorpusReport report = RunCorpus(dir, flags.Overrides());
  if (format == "json") {
    std::cout << RenderJson(report) << "\n";
  } else {
    std::cout << RenderTable(report) << "\n" << RenderCostTable(report);
  }
  return report.all_passed() && report.cost_ordering_ok() ? 0 : 1;
}

int CmdAdvertise(const std::string& asset_path, uint64_t price, uint64_t seed,
                 bool bind_listing, const std::string& store_dir) {
  std::ifstream in(asset_path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + asset_path);
  Bytes payload((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

  Rng rng(seed);
  Rng creator_rng = rng.Fork("creator");
  const Asset asset = MakeAsset(std::move(payload), SigKeyGen(creator_rng));
  Scenario probe;
  const PreviewFnSpec spec = probe.EffectivePreview(asset.a);
  SetupResult setup = Setup(rng, spec);

  Chain chain;
  BlobStore store = store_dir.empty() ? BlobStore() : BlobStore(store_dir);
  const PartyId seller{"seller"};
  chain.OpenWallet(seller, SigKeyGen(creator_rng).pk);
  Advertisement ad = Advertise(setup.params, setup.prover, asset, price, chain, store, seller,
                               rng, AdvertiseOptions{bind_listing});

  std::cout << "listing         " << ad.listing << "\n"
            << "price           " << price << "\n"
            << "preview         " << spec.Describe() << " ("
            << ad.pub.statement.preview.body.size() << " bytes)\n"
            << "a_pub pointer   " << ad.apub_ptr.Hex() << "\n"
            << "c_k             " << ToHex(ad.pub.statement.c_k.bytes) << "\n"
            << "proof bytes     " << ad.pub.proof.bytes.size() << "\n"
            << "on-chain bytes  " << chain.OnChainBytes(ad.listing) << "\n";
  if (store.root()) std::cout << "store           " << store.root()->string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Advertisement-based fair exchange simulator"};
  app.require_subcommand(1);

  CommonFlags flags;
  std::string path;
  std::string format = "table";

  auto* run = app.add_subcommand("run", "Run one scenario file");
  run->add_option("scenario", path, "Scenario YAML file")->required();
  run->add_option("--transcript", flags.transcript, "Write the transcript as JSON Lines");
  AddCommonFlags(run, flags);

  auto* corpus = app.add_subcommand("corpus", "Run every scenario in a directory");
  corpus->add_option("dir", path, "Scenario directory")->required();
  corpus->add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"table", "json"}));
  AddCommonFlags(corpus, flags);

  std::string report_path = "scenarios";
  auto* report = app.add_subcommand("report", "Pass/fail and cost report for a corpus");
  report->add_option("path", report_path, "Scenario directory or file");
  report->add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"table", "json"}));
  AddCommonFlags(report, flags);

  uint64_t price = 1;
  uint64_t adv_seed = 1;
  bool adv_bind = false;
  std::string store_dir;
  auto* advertise = app.add_subcommand("advertise", "Advertise one asset and print a_pub");
  advertise->add_option("asset", path, "Asset file (PGM images get bilinear_halve)")
      ->required();
  advertise->add_option("--price", price, "Price tk_thr in tokens")->required();
  advertise->add_option("--seed", adv_seed, "Randomness seed");
  advertise->add_flag("--bind-listing", adv_bind, "Bind the advert to its listing id");
  advertise->add_option("--store", store_dir, "Directory for the off-chain store");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return CmdRun(path, flags);
    if (*corpus) return CmdCorpus(path, flags, format);
    if (*report) return CmdCorpus(report_path, flags, format);
    if (*advertise) return CmdAdvertise(path, price, adv_seed, adv_bind, store_dir);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
