#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "afe/assets.h"
#include "afe/chain.h"
#include "afe/protocol.h"

namespace afe {

enum class Role { kSeller, kBuyer };

// Each non-honest strategy deviates from exactly one honest step.
enum class Strategy {
  kHonest,
  kSellerTimeout,            // never posts e_k
  kSellerWrongKey,           // e_k carries a fresh k_a'
  kSellerWrongRandomness,    // e_k carries k_a with a fresh r'
  kSellerGarbageCiphertext,  // e_k is random bytes
  kSellerReplayAdvert,       // relists someone else's a_pub
  kBuyerFalseComplaint,      // complains although e_k opens c_k
  kBuyerWrongSk,             // complains with a secret key that is not sk_B
  kBuyerUnderbid,            // locks tk_thr - 1 tokens
};

std::string_view StrategyName(Strategy s);
Strategy ParseStrategy(std::string_view name);
// nullopt for kHonest, which either role may play.
std::optional<Role> StrategyRole(Strategy s);
const std::vector<Strategy>& MaliciousSellerStrategies();
const std::vector<Strategy>& MaliciousBuyerStrategies();

struct AssetSource {
  enum class Kind { kGenerated, kFile, kGeneratedImage };
  Kind kind = Kind::kGenerated;
  size_t size = 4096;        // kGenerated: payload bytes
  uint32_t width = 128;      // kGeneratedImage
  uint32_t height = 128;
  std::filesystem::path path;  // kFile
};

struct Timeline {
  uint64_t t_comp_offset = 10;
  uint64_t t_final_offset = 20;
  uint64_t seller_delay = 1;
};

struct ExpectedVerdict {
  std::optional<ListingState> state;
  std::optional<int64_t> buyer_delta;
  std::optional<int64_t> seller_delta;
  std::optional<bool> asset_recovered;
  std::optional<bool> buyer_bid;
  // "none" in files maps to an engaged optional holding nullopt.
  std::optional<std::optional<ComplaintOutcome>> complaint;
};

struct Scenario {
  std::string name = "scenario";
  uint64_t seed = 1;
  Strategy seller = Strategy::kHonest;
  Strategy buyer = Strategy::kHonest;
  AssetSource asset;
  std::optional<PreviewFnSpec> preview;  // default depends on the asset kind
  uint64_t tk_thr = 3;
  std::optional<uint64_t> buyer_funds;   // default tk_thr + 2
  Timeline timeline;
  bool bind_listing = false;
  std::optional<CostModel> costs;
  ExpectedVerdict expect;

  // Throws kConfig for a strategy in the wrong role or an invalid timeline.
  void Validate() const;
  // Preview used when none is given: bilinear_halve for PGM payloads,
  // truncate_prefix(64) otherwise.
  PreviewFnSpec EffectivePreview(ByteView payload) const;
};

// YAML scenario file; relative asset paths resolve against the file's
// directory.
Scenario LoadScenario(const std::filesystem::path& file);
Scenario ParseScenario(std::string_view yaml_text,
                       const std::filesystem::path& base_dir = {});

struct ScenarioOverrides {
  std::optional<uint64_t> seed;
  std::optional<uint64_t> t_comp_offset;
  std::optional<uint64_t> t_final_offset;
  std::optional<bool> bind_listing;

  void ApplyTo(Scenario& s) const;
};

struct Verdict {
  ListingState final_state = ListingState::kListed;
  int64_t buyer_delta = 0;
  int64_t seller_delta = 0;
  uint64_t escrow_residue = 0;
  bool asset_recovered = false;
  bool buyer_evaluated = false;
  bool buyer_bid = false;
  bool seller_aborted = false;  // honest seller output bottom
  std::optional<ComplaintOutcome> complaint;
  std::optional<uint64_t> complaint_seq;
  bool conservation_ok = false;
  std::map<std::string, uint64_t> costs;  // per contract function
  uint64_t path_cost = 0;  // Mint + Bid + Accept + Confirm + Complain charged

  // Field-by-field differences from `expect`; empty when it matches.
  std::vector<std::string> Mismatches(const ExpectedVerdict& expect) const;
  friend bool operator==(const Verdict&, const Verdict&) = default;
};

// Secrets and public material of one run, kept for post-hoc checks.
struct RunArtifacts {
  Params params;
  Asset asset;
  AdvertPrivate prv;   // of the advert the buyer traded against
  AdvertPublic pub;
  ListingId listing = 0;
  std::vector<Bytes> offstore_blobs;
  std::optional<Scalar> buyer_sk;
};

struct RunResult {
  Verdict verdict;
  std::vector<TranscriptEntry> transcript;
  RunArtifacts artifacts;
};

// One deterministic single-threaded simulation.
RunResult RunScenario(const Scenario& s);

// Leak scan over every broadcast payload (transcript and off-chain blobs):
// k_a, r, and any `window`-byte run of the plaintext asset that the preview
// does not already reveal.
struct SecrecyReport {
  bool k_a_found = false;
  bool r_found = false;
  size_t leaked_windows = 0;
  bool clean() const { return !k_a_found && !r_found && leaked_windows == 0; }
};
SecrecyReport ScanForSecrets(const std::vector<TranscriptEntry>& transcript,
                             const std::vector<Bytes>& blobs, const AdvertPrivate& prv,
                             ByteView asset_plaintext, ByteView preview_body,
                             size_t window = 16);

// Re-runs the arbiter on the complaint recorded in `transcript`.
ComplaintOutcome ReplayComplaint(const std::vector<TranscriptEntry>& transcript,
                                 uint64_t complaint_seq);

void EmitTranscript(const std::vector<TranscriptEntry>& transcript,
                    const std::filesystem::path& path);

// --- corpus -----------------------------------------------------------------

struct ScenarioResult {
  std::string name;
  std::filesystem::path file;
  bool passed = false;
  std::vector<std::string> mismatches;
  std::string error;
  Verdict verdict;
  uint64_t confirm_path_cost = 0;
  // Complaint scenarios only: path cost exceeds the optimistic path.
  std::optional<bool> cost_ordering_ok;
};

struct CorpusReport {
  std::vector<ScenarioResult> results;
  std::map<std::string, uint64_t> cost_totals;

  bool all_passed() const;
  bool cost_ordering_ok() const;
};

ScenarioResult EvaluateScenario(const Scenario& s, const std::filesystem::path& file = {});
// Runs every *.yaml / *.yml file in `dir` (sorted by name), or `dir` itself
// when it is a file. Per-scenario failures are collected, not thrown.
CorpusReport RunCorpus(const std::filesystem::path& dir,
                       const ScenarioOverrides& overrides = {}, bool parallel = true);

std::string RenderTable(const CorpusReport& report);
std::string RenderJson(const CorpusReport& report);
std::string RenderCostTable(const CorpusReport& report);
std::string RenderCostJson(const CorpusReport& report);

}  // namespace afe
