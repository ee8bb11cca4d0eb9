#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <fstream>
#include <sstream>

#include "afe/error.h"
#include "afe/harness.h"

namespace afe {

namespace {

constexpr uint64_t kDefaultPrefixPreview = 64;

struct StrategyInfo {
  Strategy strategy;
  std::string_view name;
  std::optional<Role> role;
};

constexpr StrategyInfo kStrategies[] = {
    {Strategy::kHonest, "honest", std::nullopt},
    {Strategy::kSellerTimeout, "seller_timeout", Role::kSeller},
    {Strategy::kSellerWrongKey, "seller_wrong_key", Role::kSeller},
    {Strategy::kSellerWrongRandomness, "seller_wrong_randomness", Role::kSeller},
    {Strategy::kSellerGarbageCiphertext, "seller_garbage_ciphertext", Role::kSeller},
    {Strategy::kSellerReplayAdvert, "seller_replay_advert", Role::kSeller},
    {Strategy::kBuyerFalseComplaint, "buyer_false_complaint", Role::kBuyer},
    {Strategy::kBuyerWrongSk, "buyer_wrong_sk", Role::kBuyer},
    {Strategy::kBuyerUnderbid, "buyer_underbid", Role::kBuyer},
};

template <typename T>
T Get(const YAML::Node& node, const char* key, const std::string& ctx) {
  try {
    return node[key].as<T>();
  } catch (const YAML::Exception& e) {
    throw Error(ErrorCode::kConfig, ctx + "." + key + ": " + e.what());
  }
}

uint64_t GetU64(const YAML::Node& node, const char* key, const std::string& ctx) {
  const long long v = Get<long long>(node, key, ctx);
  if (v < 0) throw Error(ErrorCode::kConfig, ctx + "." + key + " must be non-negative");
  return static_cast<uint64_t>(v);
}

void RejectUnknownKeys(const YAML::Node& node, std::initializer_list<std::string_view> known,
                       const std::string& ctx) {
  for (const auto& kv : node) {
    const std::string key = kv.first.as<std::string>();
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw Error(ErrorCode::kConfig, "unknown key '" + key + "' in " + ctx);
    }
  }
}

}  // namespace

std::string_view StrategyName(Strategy s) {
  for (const auto& info : kStrategies) {
    if (info.strategy == s) return info.name;
  }
  return "?";
}

Strategy ParseStrategy(std::string_view name) {
  for (const auto& info : kStrategies) {
    if (info.name == name) return info.strategy;
  }
  throw Error(ErrorCode::kConfig, "unknown strategy '" + std::string(name) + "'");
}

std::optional<Role> StrategyRole(Strategy s) {
  for (const auto& info : kStrategies) {
    if (info.strategy == s) return info.role;
  }
  return std::nullopt;
}

const std::vector<Strategy>& MaliciousSellerStrategies() {
  static const std::vector<Strategy> v = {
      Strategy::kSellerTimeout, Strategy::kSellerWrongKey, Strategy::kSellerWrongRandomness,
      Strategy::kSellerGarbageCiphertext, Strategy::kSellerReplayAdvert};
  return v;
}

const std::vector<Strategy>& MaliciousBuyerStrategies() {
  static const std::vector<Strategy> v = {Strategy::kBuyerFalseComplaint,
                                          Strategy::kBuyerWrongSk, Strategy::kBuyerUnderbid};
  return v;
}

void Scenario::Validate() const {
  if (auto r = StrategyRole(seller); r && *r != Role::kSeller) {
    throw Error(ErrorCode::kConfig, "strategy " + std::string(StrategyName(seller)) +
                                        " cannot play the seller");
  }
  if (auto r = StrategyRole(buyer); r && *r != Role::kBuyer) {
    throw Error(ErrorCode::kConfig, "strategy " + std::string(StrategyName(buyer)) +
                                        " cannot play the buyer");
  }
  if (tk_thr == 0) throw Error(ErrorCode::kConfig, "price must be at least 1");
  if (!(0 < timeline.t_comp_offset && timeline.t_comp_offset < timeline.t_final_offset)) {
    throw Error(ErrorCode::kConfig, "timeline needs 0 < t_comp < t_final offsets");
  }
  if (buyer_funds && *buyer_funds < tk_thr) {
    throw Error(ErrorCode::kConfig, "buyer_funds below the price");
  }
  if (asset.kind == AssetSource::Kind::kGenerated && asset.size == 0) {
    throw Error(ErrorCode::kConfig, "generated asset size must be positive");
  }
  if (costs) costs->Validate();
}

PreviewFnSpec Scenario::EffectivePreview(ByteView payload) const {
  if (preview) return *preview;
  try {
    Image img = PgmParse(payload);
    if (img.width % 2 == 0 && img.height % 2 == 0) return PreviewFnSpec::BilinearHalve();
  } catch (const Error&) {
  }
  return PreviewFnSpec::TruncatePrefix(kDefaultPrefixPreview);
}

void ScenarioOverrides::ApplyTo(Scenario& s) const {
  if (seed) s.seed = *seed;
  if (t_comp_offset) s.timeline.t_comp_offset = *t_comp_offset;
  if (t_final_offset) s.timeline.t_final_offset = *t_final_offset;
  if (bind_listing) s.bind_listing = *bind_listing;
}

Scenario ParseScenario(std::string_view yaml_text, const std::filesystem::path& base_dir) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(yaml_text));
  } catch (const YAML::Exception& e) {
    throw Error(ErrorCode::kConfig, std::string("scenario YAML: ") + e.what());
  }
  if (!root.IsMap()) throw Error(ErrorCode::kConfig, "scenario must be a mapping");
  RejectUnknownKeys(root,
                    {"name", "seed", "seller", "buyer", "price", "buyer_funds", "asset",
                     "preview", "timeline", "bind_listing", "costs", "expect"},
                    "scenario");

  Scenario s;
  const std::string ctx = "scenario";
  if (root["name"]) s.name = Get<std::string>(root, "name", ctx);
  if (root["seed"]) s.seed = GetU64(root, "seed", ctx);
  if (root["seller"]) s.seller = ParseStrategy(Get<std::string>(root, "seller", ctx));
  if (root["buyer"]) s.buyer = ParseStrategy(Get<std::string>(root, "buyer", ctx));
  if (root["price"]) s.tk_thr = GetU64(root, "price", ctx);
  if (root["buyer_funds"]) s.buyer_funds = GetU64(root, "buyer_funds", ctx);
  if (root["bind_listing"]) s.bind_listing = Get<bool>(root, "bind_listing", ctx);
  if (root["preview"]) {
    s.preview = PreviewFnSpec::FromDescription(Get<std::string>(root, "preview", ctx));
  }

  if (const YAML::Node a = root["asset"]) {
    RejectUnknownKeys(a, {"kind", "size", "width", "height", "path"}, "asset");
    const std::string kind = a["kind"] ? Get<std::string>(a, "kind", "asset") : "generated";
    if (kind == "generated") {
      s.asset.kind = AssetSource::Kind::kGenerated;
      if (a["size"]) s.asset.size = GetU64(a, "size", "asset");
    } else if (kind == "image") {
      s.asset.kind = AssetSource::Kind::kGeneratedImage;
      if (a["width"]) s.asset.width = static_cast<uint32_t>(GetU64(a, "width", "asset"));
      if (a["height"]) s.asset.height = static_cast<uint32_t>(GetU64(a, "height", "asset"));
    } else if (kind == "file") {
      s.asset.kind = AssetSource::Kind::kFile;
      std::filesystem::path p = Get<std::string>(a, "path", "asset");
      s.asset.path = p.is_absolute() || base_dir.empty() ? p : base_dir / p;
    } else {
      throw Error(ErrorCode::kConfig, "unknown asset kind '" + kind + "'");
    }
  }

  if (const YAML::Node t = root["timeline"]) {
    RejectUnknownKeys(t, {"t_comp", "t_final", "seller_delay"}, "timeline");
    if (t["t_comp"]) s.timeline.t_comp_offset = GetU64(t, "t_comp", "timeline");
    if (t["t_final"]) s.timeline.t_final_offset = GetU64(t, "t_final", "timeline");
    if (t["seller_delay"]) s.timeline.seller_delay = GetU64(t, "seller_delay", "timeline");
  }

  if (const YAML::Node c = root["costs"]) {
    std::stringstream ss;
    ss << c;
    s.costs = CostModel::Parse(ss.str());
  }

  if (const YAML::Node e = root["expect"]) {
    RejectUnknownKeys(
        e, {"state", "buyer_delta", "seller_delta", "asset_recovered", "buyer_bid", "complaint"},
        "expect");
    const std::string ectx = "expect";
    if (e["state"]) s.expect.state = ParseListingState(Get<std::string>(e, "state", ectx));
    if (e["buyer_delta"]) s.expect.buyer_delta = Get<int64_t>(e, "buyer_delta", ectx);
    if (e["seller_delta"]) s.expect.seller_delta = Get<int64_t>(e, "seller_delta", ectx);
    if (e["asset_recovered"]) s.expect.asset_recovered = Get<bool>(e, "asset_recovered", ectx);
    if (e["buyer_bid"]) s.expect.buyer_bid = Get<bool>(e, "buyer_bid", ectx);
    if (e["complaint"]) {
      const std::string c = Get<std::string>(e, "complaint", ectx);
      s.expect.complaint = c == "none" ? std::optional<ComplaintOutcome>()
                                       : std::optional(ParseComplaintOutcome(c));
    }
  }

  s.Validate();
  return s;
}

Scenario LoadScenario(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + file.string());
  std::stringstream ss;
  ss << in.rdbuf();
  Scenario s = ParseScenario(ss.str(), file.parent_path());
  if (s.name == "scenario") s.name = file.stem().string();
  return s;
}

}  // namespace afe
