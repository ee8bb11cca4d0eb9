#include <algorithm>
#include <future>
#include <iomanip>
#include <sstream>

#include "json.hpp"

#include "afe/error.h"
#include "afe/harness.h"

namespace afe {

namespace {

std::vector<std::filesystem::path> ScenarioFiles(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  if (fs::is_regular_file(dir)) return {dir};
  if (!fs::is_directory(dir)) {
    throw Error(ErrorCode::kIo, "no such scenario directory: " + dir.string());
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const auto ext = entry.path().extension();
    if (ext == ".yaml" || ext == ".yml") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  return files;
}

ScenarioResult LoadAndEvaluate(const std::filesystem::path& file,
                               const ScenarioOverrides& overrides) {
  try {
    Scenario s = LoadScenario(file);
    overrides.ApplyTo(s);
    return EvaluateScenario(s, file);
  } catch (const std::exception& e) {
    ScenarioResult r;
    r.name = file.stem().string();
    r.file = file;
    r.error = e.what();
    return r;
  }
}

std::string ComplaintLabel(const std::optional<ComplaintOutcome>& c) {
  return c ? std::string(ComplaintOutcomeName(*c)) : "-";
}

}  // namespace

bool CorpusReport::all_passed() const {
  return std::all_of(results.begin(), results.end(),
                     [](const ScenarioResult& r) { return r.passed; });
}

bool CorpusReport::cost_ordering_ok() const {
  return std::all_of(results.begin(), results.end(), [](const ScenarioResult& r) {
    return r.cost_ordering_ok.value_or(true);
  });
}

ScenarioResult EvaluateScenario(const Scenario& s, const std::filesystem::path& file) {
  ScenarioResult r;
  r.name = s.name;
  r.file = file;
  try {
    RunResult run = RunScenario(s);
    r.verdict = run.verdict;
    r.mismatches = run.verdict.Mismatches(s.expect);
    r.confirm_path_cost = s.costs.value_or(CostModel::Default()).ConfirmPathTotal();
    if (run.verdict.complaint) {
      r.cost_ordering_ok = run.verdict.path_cost > r.confirm_path_cost;
      if (!*r.cost_ordering_ok) r.mismatches.push_back("complaint path not dearer than confirm");
    }
    r.passed = r.mismatches.empty();
  } catch (const std::exception& e) {
    r.error = e.what();
    r.passed = false;
  }
  return r;
}

CorpusReport RunCorpus(const std::filesystem::path& dir, const ScenarioOverrides& overrides,
                       bool parallel) {
  const auto files = ScenarioFiles(dir);
  CorpusReport report;
  if (parallel && files.size() > 1) {
    std::vector<std::future<ScenarioResult>> jobs;
    jobs.reserve(files.size());
    for (const auto& f : files) {
      jobs.push_back(std::async(std::launch::async, LoadAndEvaluate, f, overrides));
    }
    for (auto& j : jobs) report.results.push_back(j.get());
  } else {
    for (const auto& f : files) report.results.push_back(LoadAndEvaluate(f, overrides));
  }
  for (const auto& row : CostReportRows()) report.cost_totals[row] = 0;
  for (const auto& r : report.results) {
    for (const auto& [op, units] : r.verdict.costs) {
      if (report.cost_totals.count(op)) report.cost_totals[op] += units;
    }
  }
  return report;
}

std::string RenderTable(const CorpusReport& report) {
  std::ostringstream out;
  out << std::left << std::setw(28) << "scenario" << std::setw(8) << "result"
      << std::setw(12) << "state" << std::setw(8) << "buyer" << std::setw(8) << "seller"
      << std::setw(24) << "complaint" << "path_cost\n";
  for (const auto& r : report.results) {
    out << std::left << std::setw(28) << r.name << std::setw(8)
        << (r.passed ? "PASS" : "FAIL");
    if (!r.error.empty()) {
      out << "error: " << r.error << "\n";
      continue;
    }
    const Verdict& v = r.verdict;
    out << std::setw(12) << ListingStateName(v.final_state) << std::setw(8)
        << v.buyer_delta << std::setw(8) << v.seller_delta << std::setw(24)
        << ComplaintLabel(v.complaint) << v.path_cost << "\n";
    for (const auto& m : r.mismatches) out << "    " << m << "\n";
  }
  const size_t passed = std::count_if(report.results.begin(), report.results.end(),
                                      [](const ScenarioResult& r) { return r.passed; });
  out << passed << "/" << report.results.size() << " scenarios matched\n";
  return out.str();
}

std::string RenderCostTable(const CorpusReport& report) {
  std::ostringstream out;
  out << std::left << std::setw(14) << "function" << "cost_units\n";
  for (const auto& row : CostReportRows()) {
    auto it = report.cost_totals.find(row);
    out << std::left << std::setw(14) << row
        << (it == report.cost_totals.end() ? 0 : it->second) << "\n";
  }
  return out.str();
}

std::string RenderCostJson(const CorpusReport& report) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& row : CostReportRows()) {
    auto it = report.cost_totals.find(row);
    j[row] = it == report.cost_totals.end() ? 0 : it->second;
  }
  return j.dump(2);
}

std::string RenderJson(const CorpusReport& report) {
  using nlohmann::ordered_json;
  ordered_json scenarios = ordered_json::array();
  for (const auto& r : report.results) {
    ordered_json s;
    s["name"] = r.name;
    s["file"] = r.file.string();
    s["passed"] = r.passed;
    if (!r.error.empty()) {
      s["error"] = r.error;
    } else {
      const Verdict& v = r.verdict;
      s["state"] = ListingStateName(v.final_state);
      s["buyer_delta"] = v.buyer_delta;
      s["seller_delta"] = v.seller_delta;
      s["escrow_residue"] = v.escrow_residue;
      s["asset_recovered"] = v.asset_recovered;
      s["complaint"] = v.complaint ? ordered_json(ComplaintOutcomeName(*v.complaint))
                                   : ordered_json(nullptr);
      s["path_cost"] = v.path_cost;
      s["confirm_path_cost"] = r.confirm_path_cost;
      if (r.cost_ordering_ok) s["cost_ordering_ok"] = *r.cost_ordering_ok;
      s["costs"] = v.costs;
      s["mismatches"] = r.mismatches;
    }
    scenarios.push_back(std::move(s));
  }
  ordered_json j;
  j["all_passed"] = report.all_passed();
  j["cost_ordering_ok"] = report.cost_ordering_ok();
  j["scenarios"] = std::move(scenarios);
  j["costs"] = nlohmann::ordered_json::parse(RenderCostJson(report));
  return j.dump(2);
}

}  // namespace afe
