#pragma once

#include <chrono>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "kloo/bigint.hpp"
#include "kloo/envelope.hpp"

namespace kloo {

/// Pass/total counter for one check, with the first few failing instances.
struct Tally {
  std::string label;
  u64 passed = 0;
  u64 total = 0;
  /// Reported, but does not decide the suite verdict.
  bool informational = false;
  std::vector<std::string> failures;

  void record(bool ok, const std::function<std::string()>& describe);
  bool ok() const { return passed == total; }
  std::string line() const;
};

/// Tallies kept in first-use order.
class TallyList {
 public:
  Tally& get(const std::string& label, bool informational = false);
  const std::vector<Tally>& items() const { return items_; }
  void merge(const TallyList& other);
  bool ok() const;

 private:
  std::vector<Tally> items_;
  std::map<std::string, size_t> index_;
};

struct SuiteReport {
  std::string name;
  TallyList checks;
  /// Envelope dominance over every instance the suite evaluated.
  TallyList envelopes;
  u64 skipped = 0;

  bool checks_ok() const { return checks.ok() && skipped == 0; }
  bool envelopes_ok() const { return envelopes.ok(); }
  std::string text(bool with_envelopes = true) const;
  nlohmann::json to_json() const;
};

struct CampaignOptions {
  u64 seed = 42;
  /// Wall-clock budget per suite; 0 means unlimited. Instances not started in time are skipped.
  double budget_seconds = 0;
};

/// Instances are skipped once the deadline has passed.
class Budget {
 public:
  explicit Budget(double seconds);
  bool expired() const;

 private:
  std::optional<std::chrono::steady_clock::time_point> deadline_;
};

SuiteReport suite_reduction(const CampaignOptions& opt);
SuiteReport suite_salie(const CampaignOptions& opt);
SuiteReport suite_vanishing(const CampaignOptions& opt);
SuiteReport suite_counting(const CampaignOptions& opt);
SuiteReport suite_centralizer(const CampaignOptions& opt);
SuiteReport suite_gauss(const CampaignOptions& opt);
SuiteReport suite_sylvester(const CampaignOptions& opt);

/// evaluators, counting, gauss, bounds or all.
std::vector<SuiteReport> run_verify(const std::string& suite, const CampaignOptions& opt);

/// Envelope tallies of several reports under one heading.
SuiteReport envelope_summary(const std::vector<SuiteReport>& reports);

struct Grid {
  std::vector<int> n;
  std::vector<u64> p;
  std::vector<int> k;
  /// Random pairs per (n, p, k); absent means every pair.
  std::optional<u64> samples;
  std::string method = "brute";
};

/// "n=2;p=3,5;k=1..3;samples=20"; keys may also be separated by commas.
Grid parse_grid(const std::string& spec);

/// One CSV row per instance, ordered by (n, p, k, sample index).
std::string table_csv(const Grid& grid, const CampaignOptions& opt);

/// Decimal text with 15 significant digits; -0 prints as 0.
std::string fmt15(double x);

}  // namespace kloo
