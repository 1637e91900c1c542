#ifndef BJORTHO_SUITES_HPP_
#define BJORTHO_SUITES_HPP_

#include "bjortho/core.hpp"
#include "bjortho/json_io.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace bjortho {

struct SuiteFailure {
  std::int64_t case_index = 0;
  std::string digest;
  double margin = 0.0;
  std::vector<std::string> routes;
  // Seed and case index replay the case; inputs are for inspection.
  std::uint64_t seed = 0;
  json inputs;
};

struct SuiteReport {
  std::string suite_name;
  std::int64_t cases_run = 0;
  std::int64_t cases_passed = 0;
  // Smallest normalized slack over the cases run; negative means a failure.
  double worst_margin = 0.0;
  std::vector<SuiteFailure> failures;
  NumericConfig config_echo;
  std::int64_t wall_time_ms = 0;
  std::int64_t samples = 0;
  // Cases whose deciding quantity fell inside a tolerance band, where two
  // correct routes may legitimately disagree. Not part of cases_run.
  std::int64_t excluded_borderline = 0;
  // Per-suite counters (skipped sub-checks, certificate counts, ...).
  std::map<std::string, std::int64_t> counters;

  bool passed() const { return cases_passed == cases_run; }
};

struct SuiteInfo {
  std::string name;
  std::int64_t default_samples;
  std::string summary;
};

const std::vector<SuiteInfo>& registered_suites();

// samples <= 0 selects the suite default.
SuiteReport run_suite(const std::string& name, const NumericConfig& cfg, std::int64_t samples = 0);

// Reruns one case; the report carries the case inputs in `details`.
struct ReplayResult {
  SuiteReport report;
  bool borderline = false;
  json inputs;
  std::vector<std::string> routes;
  double margin = 0.0;
};
ReplayResult replay_case(const std::string& name, const NumericConfig& cfg, std::int64_t case_index);

json to_json(const SuiteReport& r, bool with_timing = false);

}  // namespace bjortho

#endif  // BJORTHO_SUITES_HPP_
