#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "mshuffle/fp.hpp"
#include "mshuffle/graded_space.hpp"

namespace mshuffle {

/// Numeric and selection settings shared by every check of a run.
struct RunConfig {
  int n = 1;
  int m = 1;
  int kmax = 3;
  int order = 3;
  std::uint64_t prime = kMersenne61;
  std::uint64_t seed = 0xC0FFEE;
  int trials = 3;
  int jet_order = 6;
  std::string suite = "all";
  std::string out;
  int lattice_max_n = 2;
  bool timing = true;

  /// Throws ConfigError on inconsistent settings.
  void validate() const;
  GradedSpace space() const { return GradedSpace(n, m); }
};

struct CheckResult {
  std::string id;
  std::string suite;
  std::string identity;
  /// pass, conjecture-supported, fail or error
  std::string status;
  int trials = 0;
  int points = 0;
  double failure_bound = 0.0;
  double elapsed = 0.0;
  std::string detail;

  bool ok() const { return status == "pass" || status == "conjecture-supported"; }
};

/// Suite names accepted by run_suite, "all" excluded.
const std::vector<std::string>& suite_names();

/// Runs one suite, or all of them for "all". Results are sorted by id.
std::vector<CheckResult> run_suite(const std::string& name, const RunConfig& cfg);

nlohmann::json config_json(const RunConfig& cfg);
nlohmann::json report_json(const RunConfig& cfg, const std::vector<CheckResult>& checks);

}  // namespace mshuffle
