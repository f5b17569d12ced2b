#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "mshuffle/suites.hpp"

namespace mshuffle {

/// Parameters of a single table export.
struct ComputeRequest {
  std::string object;  // S, P, H, Z or lattice
  int i = 1;
  int k = 1;
  int N = 1;
  std::vector<int> alpha;
  std::vector<int> beta;
};

/// Evaluates the requested object at a point drawn from cfg.seed and returns
/// it in the tensor dump schema. Throws ConfigError or BudgetExceeded.
nlohmann::json compute_json(const ComputeRequest& req, const RunConfig& cfg);

/// "121" -> {1, 2, 1}
std::vector<int> parse_labels(const std::string& s);

}  // namespace mshuffle
