#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace pfm {

struct SuiteOptions {
  std::uint64_t seed = 0;
  unsigned threads = 0;     // brute-force search workers, 0 = hardware
  std::vector<int> only;    // criterion ids to run; empty runs 1..8
  int samples = 100;        // random points per instance in the automorphy criteria
  // Tolerances of the floating-point criteria.
  double cocycle_tolerance = 1e-9;
  double gauge_tolerance = 1e-9;
  double fd_tolerance = 1e-5;
  double constant_tolerance = 1e-13;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string summary;  // one line
  nlohmann::json details;
};

struct SuiteReport {
  std::uint64_t seed = 0;
  std::vector<CriterionResult> criteria;
  [[nodiscard]] bool pass() const;
  [[nodiscard]] nlohmann::json to_json() const;
};

// Criteria 1..8. Each criterion draws from its own generator derived from
// the seed, so running a subset does not change the instances.
SuiteReport run_suite(const SuiteOptions& options);

// Criterion 9: a second run with the same options serialises to the same
// bytes as `first`.
CriterionResult determinism_check(const SuiteOptions& options, const SuiteReport& first);

}  // namespace pfm
