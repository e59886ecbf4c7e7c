#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace moebius::validation {

/// Numerical settings and calibrated tolerances for the verification suites.
struct Config {
  int nodes = 256;
  double step = 1e-4;
  std::uint64_t seed = 20120659;

  // Criticality thresholds, calibrated for motion step 1e-3 and variation
  // step 1e-4.
  double critical_tol = 1e-5;
  double noncritical_floor = 1e-2;
};

struct Check {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string detail;
};

struct Report {
  std::string suite;
  std::vector<Check> checks;

  [[nodiscard]] bool pass() const;
  [[nodiscard]] nlohmann::json to_json() const;
};

/// Names accepted by run(), in execution order; "all" runs every suite.
const std::vector<std::string>& suite_names();

bool is_suite(const std::string& name);

/// Throws std::invalid_argument for unknown suite names.
Report run(const std::string& suite, const Config& config);

}  // namespace moebius::validation
