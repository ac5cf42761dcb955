#pragma once

#include <string>
#include <vector>

#include "cgolab/config.hpp"
#include "cgolab/report.hpp"

namespace cgolab {

struct CheckInfo {
  std::string id;        // C1 .. C12
  std::string name;
  std::string scenario;  // the scenario that owns the check
};

/// All checks in report order.
const std::vector<CheckInfo>& all_checks();

/// verify-cauchy, verify-kernels, verify-stationary-phase, verify-gauge,
/// verify-dtn, cgo-sweep, full-suite.
const std::vector<std::string>& scenario_names();

/// Check ids run by a scenario. Throws ConfigError for an unknown name.
std::vector<std::string> checks_for(const std::string& scenario);

struct CheckResult {
  Record record;
  std::vector<Table> tables;
};

/// Runs one check. Library errors are caught and stored in record.error.
CheckResult run_check(const std::string& id, const Config& cfg);

/// Runs the scenario's checks on a pool of cfg.jobs() workers and assembles
/// the report in check order.
Report run_scenario(const std::string& scenario, const Config& cfg);

}  // namespace cgolab
