#pragma once

#include <set>
#include <string>
#include <vector>

#include "mixhom/harness/config.hpp"
#include "mixhom/harness/report.hpp"

namespace mixhom::harness {

struct ExperimentInfo {
  std::string name;
  std::string summary;
  /// Keys accepted in addition to the common ones.
  std::set<std::string> keys;
};

/// Keys every experiment accepts: experiment, description, output_dir, n, N, L, seed.
const std::set<std::string>& common_keys();

const std::vector<ExperimentInfo>& experiments();

/// Throws ConfigError with a field-level message. Does not run anything.
void validate(const Config& c);

/// Validates, then runs. Numerical failures propagate as mixhom::InvalidArgument or std::runtime_error.
Report run_experiment(const Config& c);

}  // namespace mixhom::harness
