#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "oscmul/kernels.hpp"

namespace osclab {

struct RunResult {
  nlohmann::ordered_json report;
  std::vector<std::pair<int, double>> rows;  // CSV j,value
  std::optional<oscmul::KernelRecord> kernel;
};

// Runs one experiment on a resolved config. Throws on bad input; nothing is
// written here.
RunResult run_experiment(const std::string& experiment, const std::map<std::string, std::string>& cfg);

std::string csv_text(const std::vector<std::pair<int, double>>& rows);

// Worker count from OSCMUL_THREADS (default 1).
unsigned thread_count();

}  // namespace osclab
