#pragma once

#include "json.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ymgap::cli {

struct RunConfig {
  int n = 4;
  double c = 1.0;
  std::uint64_t seed = 0;
  long samples = 100000;
  double tol = 1e-6;
  double grid_h = 1e-3;
  double truncation_r = 20.0;
  std::optional<std::string> out_path;

  int workers = 1;
  int restarts = 20;
  int max_iters = 5000;
  std::string duality = "sd";
  std::optional<std::string> trace_path;
};

/// Invalid subcommand or configuration; maps to exit status 2.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct RunOutcome {
  int exit_code;  // 0 iff every contracted check passed, 1 otherwise
  nlohmann::json report;
};

inline constexpr int kSchemaVersion = 1;

const std::vector<std::string>& subcommands();

/// Runs one subcommand. The report does not depend on `workers`.
RunOutcome run(const std::string& subcommand, const RunConfig& config);

/// Canonical text form of a report (two-space indent, trailing newline).
std::string render(const nlohmann::json& report);

}  // namespace ymgap::cli
