#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace rz {

enum ExitCode : int { kExitOk = 0, kExitNegative = 1, kExitUsage = 2, kExitNumerical = 3 };

struct RunConfig {
  std::uint64_t seed = 0;
  double psd_tol = 1e-8;
  double root_tol = 1e-7;
  double gauge_tol = 1e-9;
  int max_vars = 16;
  int max_degree = 12;
  int max_cutoff = 12;
  std::string format = "json";
};

/// Reads a JSON RunConfig; missing keys keep the values already in `base`.
RunConfig load_run_config(const std::string& path, RunConfig base);
void validate(const RunConfig& c);

/// Runs `rz` with args (without the program name). Reports go to `out`,
/// {"error": {"code", "message"}} objects to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rz
