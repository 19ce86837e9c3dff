#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

namespace sympwidth {

/// Fully resolved parameters of one invocation. Every output embeds this so
/// a run can be repeated exactly.
struct RunConfig {
  std::string command;
  nlohmann::json body;  // null when the command takes no body
  nlohmann::json ham;   // null unless a Hamiltonian was given
  int n = 0;
  int radial = 0;
  int angular = 0;
  std::uint64_t mc_samples = 0;  // nonzero selects the Monte-Carlo rule
  std::uint64_t seed = 1;
  std::string output = "json";
  int threads = 0;  // 0 = hardware concurrency
  double tol = 1e-6;
  int starts = 5;
  double h = 1e-3;  // finite-difference time step
  int order = 1;
  double from = 1.0;
  double to = 6.5;
  int steps = 101;
  bool optimize = false;
  int samples = 4096;
  std::vector<int> only;

  bool operator==(const RunConfig&) const = default;
};

nlohmann::json config_to_json(const RunConfig& config);
RunConfig config_from_json(const nlohmann::json& j);

/// Parses command-line arguments (without the program name) into a resolved
/// config. Throws SpecError or CLI11 parse errors.
RunConfig parse_arguments(const std::vector<std::string>& args);

/// Runs a resolved config, writing results to `out` and diagnostics to `err`.
/// Returns the process exit code.
int execute(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse_arguments + execute with the fixed exit-code mapping:
/// 0 ok, 2 spec or parse error, 3 non-finite result, 4 failed check, 1 other.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sympwidth
