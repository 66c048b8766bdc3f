#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "maxstab/simulation.hpp"

namespace maxstab::cli {

enum ExitCode : int { kOk = 0, kInputError = 1, kNotConverged = 2 };

/// Resolved options shared by all commands; echoed into every output.
struct RunConfig {
  std::string command;
  std::string input;
  int m = 1;
  int c = 2;
  std::string alternative = "a1";
  double delta = 0.0;
  double u = -kInf;
  double level = 0.05;
  int B = 1000;
  int N = 0;
  std::uint64_t seed = 1;
  double n_blocks_per_year = 1.0;
  int threads = 0;
  std::string output;
  std::string csv;
};

[[nodiscard]] nlohmann::json to_json(const RunConfig& cfg);
[[nodiscard]] nlohmann::json to_json(const GevParams& p);
[[nodiscard]] nlohmann::json to_json(const FitResult& fit);
[[nodiscard]] nlohmann::json to_json(const TestReport& rep);
[[nodiscard]] nlohmann::json to_json(const ProfileCI& ci);

/// Parses a scenario-study description: kind, base, shape, n, m, c, delta,
/// theta, xi (scalars or lists), alternatives, reps, seed, level.
[[nodiscard]] std::vector<ScenarioSpec> expand_study(const nlohmann::json& spec);

/// Entry point shared by the executable and the tests.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace maxstab::cli
