#pragma once

// Experiment drivers behind the CLI.

#include "ricci/io.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

namespace ricci {

enum class Mode { SweepCanonicalVariation, VerifyDwp, BuildFunctions, CrossValidateOracle };

Mode parse_mode(const std::string& name);
std::string to_string(Mode mode);

struct ExperimentConfig {
  Mode mode = Mode::CrossValidateOracle;
  json body;  // the full config document
  std::filesystem::path base_dir;  // relative input paths resolve here
  std::filesystem::path out_dir = ".";
  std::uint64_t seed = 20240607;
  double tol = kDefaultSymTol;
};

ExperimentConfig config_from_json(const json& doc, const std::filesystem::path& base_dir = {});

enum ExitStatus : int { kExitPass = 0, kExitInputError = 1, kExitVerdictFailure = 2 };

struct RunOutcome {
  bool verdict = false;
  json summary;
};

/// Writes the mode's artifacts into config.out_dir; any Error means the input could not be processed.
RunOutcome run_experiment(const ExperimentConfig& config);

/// Column layout per mode, for --help.
std::string describe_outputs();

}  // namespace ricci
