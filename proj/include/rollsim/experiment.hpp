// Copyright 2026 The rollsim Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ROLLSIM_EXPERIMENT_HPP
#define ROLLSIM_EXPERIMENT_HPP

#include <string>
#include <vector>

#include "rollsim/config.hpp"

namespace rollsim {

enum class Command { kSimulate, kRectify, kAnalyze, kCalibrate };

struct RunOptions {
  std::string out_dir = ".";
  int threads = 1;
  // simulate: also write the global-shutter oracle and depth maps.
  bool ground_truth = false;
  // rectify: input frame, its sidecar and an optional reference frame.
  // calibrate: input frames (empty to synthesize them from the config).
  std::vector<std::string> inputs;
  std::string sidecar;
  std::string reference;
};

struct RunResult {
  int exit_code = 0;    // 0 ok, 1 runtime failure, 2 invalid configuration
  std::string summary;  // single-line JSON on success
  std::string message;  // diagnostic on failure
};

// Each runner writes its artifacts into options.out_dir (created when
// missing), writes summary.json and report.txt there and returns the summary
// line. They throw on failure; run_command maps exceptions to exit codes.
std::string run_simulate(const ExperimentConfig& config, const RunOptions& options);
std::string run_rectify(const ExperimentConfig& config, const RunOptions& options);
std::string run_analyze(const ExperimentConfig& config, const RunOptions& options);
std::string run_calibrate(const ExperimentConfig& config, const RunOptions& options);

// Loads the configuration (from a file path, or from JSON text when
// `config_is_text`), applies the seed override and runs the command.
RunResult run_command(Command command, const std::string& config,
                      bool config_is_text, const ConfigOverrides& overrides,
                      const RunOptions& options);

// Applies the ROLLSIM_LOG environment variable (trace, debug, info, warn,
// error, off; default warn) to the library logger.
void configure_logging_from_env();

}  // namespace rollsim

#endif  // ROLLSIM_EXPERIMENT_HPP
