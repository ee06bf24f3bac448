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

// rollsim: rolling-shutter simulation, rectification, analysis and
// calibration driven by a JSON configuration file.

#include <CLI11.hpp>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "rollsim/rollsim.h"

namespace {

struct Flags {
  std::string config;
  std::string out = ".";
  std::optional<std::uint64_t> seed;
  int threads = 1;
  bool ground_truth = false;
  std::string reference;
  std::vector<std::string> inputs;
  std::string sidecar;
};

void common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config, "Experiment configuration (JSON)")->required();
  cmd->add_option("--out", f.out, "Output directory")->capture_default_str();
  cmd->add_option("--seed", f.seed, "Override the configuration seed");
  cmd->add_option("--threads", f.threads, "Worker threads")
      ->check(CLI::Range(1, 1024))
      ->capture_default_str();
}

int run(rollsim_command command, const Flags& f) {
  std::vector<const char*> inputs;
  for (const auto& s : f.inputs) inputs.push_back(s.c_str());
  rollsim_run_options o{};
  o.out_dir = f.out.c_str();
  o.threads = f.threads;
  o.ground_truth = f.ground_truth ? 1 : 0;
  o.inputs = inputs.data();
  o.input_count = inputs.size();
  o.sidecar = f.sidecar.empty() ? nullptr : f.sidecar.c_str();
  o.reference = f.reference.empty() ? nullptr : f.reference.c_str();
  o.has_seed = f.seed.has_value() ? 1 : 0;
  o.seed = f.seed.value_or(0);
  char* summary = nullptr;
  char* message = nullptr;
  const int code = rollsim_run(command, f.config.c_str(), 0, &o, &summary, &message);
  if (summary) std::cout << summary << std::endl;
  if (message) std::cerr << "rollsim: " << message << std::endl;
  rollsim_string_free(summary);
  rollsim_string_free(message);
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  rollsim_configure_logging();
  CLI::App app{"Rolling-shutter camera simulator"};
  app.require_subcommand(1);
  app.set_version_flag("--version", rollsim_version());

  Flags f;
  auto* simulate = app.add_subcommand("simulate", "Render rolling-shutter frames");
  common(simulate, f);
  simulate->add_flag("--ground-truth", f.ground_truth,
                     "Also write the global-shutter oracle and depth maps");

  auto* rectify = app.add_subcommand("rectify", "Rectify a rolling-shutter frame");
  common(rectify, f);
  rectify->add_option("--input", f.inputs, "Frame to rectify")->required()->expected(1);
  rectify->add_option("--sidecar", f.sidecar, "Per-row metadata CSV")->required();
  rectify->add_option("--ground-truth", f.reference,
                      "Global-shutter reference frame for the error report");

  auto* analyze = app.add_subcommand("analyze", "Conditioning, calibration or optimizer study");
  common(analyze, f);

  auto* calibrate = app.add_subcommand("calibrate", "Line-rate calibration from flash frames");
  common(calibrate, f);
  calibrate->add_option("--input", f.inputs,
                        "Consecutive flash frames (synthesized when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  if (simulate->parsed()) return run(ROLLSIM_CMD_SIMULATE, f);
  if (rectify->parsed()) return run(ROLLSIM_CMD_RECTIFY, f);
  if (analyze->parsed()) return run(ROLLSIM_CMD_ANALYZE, f);
  return run(ROLLSIM_CMD_CALIBRATE, f);
}
