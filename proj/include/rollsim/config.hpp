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

#ifndef ROLLSIM_CONFIG_HPP
#define ROLLSIM_CONFIG_HPP

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rollsim/distortion.hpp"
#include "rollsim/geometry.hpp"
#include "rollsim/motion.hpp"
#include "rollsim/scene.hpp"
#include "rollsim/shutter.hpp"
#include "rollsim/simulator.hpp"

namespace rollsim {

struct RenderSettings {
  double tau0 = 0.0;
  int first_frame = 0;
  int frames = 1;
  int exposure_samples = 1;
  double gamma = 1.0;
  bool jitter = false;
};

struct OutputSettings {
  std::string format = "png";  // "png" or "pgm"
  int bit_depth = 8;           // 8 or 16
  std::string prefix = "frame";
};

struct RectifySettings {
  std::string method = "rotation_only";  // or "known_depth"
  std::optional<int> anchor_row;         // default: middle row
  bool reapply_distortion = true;
  std::string depth_path;  // known_depth: ASCII matrix, one row per line
};

struct ConditioningSettings {
  int points_per_camera = 12;
  double half_fov = 0.4;  // radians
  double near = 2.0;
  double far = 10.0;
  // Yaw of the second camera relative to the first, radians.
  double second_camera_yaw = M_PI / 2.0;
};

struct OptimizerSettings {
  std::string objective = "quadratic";  // quadratic, double_well, rosenbrock
  std::vector<double> curvatures{1.0, 100.0};
  double tilt = 0.3;
  std::vector<double> start{1.0, 1.0};
  // When absent for a quadratic the classical optimal values are used.
  std::optional<double> gamma;
  std::optional<double> beta;
  int max_iters = 10000;
  double grad_tol = 1e-8;
};

struct CalibrationSettings {
  double flash_hz = 200.0;
  int frames = 3;
  int width = 64;
  double noise_sigma = 0.0;
  int exposure_samples = 8;
  std::string waveform = "sinusoid";  // or "square"
  double phase = 0.0;
  bool use_fps = false;  // pass the known fps to resolve t_f
};

struct AnalysisSettings {
  std::string type;  // conditioning, optimizer, calibration
  ConditioningSettings conditioning;
  OptimizerSettings optimizer;
  CalibrationSettings calibration;
};

// Everything one run needs, validated up front. Sections a subcommand does
// not use may be absent.
struct ExperimentConfig {
  std::uint64_t seed = 0;
  int width = 0;
  int height = 0;
  std::optional<Intrinsics> intrinsics;
  RadialDistortion distortion;
  std::optional<ShutterTiming> timing;
  // Names of timing quantities that were solved for ("te_s", ...).
  std::vector<std::string> solved_timing;
  std::optional<MotionModel> motion;
  std::string motion_type;
  std::optional<Scene> scene;
  std::string scene_type;
  RenderSettings render;
  OutputSettings output;
  RectifySettings rectify;
  std::optional<AnalysisSettings> analysis;
  CalibrationSettings calibration;

  // Canonical JSON of the effective configuration and its SHA-256.
  std::string canonical;
  std::string hash;
};

struct ConfigOverrides {
  std::optional<std::uint64_t> seed;
};

// Parses and validates a JSON configuration. Relative paths inside the
// document resolve against base_dir. Throws ConfigError naming the offending
// field (e.g. "timing.tr_s") and rejects unknown keys.
ExperimentConfig parse_config(const std::string& json_text,
                              const std::string& base_dir = ".",
                              const ConfigOverrides& overrides = {});

ExperimentConfig load_config(const std::string& path,
                             const ConfigOverrides& overrides = {});

// Throws ConfigError(section, "required") when the section is absent.
const Intrinsics& require_intrinsics(const ExperimentConfig& c);
const ShutterTiming& require_timing(const ExperimentConfig& c);
const MotionModel& require_motion(const ExperimentConfig& c);
const Scene& require_scene(const ExperimentConfig& c);

}  // namespace rollsim

#endif  // ROLLSIM_CONFIG_HPP
