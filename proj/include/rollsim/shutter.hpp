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

#ifndef ROLLSIM_SHUTTER_HPP
#define ROLLSIM_SHUTTER_HPP

#include <optional>

namespace rollsim {

enum class ShutterMode { kGlobal, kRolling };

enum class SweepDirection { kTopToBottom, kBottomToTop };

// Relative tolerance on 1/fps = H*tr + tf + te.
inline constexpr double kTimingIdentityTolerance = 1e-12;

// Frame timing of a global or rolling shutter sensor. All times in seconds.
//
//   1/fps = height * line_delay + frame_delay + exposure
//
// Rows start exposing line_delay apart (rolling) or all at once (global).
class ShutterTiming {
 public:
  // Throws kInvalidTiming on negative times, non-positive fps or height, or a
  // violated fps identity.
  ShutterTiming(double exposure, double line_delay, double frame_delay,
                int height, double fps, ShutterMode mode = ShutterMode::kRolling,
                SweepDirection sweep = SweepDirection::kTopToBottom);

  double exposure() const { return te_; }
  double line_delay() const { return tr_; }
  double frame_delay() const { return tf_; }
  int height() const { return height_; }
  double fps() const { return fps_; }
  double frame_period() const { return 1.0 / fps_; }
  ShutterMode mode() const { return mode_; }
  SweepDirection sweep() const { return sweep_; }

  // Position of image row y in the readout order (0 is read first).
  double readout_index(double y) const {
    return sweep_ == SweepDirection::kTopToBottom ? y : (height_ - 1) - y;
  }
  // Line delay that affects exposure start; zero for a global shutter.
  double effective_line_delay() const {
    return mode_ == ShutterMode::kRolling ? tr_ : 0.0;
  }

 private:
  double te_;
  double tr_;
  double tf_;
  int height_;
  double fps_;
  ShutterMode mode_;
  SweepDirection sweep_;
};

// Exposure start of row y in frame fi: tau0 + y * tr + fi / fps (rows are
// remapped for a bottom-to-top sweep; a global shutter ignores y).
// Throws kRowOutOfRange for y outside [0, height) and kInvalidArgument for
// fi < 0.
double row_start_time(const ShutterTiming& t, double tau0, int y, int fi);

// Continuous version used by solvers: fractional rows are allowed and not
// range-checked.
double row_start_time_continuous(const ShutterTiming& t, double tau0,
                                 double y, int fi);

// Timing where exactly one of exposure, line_delay, frame_delay, fps is
// unknown (nullopt).
struct PartialTiming {
  std::optional<double> exposure;
  std::optional<double> line_delay;
  std::optional<double> frame_delay;
  std::optional<double> fps;
  int height = 0;
  ShutterMode mode = ShutterMode::kRolling;
  SweepDirection sweep = SweepDirection::kTopToBottom;
};

// Solves the fps identity for the single unknown. Throws kOverconstrained when
// nothing is unknown, kUnderconstrained when more than one is, and
// kInfeasibleTiming when the solution would be negative (or fps infinite).
ShutterTiming complete_timing(const PartialTiming& partial);

}  // namespace rollsim

#endif  // ROLLSIM_SHUTTER_HPP
