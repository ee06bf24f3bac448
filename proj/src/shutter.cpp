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

#include "rollsim/shutter.hpp"

#include <cmath>
#include <sstream>

#include "rollsim/error.hpp"

namespace rollsim {

namespace {

bool non_negative_finite(double v) { return std::isfinite(v) && v >= 0.0; }

}  // namespace

ShutterTiming::ShutterTiming(double exposure, double line_delay,
                             double frame_delay, int height, double fps,
                             ShutterMode mode, SweepDirection sweep)
    : te_(exposure), tr_(line_delay), tf_(frame_delay), height_(height),
      fps_(fps), mode_(mode), sweep_(sweep) {
  if (!non_negative_finite(te_) || !non_negative_finite(tr_) ||
      !non_negative_finite(tf_)) {
    throw Error(ErrorCode::kInvalidTiming,
                "exposure, line delay and frame delay must be non-negative");
  }
  if (!(std::isfinite(fps_) && fps_ > 0.0)) {
    throw Error(ErrorCode::kInvalidTiming, "fps must be positive");
  }
  if (height_ <= 0) {
    throw Error(ErrorCode::kInvalidTiming, "height must be positive");
  }
  const double period = 1.0 / fps_;
  const double budget = height_ * tr_ + tf_ + te_;
  if (std::abs(period - budget) > kTimingIdentityTolerance * period) {
    std::ostringstream os;
    os.precision(17);
    os << "timing violates 1/fps = H*tr + tf + te (1/fps = " << period
       << ", H*tr + tf + te = " << budget << ")";
    throw Error(ErrorCode::kInvalidTiming, os.str());
  }
}

double row_start_time_continuous(const ShutterTiming& t, double tau0, double y,
                                 int fi) {
  return tau0 + t.readout_index(y) * t.effective_line_delay() +
         fi * t.frame_period();
}

double row_start_time(const ShutterTiming& t, double tau0, int y, int fi) {
  if (y < 0 || y >= t.height()) {
    throw Error(ErrorCode::kRowOutOfRange, "row index outside the image");
  }
  if (fi < 0) {
    throw Error(ErrorCode::kInvalidArgument, "frame index must be >= 0");
  }
  return row_start_time_continuous(t, tau0, y, fi);
}

ShutterTiming complete_timing(const PartialTiming& p) {
  const int unknowns = !p.exposure + !p.line_delay + !p.frame_delay + !p.fps;
  if (unknowns == 0) {
    throw Error(ErrorCode::kOverconstrained,
                "no timing quantity is marked unknown");
  }
  if (unknowns > 1) {
    throw Error(ErrorCode::kUnderconstrained,
                "more than one timing quantity is unknown");
  }
  if (p.height <= 0) {
    throw Error(ErrorCode::kInvalidTiming, "height must be positive");
  }
  const double H = p.height;

  const auto settle = [](double value, double period, const char* name) {
    // Rounding can push an exact zero slightly negative.
    if (value < 0.0 && value >= -kTimingIdentityTolerance * period) return 0.0;
    if (!(value >= 0.0) || !std::isfinite(value)) {
      std::ostringstream os;
      os << "solved " << name << " = " << value << " is negative";
      throw Error(ErrorCode::kInfeasibleTiming, os.str());
    }
    return value;
  };

  double te = p.exposure.value_or(0.0);
  double tr = p.line_delay.value_or(0.0);
  double tf = p.frame_delay.value_or(0.0);
  double fps = p.fps.value_or(1.0);

  if (!p.fps) {
    const double budget = H * tr + tf + te;
    if (!(budget > 0.0)) {
      throw Error(ErrorCode::kInfeasibleTiming,
                  "zero frame time gives an infinite frame rate");
    }
    fps = 1.0 / budget;
  } else {
    if (!(fps > 0.0)) {
      throw Error(ErrorCode::kInvalidTiming, "fps must be positive");
    }
    const double period = 1.0 / fps;
    if (!p.frame_delay) {
      tf = settle(period - H * tr - te, period, "frame delay");
    } else if (!p.exposure) {
      te = settle(period - H * tr - tf, period, "exposure");
    } else {
      tr = settle((period - tf - te) / H, period, "line delay");
    }
  }
  return ShutterTiming(te, tr, tf, p.height, fps, p.mode, p.sweep);
}

}  // namespace rollsim
