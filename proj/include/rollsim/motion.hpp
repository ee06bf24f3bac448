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

#ifndef ROLLSIM_MOTION_HPP
#define ROLLSIM_MOTION_HPP

#include <array>
#include <limits>
#include <variant>
#include <vector>

#include "rollsim/geometry.hpp"

namespace rollsim {

class ShutterTiming;

struct TimeWindow {
  double begin = -std::numeric_limits<double>::infinity();
  double end = std::numeric_limits<double>::infinity();

  bool contains(double t) const { return t >= begin && t <= end; }
  static TimeWindow unbounded() { return {}; }
};

// [tau0 + fi/fps, tau0 + (fi + count)/fps]: the span of `count` frames.
TimeWindow frame_window(const ShutterTiming& timing, double tau0, int fi = 0,
                        int count = 1);

namespace motion {

struct Static {
  Pose pose;
};

// R(t) = R0, T(t) = T0 + v (t - t_ref).
struct TranslationConstVel {
  Mat3 R0 = Mat3::Identity();
  Vec3 T0 = Vec3::Zero();
  Vec3 velocity = Vec3::Zero();
  double t_ref = 0.0;
};

// R(t) = R0, T(t) = T0 + v dt + a dt^2 / 2 with dt = t - t_ref.
struct TranslationConstAccel {
  Mat3 R0 = Mat3::Identity();
  Vec3 T0 = Vec3::Zero();
  Vec3 velocity = Vec3::Zero();
  Vec3 acceleration = Vec3::Zero();
  double t_ref = 0.0;
};

// R(t) = exp([w]x (t - t_ref)) R0, T(t) = T0.
struct RotationConstAngVel {
  Mat3 R0 = Mat3::Identity();
  Vec3 T0 = Vec3::Zero();
  Vec3 angular_velocity = Vec3::Zero();  // rad/s, axis scaled by rate
  double t_ref = 0.0;
};

// Six independent polynomials in dt = t - t_ref, lowest degree first:
// dofs 0..2 form an axis-angle vector r(t), dofs 3..5 the translation T(t).
// R(t) = exp(r(t)) R0. Degree is capped at kMaxDegree; axis-angle DOFs are
// only meaningful for small intra-frame rotations.
struct PolynomialPerDof {
  static constexpr int kMaxDegree = 4;
  std::array<std::vector<double>, 6> coefficients;
  Mat3 R0 = Mat3::Identity();
  double t_ref = 0.0;
};

struct Keyframe {
  double time;
  Pose pose;
};

// Geodesic rotation interpolation and linear translation interpolation
// between strictly increasing keyframes.
struct PiecewiseLinearKeyframes {
  std::vector<Keyframe> keyframes;
};

}  // namespace motion

// Time-parameterized world-to-camera pose V(t).
class MotionModel {
 public:
  using Variant =
      std::variant<motion::Static, motion::TranslationConstVel,
                   motion::TranslationConstAccel, motion::RotationConstAngVel,
                   motion::PolynomialPerDof, motion::PiecewiseLinearKeyframes>;

  // Analytic models default to an unbounded window; keyframe models default
  // to [first, last] keyframe time. An explicit window must lie inside the
  // keyframe span. Throws kInvalidArgument on malformed models.
  explicit MotionModel(Variant model);
  MotionModel(Variant model, TimeWindow window);

  static MotionModel fixed(const Pose& pose) {
    return MotionModel(motion::Static{pose});
  }

  const Variant& model() const { return model_; }
  const TimeWindow& window() const { return window_; }
  bool is_static() const;
  // True when the translation is the same at every time.
  bool has_constant_translation() const;

  // Throws kOutsideValidityWindow for t outside window().
  Pose pose_at(double t) const;

  // Pose taking camera coordinates at t_ref to camera coordinates at t:
  // compose(result, pose_at(t_ref)) == pose_at(t).
  Pose relative_pose(double t_ref, double t) const;

 private:
  Variant model_;
  TimeWindow window_;
};

}  // namespace rollsim

#endif  // ROLLSIM_MOTION_HPP
