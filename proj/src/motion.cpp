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

#include "rollsim/motion.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rollsim/error.hpp"
#include "rollsim/shutter.hpp"

namespace rollsim {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double polyval(const std::vector<double>& c, double x) {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

// Reuses the Pose validation rules.
void check_rotation(const Mat3& R) { (void)Pose(R, Vec3::Zero()); }

void validate(const MotionModel::Variant& model) {
  std::visit(
      overloaded{
          [](const motion::Static&) {},
          [](const motion::TranslationConstVel& m) {
            check_rotation(m.R0);
            if (!m.T0.allFinite() || !m.velocity.allFinite() ||
                !std::isfinite(m.t_ref)) {
              throw Error(ErrorCode::kInvalidArgument,
                          "constant-velocity model has non-finite values");
            }
          },
          [](const motion::TranslationConstAccel& m) {
            check_rotation(m.R0);
            if (!m.T0.allFinite() || !m.velocity.allFinite() ||
                !m.acceleration.allFinite() || !std::isfinite(m.t_ref)) {
              throw Error(ErrorCode::kInvalidArgument,
                          "constant-acceleration model has non-finite values");
            }
          },
          [](const motion::RotationConstAngVel& m) {
            check_rotation(m.R0);
            if (!m.T0.allFinite() || !m.angular_velocity.allFinite() ||
                !std::isfinite(m.t_ref)) {
              throw Error(ErrorCode::kInvalidArgument,
                          "angular-velocity model has non-finite values");
            }
          },
          [](const motion::PolynomialPerDof& m) {
            check_rotation(m.R0);
            for (const auto& c : m.coefficients) {
              if (static_cast<int>(c.size()) >
                  motion::PolynomialPerDof::kMaxDegree + 1) {
                throw Error(ErrorCode::kInvalidArgument,
                            "polynomial degree exceeds 4");
              }
              for (double v : c) {
                if (!std::isfinite(v)) {
                  throw Error(ErrorCode::kInvalidArgument,
                              "polynomial coefficients must be finite");
                }
              }
            }
          },
          [](const motion::PiecewiseLinearKeyframes& m) {
            if (m.keyframes.empty()) {
              throw Error(ErrorCode::kInvalidArgument,
                          "keyframe trajectory is empty");
            }
            for (std::size_t i = 0; i < m.keyframes.size(); ++i) {
              if (!std::isfinite(m.keyframes[i].time)) {
                throw Error(ErrorCode::kInvalidArgument,
                            "keyframe time must be finite");
              }
              if (i > 0 && !(m.keyframes[i].time > m.keyframes[i - 1].time)) {
                throw Error(ErrorCode::kInvalidArgument,
                            "keyframe times must be strictly increasing");
              }
            }
          },
      },
      model);
}

Pose interpolate(const motion::PiecewiseLinearKeyframes& m, double t) {
  const auto& kf = m.keyframes;
  const auto it = std::upper_bound(
      kf.begin(), kf.end(), t,
      [](double value, const motion::Keyframe& k) { return value < k.time; });
  // `it` is the first keyframe strictly after t.
  if (it == kf.begin()) return kf.front().pose;
  const auto& a = *(it - 1);
  if (a.time == t || it == kf.end()) return a.pose;
  const auto& b = *it;
  const double alpha = (t - a.time) / (b.time - a.time);
  const Mat3& Ra = a.pose.rotation();
  const Vec3 delta = log_so3(b.pose.rotation() * Ra.transpose());
  const Mat3 R = exp_so3(alpha * delta) * Ra;
  const Vec3 T = (1.0 - alpha) * a.pose.translation() +
                 alpha * b.pose.translation();
  return Pose(R, T);
}

}  // namespace

TimeWindow frame_window(const ShutterTiming& timing, double tau0, int fi,
                        int count) {
  if (count < 1) {
    throw Error(ErrorCode::kInvalidArgument, "frame count must be positive");
  }
  return {tau0 + fi * timing.frame_period(),
          tau0 + (fi + count) * timing.frame_period()};
}

MotionModel::MotionModel(Variant model) : model_(std::move(model)) {
  validate(model_);
  if (const auto* kf = std::get_if<motion::PiecewiseLinearKeyframes>(&model_)) {
    window_ = {kf->keyframes.front().time, kf->keyframes.back().time};
  }
}

MotionModel::MotionModel(Variant model, TimeWindow window)
    : MotionModel(std::move(model)) {
  if (!(window.begin <= window.end) || std::isnan(window.begin) ||
      std::isnan(window.end)) {
    throw Error(ErrorCode::kInvalidArgument, "validity window is empty");
  }
  if (std::holds_alternative<motion::PiecewiseLinearKeyframes>(model_) &&
      (window.begin < window_.begin || window.end > window_.end)) {
    throw Error(ErrorCode::kInvalidArgument,
                "validity window extends beyond the keyframes");
  }
  window_ = window;
}

bool MotionModel::is_static() const {
  return std::holds_alternative<motion::Static>(model_);
}

bool MotionModel::has_constant_translation() const {
  return std::visit(
      overloaded{
          [](const motion::Static&) { return true; },
          [](const motion::TranslationConstVel& m) {
            return m.velocity.isZero(0.0);
          },
          [](const motion::TranslationConstAccel& m) {
            return m.velocity.isZero(0.0) && m.acceleration.isZero(0.0);
          },
          [](const motion::RotationConstAngVel&) { return true; },
          [](const motion::PolynomialPerDof& m) {
            for (int d = 3; d < 6; ++d) {
              const auto& c = m.coefficients[d];
              for (std::size_t i = 1; i < c.size(); ++i) {
                if (c[i] != 0.0) return false;
              }
            }
            return true;
          },
          [](const motion::PiecewiseLinearKeyframes& m) {
            const Vec3& T0 = m.keyframes.front().pose.translation();
            for (const auto& k : m.keyframes) {
              if (k.pose.translation() != T0) return false;
            }
            return true;
          },
      },
      model_);
}

Pose MotionModel::pose_at(double t) const {
  if (!window_.contains(t)) {
    std::ostringstream os;
    os.precision(17);
    os << "time " << t << " outside validity window [" << window_.begin
       << ", " << window_.end << "]";
    throw Error(ErrorCode::kOutsideValidityWindow, os.str());
  }
  return std::visit(
      overloaded{
          [](const motion::Static& m) { return m.pose; },
          [t](const motion::TranslationConstVel& m) {
            return Pose(m.R0, m.T0 + m.velocity * (t - m.t_ref));
          },
          [t](const motion::TranslationConstAccel& m) {
            const double dt = t - m.t_ref;
            return Pose(m.R0, m.T0 + m.velocity * dt +
                                  0.5 * m.acceleration * (dt * dt));
          },
          [t](const motion::RotationConstAngVel& m) {
            return Pose(exp_so3(m.angular_velocity * (t - m.t_ref)) * m.R0,
                        m.T0);
          },
          [t](const motion::PolynomialPerDof& m) {
            const double dt = t - m.t_ref;
            Vec3 r, T;
            for (int i = 0; i < 3; ++i) {
              r[i] = polyval(m.coefficients[i], dt);
              T[i] = polyval(m.coefficients[3 + i], dt);
            }
            return Pose(exp_so3(r) * m.R0, T);
          },
          [t](const motion::PiecewiseLinearKeyframes& m) {
            return interpolate(m, t);
          },
      },
      model_);
}

Pose MotionModel::relative_pose(double t_ref, double t) const {
  return compose(pose_at(t), pose_at(t_ref).inverse());
}

}  // namespace rollsim
