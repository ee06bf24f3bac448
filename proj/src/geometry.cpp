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

#include "rollsim/geometry.hpp"

#include <Eigen/LU>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "rollsim/error.hpp"

namespace rollsim {

namespace {

constexpr double kRejectTolerance = 1e-6;
constexpr double kSnapTolerance = 1e-13;

}  // namespace

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kPointBehindCamera: return "PointBehindCamera";
    case ErrorCode::kNonPositiveDepth: return "NonPositiveDepth";
    case ErrorCode::kInvalidPose: return "InvalidPose";
    case ErrorCode::kInvalidDistortion: return "InvalidDistortion";
    case ErrorCode::kOutsideWorkingRadius: return "OutsideWorkingRadius";
    case ErrorCode::kNoConvergence: return "NoConvergence";
    case ErrorCode::kDegenerateFit: return "DegenerateFit";
    case ErrorCode::kRowOutOfRange: return "RowOutOfRange";
    case ErrorCode::kInfeasibleTiming: return "InfeasibleTiming";
    case ErrorCode::kOverconstrained: return "Overconstrained";
    case ErrorCode::kUnderconstrained: return "Underconstrained";
    case ErrorCode::kInvalidTiming: return "InvalidTiming";
    case ErrorCode::kOutsideValidityWindow: return "OutsideValidityWindow";
    case ErrorCode::kNotImagedThisFrame: return "NotImagedThisFrame";
    case ErrorCode::kMultipleSolutions: return "MultipleSolutions";
    case ErrorCode::kAnchorOutOfRange: return "AnchorOutOfRange";
    case ErrorCode::kRankDeficient: return "RankDeficient";
    case ErrorCode::kDiverged: return "Diverged";
    case ErrorCode::kNoDominantBand: return "NoDominantBand";
    case ErrorCode::kConfig: return "Config";
    case ErrorCode::kIo: return "Io";
    case ErrorCode::kInternal: return "Internal";
  }
  return "Unknown";
}

Mat3 hat(const Vec3& w) {
  Mat3 m;
  m << 0.0, -w.z(), w.y(),
       w.z(), 0.0, -w.x(),
       -w.y(), w.x(), 0.0;
  return m;
}

Mat3 exp_so3(const Vec3& w) {
  const double theta2 = w.squaredNorm();
  const Mat3 W = hat(w);
  double a;
  double b;
  if (theta2 < 1e-12) {
    // Taylor expansion of sin(t)/t and (1-cos(t))/t^2.
    a = 1.0 - theta2 / 6.0;
    b = 0.5 - theta2 / 24.0;
  } else {
    const double theta = std::sqrt(theta2);
    a = std::sin(theta) / theta;
    b = (1.0 - std::cos(theta)) / theta2;
  }
  return Mat3::Identity() + a * W + b * (W * W);
}

Vec3 log_so3(const Mat3& R) {
  const double cos_theta = std::clamp((R.trace() - 1.0) * 0.5, -1.0, 1.0);
  const double theta = std::acos(cos_theta);
  const Vec3 vee(R(2, 1) - R(1, 2), R(0, 2) - R(2, 0), R(1, 0) - R(0, 1));
  if (theta < 1e-6) {
    return 0.5 * (1.0 + theta * theta / 6.0) * vee;
  }
  if (M_PI - theta > 1e-6) {
    return theta / (2.0 * std::sin(theta)) * vee;
  }
  // Near pi the antisymmetric part vanishes; recover the axis from the
  // symmetric part R = 2 a a^T - I.
  const Mat3 B = 0.5 * (R + Mat3::Identity());
  int col = 0;
  B.diagonal().maxCoeff(&col);
  Vec3 axis = B.col(col) / std::sqrt(std::max(B(col, col), 1e-300));
  axis.normalize();
  if (axis.dot(vee) < 0.0) axis = -axis;
  return theta * axis;
}

Mat3 rotation_x(double r) {
  const double c = std::cos(r), s = std::sin(r);
  Mat3 m;
  m << 1, 0, 0, 0, c, -s, 0, s, c;
  return m;
}

Mat3 rotation_y(double r) {
  const double c = std::cos(r), s = std::sin(r);
  Mat3 m;
  m << c, 0, s, 0, 1, 0, -s, 0, c;
  return m;
}

Mat3 rotation_z(double r) {
  const double c = std::cos(r), s = std::sin(r);
  Mat3 m;
  m << c, -s, 0, s, c, 0, 0, 0, 1;
  return m;
}

Mat3 rotation_from_euler_zyx(double yaw, double pitch, double roll) {
  return rotation_z(yaw) * rotation_y(pitch) * rotation_x(roll);
}

Mat3 nearest_rotation(const Mat3& m) {
  Eigen::JacobiSVD<Mat3> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Mat3 U = svd.matrixU();
  const Mat3 V = svd.matrixV();
  if ((U * V.transpose()).determinant() < 0.0) U.col(2) = -U.col(2);
  return U * V.transpose();
}

double orthonormality_error(const Mat3& R) {
  const double ortho =
      (R.transpose() * R - Mat3::Identity()).cwiseAbs().maxCoeff();
  return std::max(ortho, std::abs(R.determinant() - 1.0));
}

Pose::Pose(const Mat3& rotation, const Vec3& translation)
    : rotation_(rotation), translation_(translation) {
  if (!rotation.allFinite() || !translation.allFinite()) {
    throw Error(ErrorCode::kInvalidPose, "pose has non-finite entries");
  }
  const double err = orthonormality_error(rotation);
  if (err > kRejectTolerance) {
    std::ostringstream os;
    os << "rotation is not orthonormal (error " << err << ")";
    throw Error(ErrorCode::kInvalidPose, os.str());
  }
  if (err > kSnapTolerance) rotation_ = nearest_rotation(rotation);
}

Pose Pose::from_axis_angle(const Vec3& axis_angle, const Vec3& translation) {
  return Pose(exp_so3(axis_angle), translation);
}

Pose Pose::from_center(const Mat3& rotation, const Vec3& center) {
  return Pose(rotation, -(rotation * center));
}

Pose Pose::from_array(const std::array<double, 12>& v) {
  Mat3 R;
  R << v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7], v[8];
  return Pose(R, Vec3(v[9], v[10], v[11]));
}

Pose Pose::inverse() const {
  const Mat3 Rt = rotation_.transpose();
  return Pose(Unchecked{}, Rt, -(Rt * translation_));
}

Pose Pose::renormalized() const {
  return Pose(Unchecked{}, nearest_rotation(rotation_), translation_);
}

std::array<double, 12> Pose::to_array() const {
  std::array<double, 12> out{};
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) out[3 * r + c] = rotation_(r, c);
  }
  for (int i = 0; i < 3; ++i) out[9 + i] = translation_[i];
  return out;
}

Eigen::Matrix4d Pose::matrix() const {
  Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
  m.topLeftCorner<3, 3>() = rotation_;
  m.topRightCorner<3, 1>() = translation_;
  return m;
}

Pose compose(const Pose& a, const Pose& b) {
  return Pose(Pose::Unchecked{}, a.rotation_ * b.rotation_,
              a.rotation_ * b.translation_ + a.translation_);
}

double max_abs_difference(const Pose& a, const Pose& b) {
  return std::max((a.rotation() - b.rotation()).cwiseAbs().maxCoeff(),
                  (a.translation() - b.translation()).cwiseAbs().maxCoeff());
}

Intrinsics::Intrinsics(double fx, double fy, double cx, double cy, double skew)
    : fx_(fx), fy_(fy), cx_(cx), cy_(cy), skew_(skew) {
  if (!(std::isfinite(fx) && std::isfinite(fy) && std::isfinite(cx) &&
        std::isfinite(cy) && std::isfinite(skew))) {
    throw Error(ErrorCode::kInvalidArgument, "intrinsics must be finite");
  }
  if (!(fx > 0.0) || !(fy > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "focal lengths fx and fy must be positive");
  }
}

Mat3 Intrinsics::matrix() const {
  Mat3 K;
  K << fx_, skew_, cx_, 0.0, fy_, cy_, 0.0, 0.0, 1.0;
  return K;
}

NormalizedPoint perspective_divide(const Vec3& camera_point) {
  if (!(camera_point.z() > 0.0)) {
    throw Error(ErrorCode::kPointBehindCamera,
                "point is not in front of the camera");
  }
  return drop(camera_point);
}

ProjectionStages project_stages(const Pose& pose, const Intrinsics& K,
                                 const Vec3& world_point) {
  ProjectionStages s;
  s.camera_point = pose.apply(world_point);
  s.normalized = perspective_divide(s.camera_point);
  s.pixel = K.to_pixel(s.normalized);
  return s;
}

Vec3 backproject(const Intrinsics& K, const PixelPoint& pixel, double depth) {
  if (!(depth > 0.0)) {
    throw Error(ErrorCode::kNonPositiveDepth, "depth must be positive");
  }
  return lift(K.to_normalized(pixel)) * depth;
}

}  // namespace rollsim
