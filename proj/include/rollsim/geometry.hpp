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

#ifndef ROLLSIM_GEOMETRY_HPP
#define ROLLSIM_GEOMETRY_HPP

#include <Eigen/Core>
#include <array>

namespace rollsim {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

// 3D points are plain Vec3; whether a point lives in world or camera space is
// carried by the parameter name. The two 2D spaces get distinct types so a
// normalized coordinate cannot be passed where a pixel is expected.

// Point on the z = 1 plane, after perspective division and before K.
struct NormalizedPoint {
  double x = 0.0;
  double y = 0.0;
};

struct PixelPoint {
  double x = 0.0;
  double y = 0.0;
};

// Homogeneous lift onto the z = 1 plane and the matching drop.
inline Vec3 lift(const NormalizedPoint& p) { return {p.x, p.y, 1.0}; }
inline NormalizedPoint drop(const Vec3& v) { return {v.x() / v.z(), v.y() / v.z()}; }

// Skew-symmetric matrix [w]x such that [w]x * v == w.cross(v).
Mat3 hat(const Vec3& w);

// Rodrigues exponential of an axis-angle vector (angle = |w| radians).
Mat3 exp_so3(const Vec3& w);

// Inverse of exp_so3 with angle in [0, pi].
Vec3 log_so3(const Mat3& rotation);

Mat3 rotation_x(double radians);
Mat3 rotation_y(double radians);
Mat3 rotation_z(double radians);

// Intrinsic Z-Y-X (yaw, pitch, roll) composition: Rz(yaw) * Ry(pitch) * Rx(roll).
Mat3 rotation_from_euler_zyx(double yaw, double pitch, double roll);

// Nearest rotation in the Frobenius sense (polar decomposition via SVD).
Mat3 nearest_rotation(const Mat3& m);

// Largest entry of |R^T R - I| and |det(R) - 1|.
double orthonormality_error(const Mat3& rotation);

// World-to-camera rigid transform: X_cam = R * X_world + T, with T = -R * C.
// The camera looks down +Z; only points with positive camera-space z are
// visible.
class Pose {
 public:
  // Inputs further than 1e-6 from SO(3) throw kInvalidPose; smaller drift is
  // snapped back onto SO(3).
  Pose(const Mat3& rotation, const Vec3& translation);
  Pose() = default;

  static Pose identity() { return {}; }
  static Pose from_axis_angle(const Vec3& axis_angle, const Vec3& translation);
  static Pose from_center(const Mat3& rotation, const Vec3& center);
  // 12 row-major numbers: R (9) then T (3).
  static Pose from_array(const std::array<double, 12>& values);

  const Mat3& rotation() const { return rotation_; }
  const Vec3& translation() const { return translation_; }
  Vec3 center() const { return -(rotation_.transpose() * translation_); }

  Vec3 apply(const Vec3& world_point) const {
    return rotation_ * world_point + translation_;
  }

  Pose inverse() const;
  // Re-projects the rotation onto SO(3); use after long composition chains.
  Pose renormalized() const;

  std::array<double, 12> to_array() const;
  Eigen::Matrix4d matrix() const;

 private:
  struct Unchecked {};
  Pose(Unchecked, const Mat3& rotation, const Vec3& translation)
      : rotation_(rotation), translation_(translation) {}

  friend Pose compose(const Pose& a, const Pose& b);

  Mat3 rotation_ = Mat3::Identity();
  Vec3 translation_ = Vec3::Zero();
};

// Applying the result equals applying b first, then a.
Pose compose(const Pose& a, const Pose& b);

// Largest absolute entry difference of the two 3x4 [R|T] blocks.
double max_abs_difference(const Pose& a, const Pose& b);

class Intrinsics {
 public:
  // Throws kInvalidArgument unless fx > 0 and fy > 0 and all values finite.
  Intrinsics(double fx, double fy, double cx, double cy, double skew = 0.0);

  double fx() const { return fx_; }
  double fy() const { return fy_; }
  double cx() const { return cx_; }
  double cy() const { return cy_; }
  double skew() const { return skew_; }

  Mat3 matrix() const;

  PixelPoint to_pixel(const NormalizedPoint& p) const {
    return {fx_ * p.x + skew_ * p.y + cx_, fy_ * p.y + cy_};
  }
  NormalizedPoint to_normalized(const PixelPoint& p) const {
    const double y = (p.y - cy_) / fy_;
    return {(p.x - cx_ - skew_ * y) / fx_, y};
  }

 private:
  double fx_;
  double fy_;
  double cx_;
  double cy_;
  double skew_;
};

// Intermediate results of the pose -> perspective division -> K pipeline.
struct ProjectionStages {
  Vec3 camera_point;
  NormalizedPoint normalized;
  PixelPoint pixel;
};

// Throws kPointBehindCamera when the camera-space z is not positive.
ProjectionStages project_stages(const Pose& pose, const Intrinsics& K,
                                 const Vec3& world_point);

inline PixelPoint project(const Pose& pose, const Intrinsics& K,
                          const Vec3& world_point) {
  return project_stages(pose, K, world_point).pixel;
}

// Perspective division; throws kPointBehindCamera for z <= 0.
NormalizedPoint perspective_divide(const Vec3& camera_point);

// Camera-space point at the given depth (z) along the pixel's ray.
// Throws kNonPositiveDepth for depth <= 0.
Vec3 backproject(const Intrinsics& K, const PixelPoint& pixel, double depth);

}  // namespace rollsim

#endif  // ROLLSIM_GEOMETRY_HPP
