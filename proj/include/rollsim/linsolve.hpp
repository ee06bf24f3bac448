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

#ifndef ROLLSIM_LINSOLVE_HPP
#define ROLLSIM_LINSOLVE_HPP

#include <Eigen/Core>
#include <optional>
#include <vector>

#include "rollsim/geometry.hpp"

namespace rollsim {

// Relative singular-value threshold below which a system counts as singular.
inline constexpr double kRankThreshold = 1e-10;

// Over-determined system A * theta = B with one non-negative weight per
// equation. The weights multiply residuals: the solver minimizes
// || W (A theta - B) ||_2 with W = diag(weights).
class DesignSystem {
 public:
  // Unit weights.
  DesignSystem(Eigen::MatrixXd A, Eigen::VectorXd B);
  DesignSystem(Eigen::MatrixXd A, Eigen::VectorXd B, Eigen::VectorXd weights);

  const Eigen::MatrixXd& A() const { return A_; }
  const Eigen::VectorXd& B() const { return B_; }
  const Eigen::VectorXd& weights() const { return W_; }

  Eigen::Index equations() const { return A_.rows(); }
  Eigen::Index unknowns() const { return A_.cols(); }

  Eigen::MatrixXd weighted_A() const { return W_.asDiagonal() * A_; }
  Eigen::VectorXd weighted_B() const { return W_.cwiseProduct(B_); }

 private:
  Eigen::MatrixXd A_;
  Eigen::VectorXd B_;
  Eigen::VectorXd W_;
};

struct LeastSquaresSolution {
  Eigen::VectorXd theta;
  double residual_norm = 0.0;       // || W (A theta - B) ||_2
  Eigen::VectorXd singular_values;  // of W A, descending
};

// SVD solve. Throws kRankDeficient when sigma_min < kRankThreshold * sigma_max
// and kInvalidArgument when there are fewer equations than unknowns.
LeastSquaresSolution solve_least_squares(const DesignSystem& system);

// sigma_max / sigma_min of A (or of diag(weights) * A). Returns +infinity when
// the matrix is numerically singular. Never less than 1.
double condition_number(const Eigen::MatrixXd& A);
double condition_number(const Eigen::MatrixXd& A,
                        const Eigen::VectorXd& weights);

// Linearized pose-tracking design for a rig of calibrated cameras. Each
// observed point contributes two rows: the derivative of its normalized image
// coordinates with respect to a small rig motion (rotation vector, then
// translation). Points are given in the rig frame; each camera lists its
// rig-to-camera pose and the indices of the points it observes.
struct RigCamera {
  Pose rig_to_camera;
  std::vector<Vec3> points;  // rig frame, must be in front of this camera
};

Eigen::MatrixXd rig_design_matrix(const std::vector<RigCamera>& cameras);

// Places `count` points in front of a camera inside a square field of view
// (half-angle in radians) at depths in [near, far], deterministically from
// the seed, and returns them in the rig frame.
std::vector<Vec3> sample_points_in_view(const Pose& rig_to_camera, int count,
                                        double half_fov, double near,
                                        double far, unsigned long long seed);

}  // namespace rollsim

#endif  // ROLLSIM_LINSOLVE_HPP
