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

#include "rollsim/linsolve.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <sstream>

#include "rollsim/error.hpp"

namespace rollsim {

namespace {

void check_weights(const Eigen::VectorXd& W, Eigen::Index rows) {
  if (W.size() != rows) {
    throw Error(ErrorCode::kInvalidArgument,
                "weight vector length must equal the number of equations");
  }
  for (Eigen::Index i = 0; i < W.size(); ++i) {
    if (!std::isfinite(W[i]) || W[i] < 0.0) {
      throw Error(ErrorCode::kInvalidArgument,
                  "weights must be finite and non-negative");
    }
  }
}

double ratio(const Eigen::VectorXd& sv) {
  if (sv.size() == 0) return std::numeric_limits<double>::infinity();
  const double smax = sv[0];
  const double smin = sv[sv.size() - 1];
  if (!(smax > 0.0) || smin < kRankThreshold * smax) {
    return std::numeric_limits<double>::infinity();
  }
  return std::max(1.0, smax / smin);
}

}  // namespace

DesignSystem::DesignSystem(Eigen::MatrixXd A, Eigen::VectorXd B)
    : DesignSystem(A, std::move(B), Eigen::VectorXd::Ones(A.rows())) {}

DesignSystem::DesignSystem(Eigen::MatrixXd A, Eigen::VectorXd B,
                           Eigen::VectorXd weights)
    : A_(std::move(A)), B_(std::move(B)), W_(std::move(weights)) {
  if (A_.rows() == 0 || A_.cols() == 0) {
    throw Error(ErrorCode::kInvalidArgument, "design matrix is empty");
  }
  if (B_.size() != A_.rows()) {
    throw Error(ErrorCode::kInvalidArgument,
                "right-hand side length must equal the number of equations");
  }
  if (!A_.allFinite() || !B_.allFinite()) {
    throw Error(ErrorCode::kInvalidArgument, "system has non-finite entries");
  }
  check_weights(W_, A_.rows());
}

LeastSquaresSolution solve_least_squares(const DesignSystem& sys) {
  if (sys.equations() < sys.unknowns()) {
    throw Error(ErrorCode::kInvalidArgument,
                "system has fewer equations than unknowns");
  }
  const Eigen::MatrixXd WA = sys.weighted_A();
  const Eigen::VectorXd WB = sys.weighted_B();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(WA, Eigen::ComputeThinU |
                                                Eigen::ComputeThinV);
  const Eigen::VectorXd& sv = svd.singularValues();
  const double smax = sv[0];
  const double smin = sv[sv.size() - 1];
  if (!(smax > 0.0) || smin < kRankThreshold * smax) {
    std::ostringstream os;
    os << "rank-deficient system (sigma_min " << smin << ", sigma_max "
       << smax << ")";
    throw Error(ErrorCode::kRankDeficient, os.str());
  }

  LeastSquaresSolution out;
  const Eigen::VectorXd projected = svd.matrixU().transpose() * WB;
  out.theta = svd.matrixV() * projected.cwiseQuotient(sv);
  out.residual_norm = (WA * out.theta - WB).norm();
  out.singular_values = sv;
  return out;
}

double condition_number(const Eigen::MatrixXd& A) {
  if (A.size() == 0) {
    throw Error(ErrorCode::kInvalidArgument, "matrix is empty");
  }
  if (A.cwiseAbs().maxCoeff() == 0.0) {
    throw Error(ErrorCode::kInvalidArgument, "matrix is zero");
  }
  const Eigen::Index k = std::min(A.rows(), A.cols());
  Eigen::MatrixXd off = A;
  off.diagonal().setZero();
  if (off.cwiseAbs().maxCoeff() == 0.0) {
    Eigen::VectorXd sv = A.diagonal().head(k).cwiseAbs();
    std::sort(sv.data(), sv.data() + k, std::greater<>());
    return ratio(sv);
  }
  return ratio(Eigen::JacobiSVD<Eigen::MatrixXd>(A).singularValues());
}

double condition_number(const Eigen::MatrixXd& A,
                        const Eigen::VectorXd& weights) {
  check_weights(weights, A.rows());
  return condition_number(weights.asDiagonal() * A);
}

Eigen::MatrixXd rig_design_matrix(const std::vector<RigCamera>& cameras) {
  Eigen::Index rows = 0;
  for (const auto& cam : cameras) rows += 2 * static_cast<Eigen::Index>(cam.points.size());
  if (rows == 0) {
    throw Error(ErrorCode::kInvalidArgument, "rig observes no points");
  }
  Eigen::MatrixXd J(rows, 6);
  Eigen::Index row = 0;
  for (const auto& cam : cameras) {
    const Mat3& R = cam.rig_to_camera.rotation();
    for (const Vec3& X : cam.points) {
      const Vec3 Y = cam.rig_to_camera.apply(X);
      if (!(Y.z() > 0.0)) {
        throw Error(ErrorCode::kPointBehindCamera,
                    "rig point is behind its observing camera");
      }
      Eigen::Matrix<double, 2, 3> dproj;
      dproj << 1.0 / Y.z(), 0.0, -Y.x() / (Y.z() * Y.z()),
               0.0, 1.0 / Y.z(), -Y.y() / (Y.z() * Y.z());
      // Rig motion X -> X + w x X + v.
      Eigen::Matrix<double, 3, 6> dY;
      dY.leftCols<3>() = -R * hat(X);
      dY.rightCols<3>() = R;
      J.middleRows<2>(row) = dproj * dY;
      row += 2;
    }
  }
  return J;
}

std::vector<Vec3> sample_points_in_view(const Pose& rig_to_camera, int count,
                                        double half_fov, double near,
                                        double far, unsigned long long seed) {
  if (count < 0 || !(half_fov > 0.0) || !(near > 0.0) || !(far >= near)) {
    throw Error(ErrorCode::kInvalidArgument, "invalid point sampling range");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_real_distribution<double> depth(near, far);
  const double extent = std::tan(half_fov);
  const Pose camera_to_rig = rig_to_camera.inverse();
  std::vector<Vec3> points;
  points.reserve(count);
  for (int i = 0; i < count; ++i) {
    const double u = extent * unit(rng);
    const double v = extent * unit(rng);
    const double z = depth(rng);
    points.push_back(camera_to_rig.apply(Vec3(u * z, v * z, z)));
  }
  return points;
}

}  // namespace rollsim
