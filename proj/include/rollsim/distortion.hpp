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

#ifndef ROLLSIM_DISTORTION_HPP
#define ROLLSIM_DISTORTION_HPP

#include <vector>

#include "rollsim/geometry.hpp"

namespace rollsim {

// Brown-Conrady radial model acting on normalized image coordinates:
//
//   p_d = p_u * (1 + k1 r^2 + k2 r^4 + k3 r^6 + ...),   r = |p_u|.
//
// Tangential terms are not modeled.
class RadialDistortion {
 public:
  static constexpr double kDefaultWorkingRadius = 1.0;

  // The identity model (no coefficients).
  RadialDistortion() = default;

  // Rejects coefficient sets for which r * factor(r) is not strictly
  // increasing on [0, working_radius]; that also keeps the factor positive
  // and the model invertible on the disk.
  explicit RadialDistortion(std::vector<double> k,
                            double working_radius = kDefaultWorkingRadius);

  const std::vector<double>& coefficients() const { return k_; }
  double working_radius() const { return working_radius_; }
  bool is_identity() const;

  // 1 + sum_i k_i r^(2i), evaluated from r^2.
  double factor(double r_squared) const;
  // d/dr [r * factor(r)] = 1 + sum_i (2i + 1) k_i r^(2i).
  double radial_derivative(double r_squared) const;

  // Largest distorted radius, the image of the working radius.
  double max_distorted_radius() const;

 private:
  std::vector<double> k_;
  double working_radius_ = kDefaultWorkingRadius;
};

// Throws kOutsideWorkingRadius when |p| exceeds the working radius.
NormalizedPoint distort(const RadialDistortion& d, const NormalizedPoint& p);

inline constexpr double kDefaultUndistortTolerance = 1e-12;

// Numerical inverse of distort: fixed-point iteration with a safeguarded
// Newton fallback on the radial equation. The result satisfies
// |distort(result) - pd| <= tol. Throws kNoConvergence otherwise.
NormalizedPoint undistort_numeric(const RadialDistortion& d,
                                  const NormalizedPoint& pd,
                                  double tol = kDefaultUndistortTolerance);

// Inverse power series p_u = p_d * (1 + k1' rho^2 + k2' rho^4 + ...) valid for
// rho <= rho_max, usually obtained from fit_inverse.
class InverseRadialDistortion {
 public:
  InverseRadialDistortion(std::vector<double> kprime, double rho_max,
                          double fit_residual = 0.0);

  const std::vector<double>& coefficients() const { return kprime_; }
  double rho_max() const { return rho_max_; }
  // Largest radial position error over the samples used for fitting.
  double fit_residual() const { return fit_residual_; }

  double factor(double rho_squared) const;

 private:
  std::vector<double> kprime_;
  double rho_max_;
  double fit_residual_;
};

// Least-squares fit of `order` inverse coefficients over dense radial samples
// in (0, rho_max]. Throws kDegenerateFit for a rank-deficient sample matrix and
// kOutsideWorkingRadius when rho_max is outside the invertible region.
InverseRadialDistortion fit_inverse(const RadialDistortion& d, int order,
                                    double rho_max, int samples = 2000);

// Throws kOutsideWorkingRadius when |pd| > rho_max.
NormalizedPoint apply_inverse(const InverseRadialDistortion& inv,
                              const NormalizedPoint& pd);

// Pose -> perspective division -> distortion -> K.
PixelPoint project_distorted(const Pose& pose, const Intrinsics& K,
                             const RadialDistortion& d,
                             const Vec3& world_point);

}  // namespace rollsim

#endif  // ROLLSIM_DISTORTION_HPP
