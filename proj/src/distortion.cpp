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

#include "rollsim/distortion.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rollsim/error.hpp"
#include "rollsim/linsolve.hpp"

namespace rollsim {

namespace {

constexpr int kMonotonicitySamples = 4096;
constexpr int kFixedPointIterations = 25;
constexpr int kNewtonIterations = 200;

// sum_i c_i * u^i for i = 1..n, Horner form; c[0] multiplies u.
double series(const std::vector<double>& c, double u) {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = (acc + *it) * u;
  return acc;
}

}  // namespace

RadialDistortion::RadialDistortion(std::vector<double> k, double working_radius)
    : k_(std::move(k)), working_radius_(working_radius) {
  if (!(working_radius_ > 0.0) || !std::isfinite(working_radius_)) {
    throw Error(ErrorCode::kInvalidDistortion,
                "working radius must be positive and finite");
  }
  for (double c : k_) {
    if (!std::isfinite(c)) {
      throw Error(ErrorCode::kInvalidDistortion,
                  "distortion coefficients must be finite");
    }
  }
  while (!k_.empty() && k_.back() == 0.0) k_.pop_back();

  for (int i = 0; i <= kMonotonicitySamples; ++i) {
    const double r = working_radius_ * i / kMonotonicitySamples;
    const double r2 = r * r;
    if (!(factor(r2) > 0.0) || !(radial_derivative(r2) > 0.0)) {
      std::ostringstream os;
      os << "distortion is not invertible inside the working radius "
         << working_radius_ << " (fails at r = " << r << ")";
      throw Error(ErrorCode::kInvalidDistortion, os.str());
    }
  }
}

bool RadialDistortion::is_identity() const { return k_.empty(); }

double RadialDistortion::factor(double r2) const {
  return 1.0 + series(k_, r2);
}

double RadialDistortion::radial_derivative(double r2) const {
  double acc = 0.0;
  for (std::size_t i = k_.size(); i-- > 0;) {
    acc = (acc + static_cast<double>(2 * i + 3) * k_[i]) * r2;
  }
  return 1.0 + acc;
}

double RadialDistortion::max_distorted_radius() const {
  return working_radius_ * factor(working_radius_ * working_radius_);
}

NormalizedPoint distort(const RadialDistortion& d, const NormalizedPoint& p) {
  const double r2 = p.x * p.x + p.y * p.y;
  if (r2 > d.working_radius() * d.working_radius()) {
    throw Error(ErrorCode::kOutsideWorkingRadius,
                "point lies outside the distortion working radius");
  }
  const double f = d.factor(r2);
  return {p.x * f, p.y * f};
}

NormalizedPoint undistort_numeric(const RadialDistortion& d,
                                  const NormalizedPoint& pd, double tol) {
  if (!(tol > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "tolerance must be positive");
  }
  if (d.is_identity()) return pd;
  const double rho = std::hypot(pd.x, pd.y);
  if (rho == 0.0) return pd;
  if (!std::isfinite(rho) || rho > d.max_distorted_radius() + tol) {
    throw Error(ErrorCode::kNoConvergence,
                "distorted point lies outside the invertible region");
  }

  const auto residual = [&](double r) {
    return r * d.factor(r * r) - rho;
  };

  // Radial symmetry reduces the problem to the scalar r * factor(r) = rho.
  double r = rho;
  bool converged = false;
  for (int it = 0; it < kFixedPointIterations; ++it) {
    const double f = d.factor(r * r);
    if (!(f > 0.0)) break;
    r = rho / f;
    if (std::abs(residual(r)) <= tol) {
      converged = true;
      break;
    }
  }

  if (!converged) {
    // r * factor(r) is strictly increasing on [0, R], so the root is
    // bracketed; Newton steps that leave the bracket fall back to bisection.
    double lo = 0.0;
    double hi = d.working_radius();
    r = std::clamp(r, lo, hi);
    for (int it = 0; it < kNewtonIterations; ++it) {
      const double g = residual(r);
      if (std::abs(g) <= tol) {
        converged = true;
        break;
      }
      if (g < 0.0) lo = r; else hi = r;
      double next = r - g / d.radial_derivative(r * r);
      if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
      if (next == r) break;
      r = next;
    }
  }
  if (!converged) {
    throw Error(ErrorCode::kNoConvergence,
                "radial undistortion did not converge");
  }
  const double scale = r / rho;
  return {pd.x * scale, pd.y * scale};
}

InverseRadialDistortion::InverseRadialDistortion(std::vector<double> kprime,
                                                 double rho_max,
                                                 double fit_residual)
    : kprime_(std::move(kprime)), rho_max_(rho_max),
      fit_residual_(fit_residual) {
  if (!(rho_max_ > 0.0) || !std::isfinite(rho_max_)) {
    throw Error(ErrorCode::kInvalidArgument, "rho_max must be positive");
  }
  for (double c : kprime_) {
    if (!std::isfinite(c)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "inverse coefficients must be finite");
    }
  }
}

double InverseRadialDistortion::factor(double rho2) const {
  return 1.0 + series(kprime_, rho2);
}

InverseRadialDistortion fit_inverse(const RadialDistortion& d, int order,
                                    double rho_max, int samples) {
  if (order < 1) {
    throw Error(ErrorCode::kInvalidArgument, "order must be at least 1");
  }
  if (samples <= order) {
    throw Error(ErrorCode::kInvalidArgument,
                "need more radial samples than coefficients");
  }
  if (!(rho_max > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "rho_max must be positive");
  }
  if (rho_max > d.max_distorted_radius()) {
    throw Error(ErrorCode::kOutsideWorkingRadius,
                "rho_max exceeds the image of the working radius");
  }
  if (d.is_identity()) {
    return InverseRadialDistortion(std::vector<double>(order, 0.0), rho_max,
                                   0.0);
  }

  // Columns use rho / rho_max so high orders stay well scaled. Each row is
  // multiplied by rho, which makes the residual a radial position error.
  Eigen::MatrixXd A(samples, order);
  Eigen::VectorXd B(samples);
  Eigen::VectorXd rho(samples), r(samples);
  for (int i = 0; i < samples; ++i) {
    rho[i] = rho_max * (i + 1) / samples;
    r[i] = undistort_numeric(d, {rho[i], 0.0}).x;
    const double s2 = (rho[i] / rho_max) * (rho[i] / rho_max);
    double p = 1.0;
    for (int j = 0; j < order; ++j) {
      p *= s2;
      A(i, j) = rho[i] * p;
    }
    B[i] = r[i] - rho[i];
  }

  LeastSquaresSolution sol;
  try {
    sol = solve_least_squares(DesignSystem(A, B));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kRankDeficient) {
      throw Error(ErrorCode::kDegenerateFit, e.what());
    }
    throw;
  }

  std::vector<double> kprime(order);
  const double rho_max2 = rho_max * rho_max;
  double scale = 1.0;
  for (int j = 0; j < order; ++j) {
    scale *= rho_max2;
    kprime[j] = sol.theta[j] / scale;
  }
  InverseRadialDistortion inv(kprime, rho_max);
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    worst = std::max(worst,
                     std::abs(rho[i] * inv.factor(rho[i] * rho[i]) - r[i]));
  }
  return InverseRadialDistortion(std::move(kprime), rho_max, worst);
}

NormalizedPoint apply_inverse(const InverseRadialDistortion& inv,
                              const NormalizedPoint& pd) {
  const double rho2 = pd.x * pd.x + pd.y * pd.y;
  if (rho2 > inv.rho_max() * inv.rho_max()) {
    throw Error(ErrorCode::kOutsideWorkingRadius,
                "point lies outside the inverse model's radius");
  }
  const double f = inv.factor(rho2);
  return {pd.x * f, pd.y * f};
}

PixelPoint project_distorted(const Pose& pose, const Intrinsics& K,
                             const RadialDistortion& d,
                             const Vec3& world_point) {
  const NormalizedPoint n = perspective_divide(pose.apply(world_point));
  return K.to_pixel(d.is_identity() ? n : distort(d, n));
}

}  // namespace rollsim
