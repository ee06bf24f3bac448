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

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "rollsim/error.hpp"
#include "rollsim/motion.hpp"
#include "rollsim/shutter.hpp"

using namespace rollsim;

namespace {

// Classical RK4 on dR/dt = [w]x R.
Mat3 integrate_rotation(const Vec3& w, const Mat3& R0, double t, int steps) {
  const Mat3 W = hat(w);
  const double h = t / steps;
  Mat3 R = R0;
  for (int i = 0; i < steps; ++i) {
    const Mat3 k1 = W * R;
    const Mat3 k2 = W * (R + 0.5 * h * k1);
    const Mat3 k3 = W * (R + 0.5 * h * k2);
    const Mat3 k4 = W * (R + h * k3);
    R += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return R;
}

double rotation_angle(const Mat3& R) {
  return std::acos(std::clamp((R.trace() - 1.0) / 2.0, -1.0, 1.0));
}

}  // namespace

TEST_CASE("static motion") {
  const Pose P = Pose::from_axis_angle({0.1, 0.2, 0.3}, {1, 2, 3});
  const MotionModel m = MotionModel::fixed(P);
  CHECK(m.is_static());
  CHECK(m.has_constant_translation());
  for (double t : {-5.0, 0.0, 0.125, 1e6}) CHECK(max_abs_difference(m.pose_at(t), P) == 0.0);
  CHECK(max_abs_difference(m.relative_pose(0.0, 3.0), Pose::identity()) < 1e-15);
}

TEST_CASE("constant velocity") {
  motion::TranslationConstVel v;
  v.T0 = Vec3(0.5, -1, 4);
  v.velocity = Vec3(1, 0, 0);
  const MotionModel m(v);
  CHECK_FALSE(m.is_static());
  CHECK_FALSE(m.has_constant_translation());
  CHECK(m.pose_at(0.25).translation() == Vec3(0.75, -1, 4));
  CHECK(m.pose_at(0.25).rotation() == Mat3::Identity());

  v.T0 = Vec3::Zero();
  const Pose rel = MotionModel(v).relative_pose(0.0, 0.1);
  CHECK(rel.rotation() == Mat3::Identity());
  CHECK((rel.translation() - Vec3(0.1, 0, 0)).norm() < 1e-15);
}

TEST_CASE("constant acceleration with zero acceleration is constant velocity") {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  motion::TranslationConstVel v;
  v.R0 = exp_so3({0.1, -0.2, 0.05});
  v.T0 = Vec3(u(rng), u(rng), u(rng));
  v.velocity = Vec3(u(rng), u(rng), u(rng));
  v.t_ref = 0.3;
  motion::TranslationConstAccel a;
  a.R0 = v.R0;
  a.T0 = v.T0;
  a.velocity = v.velocity;
  a.t_ref = v.t_ref;
  const MotionModel mv(v), ma(a);
  for (int i = 0; i < 100; ++i) {
    const double t = u(rng);
    CHECK(max_abs_difference(mv.pose_at(t), ma.pose_at(t)) == 0.0);
  }
  a.acceleration = Vec3(0, 2, 0);
  CHECK(MotionModel(a).pose_at(0.3 + 0.5).translation().y() ==
        doctest::Approx(v.T0.y() + v.velocity.y() * 0.5 + 0.25));
}

TEST_CASE("constant angular velocity matches the rotation ODE") {
  motion::RotationConstAngVel r;
  r.R0 = rotation_x(0.2);
  r.angular_velocity = Vec3(0, 0, std::numbers::pi);
  const MotionModel m(r);
  CHECK(m.has_constant_translation());
  const Mat3 R = m.pose_at(0.5).rotation();
  Mat3 quarter;
  quarter << 0, -1, 0, 1, 0, 0, 0, 0, 1;
  CHECK((R - quarter * r.R0).cwiseAbs().maxCoeff() < 1e-14);
  const Mat3 ode = integrate_rotation(r.angular_velocity, r.R0, 0.5, 20);
  CHECK((R - ode).cwiseAbs().maxCoeff() < 1e-5);

  const Vec3 w(0.7, -1.1, 0.4);
  r.angular_velocity = w;
  const MotionModel m2(r);
  for (double t : {0.01, 0.1, 0.33}) {
    CHECK((m2.pose_at(t).rotation() - integrate_rotation(w, r.R0, t, 200)).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("constant angular velocity group property") {
  motion::RotationConstAngVel r;
  r.R0 = exp_so3({0.3, 0.1, -0.2});
  r.angular_velocity = Vec3(0.4, 1.3, -0.6);
  const MotionModel m(r);
  std::mt19937_64 rng(47);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const double t1 = u(rng), t2 = u(rng);
    const Mat3 lhs = m.pose_at(t1 + t2).rotation();
    const Mat3 rhs = exp_so3(r.angular_velocity * t1) * exp_so3(r.angular_velocity * t2) * r.R0;
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("polynomial per degree of freedom") {
  motion::PolynomialPerDof p;
  p.coefficients[2] = {0.0, 0.5};
  p.coefficients[3] = {1.0, 2.0, 3.0};
  p.coefficients[5] = {4.0};
  const MotionModel m(p);
  const Pose at = m.pose_at(0.5);
  CHECK(at.translation().x() == doctest::Approx(1.0 + 1.0 + 0.75));
  CHECK(at.translation().z() == 4.0);
  CHECK((at.rotation() - rotation_z(0.25)).cwiseAbs().maxCoeff() < 1e-14);
  CHECK_FALSE(m.has_constant_translation());

  p.coefficients[0] = {0, 0, 0, 0, 0, 1};
  CHECK_THROWS_AS(MotionModel{p}, Error);
}

TEST_CASE("keyframes reproduce their inputs and interpolate") {
  motion::PiecewiseLinearKeyframes k;
  const Pose a = Pose::from_axis_angle({0, 0.2, 0}, {0, 0, 1});
  const Pose b = Pose::from_axis_angle({0.1, 0.4, -0.1}, {1, 2, 3});
  const Pose c = Pose::from_axis_angle({0.2, 0.3, 0.1}, {-1, 0, 0});
  k.keyframes = {{0.0, a}, {1.0, b}, {1.5, c}};
  const MotionModel m(k);
  CHECK(m.window().begin == 0.0);
  CHECK(m.window().end == 1.5);
  CHECK(max_abs_difference(m.pose_at(0.0), a) == 0.0);
  CHECK(max_abs_difference(m.pose_at(1.0), b) == 0.0);
  CHECK(max_abs_difference(m.pose_at(1.5), c) == 0.0);

  const Pose mid = m.pose_at(0.25);
  const Vec3 lerp = a.translation() + 0.25 * (b.translation() - a.translation());
  CHECK((mid.translation() - lerp).norm() < 1e-15);
  // Geodesic: a quarter of the way along the relative rotation.
  const double total = rotation_angle(b.rotation() * a.rotation().transpose());
  const double part = rotation_angle(mid.rotation() * a.rotation().transpose());
  const double rest = rotation_angle(b.rotation() * mid.rotation().transpose());
  CHECK(part == doctest::Approx(0.25 * total).epsilon(1e-9));
  CHECK(rest == doctest::Approx(0.75 * total).epsilon(1e-9));
}

TEST_CASE("validity window") {
  motion::TranslationConstVel v;
  v.velocity = Vec3(1, 0, 0);
  const MotionModel m(v, TimeWindow{0.0, 1.0});
  CHECK_NOTHROW(m.pose_at(1.0));
  try {
    m.pose_at(1.0 + 1e-9);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kOutsideValidityWindow);
  }
  CHECK_THROWS_AS(m.relative_pose(-0.5, 0.5), Error);

  motion::PiecewiseLinearKeyframes k;
  k.keyframes = {{0.0, Pose::identity()}, {1.0, Pose::identity()}};
  CHECK_THROWS_AS(MotionModel(k, TimeWindow{-1.0, 0.5}), Error);
  k.keyframes = {{1.0, Pose::identity()}, {0.0, Pose::identity()}};
  CHECK_THROWS_AS(MotionModel{k}, Error);
}

TEST_CASE("frame window spans whole frame periods") {
  PartialTiming p;
  p.exposure = 1e-3;
  p.line_delay = 1e-5;
  p.fps = 50.0;
  p.height = 100;
  const ShutterTiming t = complete_timing(p);
  const TimeWindow w = frame_window(t, 0.5, 2, 3);
  CHECK(w.begin == doctest::Approx(0.5 + 2 * 0.02));
  CHECK(w.end == doctest::Approx(0.5 + 5 * 0.02));
  CHECK_THROWS_AS(frame_window(t, 0.0, 0, 0), Error);
}

TEST_CASE("relative pose composes back onto the reference") {
  motion::TranslationConstAccel a;
  a.R0 = exp_so3({0.2, 0.0, 0.1});
  a.T0 = Vec3(1, 2, 3);
  a.velocity = Vec3(0.5, -0.2, 0.3);
  a.acceleration = Vec3(0.1, 0.2, -0.3);
  motion::RotationConstAngVel r;
  r.R0 = exp_so3({-0.1, 0.3, 0.0});
  r.T0 = Vec3(0, 1, 0);
  r.angular_velocity = Vec3(0.3, -2.0, 0.5);
  for (const MotionModel& m : {MotionModel(a), MotionModel(r)}) {
    CHECK(max_abs_difference(m.relative_pose(0.2, 0.2), Pose::identity()) < 1e-15);
    for (double t : {0.0, 0.1, 0.7}) {
      CHECK(max_abs_difference(compose(m.relative_pose(0.2, t), m.pose_at(0.2)), m.pose_at(t)) < 1e-10);
    }
  }
}
