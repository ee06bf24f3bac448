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
#include <random>

#include "rollsim/distortion.hpp"
#include "rollsim/error.hpp"

using namespace rollsim;

namespace {

NormalizedPoint random_in_disk(std::mt19937_64& rng, double radius) {
  std::uniform_real_distribution<double> u(-radius, radius);
  for (;;) {
    const NormalizedPoint p{u(rng), u(rng)};
    if (std::hypot(p.x, p.y) < radius) return p;
  }
}

double dist(const NormalizedPoint& a, const NormalizedPoint& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

}  // namespace

TEST_CASE("distort examples") {
  const RadialDistortion d({-0.2});
  const NormalizedPoint zero = distort(d, {0, 0});
  CHECK(zero.x == 0.0);
  CHECK(zero.y == 0.0);

  const RadialDistortion none({0.0, 0.0, 0.0});
  CHECK(none.is_identity());
  const NormalizedPoint same = distort(none, {0.3, -0.4});
  CHECK(same.x == 0.3);
  CHECK(same.y == -0.4);

  const NormalizedPoint p = distort(d, {0.3, 0.4});
  CHECK(std::abs(p.x - 0.285) < 1e-15);
  CHECK(std::abs(p.y - 0.38) < 1e-15);
}

TEST_CASE("distort evaluates the even series") {
  const RadialDistortion d({0.05, -0.01, 0.002});
  const NormalizedPoint p{0.4, -0.25};
  const double r2 = p.x * p.x + p.y * p.y;
  const double s = 1 + 0.05 * r2 - 0.01 * r2 * r2 + 0.002 * r2 * r2 * r2;
  const NormalizedPoint q = distort(d, p);
  CHECK(std::abs(q.x - s * p.x) < 1e-15);
  CHECK(std::abs(q.y - s * p.y) < 1e-15);
}

TEST_CASE("distort rejects points outside the working radius") {
  const RadialDistortion d({-0.1}, 0.8);
  try {
    distort(d, {0.7, 0.7});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kOutsideWorkingRadius);
  }
}

TEST_CASE("construction rejects non-monotone models") {
  // r (1 - 0.5 r^2) turns over at r = sqrt(2/3).
  try {
    RadialDistortion d({-0.5});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kInvalidDistortion);
  }
  CHECK_NOTHROW(RadialDistortion({-0.5}, 0.8));
  CHECK_THROWS_AS(RadialDistortion({0.1}, -1.0), Error);
  CHECK_THROWS_AS(RadialDistortion({std::nan("")}), Error);
}

TEST_CASE("radial symmetry") {
  const RadialDistortion d({-0.25, 0.04});
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> ang(-3.14, 3.14);
  for (int i = 0; i < 200; ++i) {
    const NormalizedPoint p = random_in_disk(rng, 0.9);
    const double a = ang(rng);
    const double c = std::cos(a), s = std::sin(a);
    const NormalizedPoint rp{c * p.x - s * p.y, s * p.x + c * p.y};
    const NormalizedPoint dp = distort(d, p);
    const NormalizedPoint a1{c * dp.x - s * dp.y, s * dp.x + c * dp.y};
    CHECK(dist(a1, distort(d, rp)) < 1e-14);
    // Direction is preserved.
    CHECK(std::abs(dp.x * p.y - dp.y * p.x) < 1e-14);
  }
}

TEST_CASE("undistort examples") {
  const RadialDistortion d({-0.2});
  const NormalizedPoint zero = undistort_numeric(d, {0, 0});
  CHECK(zero.x == 0.0);
  CHECK(zero.y == 0.0);
  const RadialDistortion none;
  const NormalizedPoint same = undistort_numeric(none, {0.31, -0.77});
  CHECK(same.x == 0.31);
  CHECK(same.y == -0.77);
  const NormalizedPoint p = undistort_numeric(d, {0.285, 0.38});
  CHECK(std::abs(p.x - 0.3) < 1e-10);
  CHECK(std::abs(p.y - 0.4) < 1e-10);
}

TEST_CASE("undistort inverts distort on the working disk") {
  for (const auto& k : std::vector<std::vector<double>>{
           {-0.3}, {-0.1}, {0.1}, {-0.28, 0.05}, {0.2, 0.1, -0.02}}) {
    const RadialDistortion d(k);
    std::mt19937_64 rng(31);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const NormalizedPoint p = random_in_disk(rng, 0.8);
      worst = std::max(worst, dist(undistort_numeric(d, distort(d, p)), p));
    }
    CHECK(worst < 1e-9);
  }
}

TEST_CASE("strong barrel distortion near the turning point still inverts") {
  const RadialDistortion d({-0.33});
  const NormalizedPoint p{0.0, 0.99};
  CHECK(dist(undistort_numeric(d, distort(d, p)), p) < 1e-9);
}

TEST_CASE("undistort rejects points outside the distorted disk") {
  const RadialDistortion d({-0.2});
  CHECK_THROWS_AS(undistort_numeric(d, {0.9, 0.0}), Error);
}

TEST_CASE("fit_inverse of the identity is zero") {
  const InverseRadialDistortion inv = fit_inverse(RadialDistortion(), 3, 0.8);
  for (double c : inv.coefficients()) CHECK(c == 0.0);
  CHECK(inv.fit_residual() == 0.0);
}

TEST_CASE("fit_inverse round trip against the numeric inverse") {
  const RadialDistortion d({-0.2});
  const InverseRadialDistortion inv = fit_inverse(d, 3, 0.6);
  CHECK(inv.coefficients().size() == 3);
  CHECK(inv.fit_residual() < 1e-4);
  std::mt19937_64 rng(37);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const NormalizedPoint pd = random_in_disk(rng, 0.6);
    worst = std::max(worst, dist(apply_inverse(inv, pd), undistort_numeric(d, pd)));
  }
  CHECK(worst < 1e-4);

  const NormalizedPoint back = apply_inverse(inv, distort(d, {0.3, 0.4}));
  CHECK(dist(back, {0.3, 0.4}) <= inv.fit_residual() + 1e-12);
}

TEST_CASE("higher inverse order never fits worse") {
  for (double k1 : {-0.3, -0.1, 0.1, 0.25}) {
    const RadialDistortion d({k1});
    const double rho = d.max_distorted_radius() * 0.95;
    const InverseRadialDistortion lo = fit_inverse(d, 3, rho);
    const InverseRadialDistortion hi = fit_inverse(d, 6, rho);
    CHECK(hi.fit_residual() <= lo.fit_residual() + 1e-15);
  }
}

TEST_CASE("apply_inverse examples and range") {
  const InverseRadialDistortion zero({0.0, 0.0}, 0.5);
  const NormalizedPoint p = apply_inverse(zero, {0.2, -0.1});
  CHECK(p.x == 0.2);
  CHECK(p.y == -0.1);
  const NormalizedPoint o = apply_inverse(zero, {0, 0});
  CHECK(o.x == 0.0);
  CHECK(o.y == 0.0);
  try {
    apply_inverse(zero, {0.5, 0.5});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kOutsideWorkingRadius);
  }
  CHECK_THROWS_AS(fit_inverse(RadialDistortion({-0.2}), 0, 0.5), Error);
}

TEST_CASE("project_distorted applies the lens between the division and K") {
  const Intrinsics K(500, 500, 320, 240);
  const RadialDistortion d({-0.2});
  const PixelPoint p = project_distorted(Pose::identity(), K, d, {0.6, 0.8, 2.0});
  CHECK(std::abs(p.x - (320 + 500 * 0.285)) < 1e-12);
  CHECK(std::abs(p.y - (240 + 500 * 0.38)) < 1e-12);
}
