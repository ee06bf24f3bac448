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

#include "rollsim/error.hpp"
#include "rollsim/shutter.hpp"

using namespace rollsim;

namespace {

ShutterTiming solve_tf(double te, double tr, int H, double fps,
                       ShutterMode mode = ShutterMode::kRolling,
                       SweepDirection sweep = SweepDirection::kTopToBottom) {
  PartialTiming p;
  p.exposure = te;
  p.line_delay = tr;
  p.fps = fps;
  p.height = H;
  p.mode = mode;
  p.sweep = sweep;
  return complete_timing(p);
}

ErrorCode code_of(const PartialTiming& p) {
  try {
    complete_timing(p);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kInternal;
}

}  // namespace

TEST_CASE("row_start_time examples") {
  const ShutterTiming t = solve_tf(0.01, 1e-5, 480, 30.0);
  CHECK(row_start_time(t, 0.0, 0, 0) == 0.0);
  CHECK(row_start_time(t, 0.0, 100, 2) ==
        doctest::Approx(100 * 1e-5 + 2.0 / 30.0).epsilon(1e-15));
  CHECK(std::abs(row_start_time(t, 0.0, 100, 2) - 0.0676667) < 1e-7);
  CHECK(row_start_time(t, 1.5, 0, 0) == 1.5);
}

TEST_CASE("global mode exposes every row at once") {
  const ShutterTiming t = solve_tf(0.01, 1e-5, 480, 30.0, ShutterMode::kGlobal);
  for (int y : {0, 1, 239, 479}) CHECK(row_start_time(t, 0.25, y, 3) == 0.25 + 3.0 / 30.0);
}

TEST_CASE("rows outside the sensor are rejected") {
  const ShutterTiming t = solve_tf(0.01, 1e-5, 480, 30.0);
  for (int y : {-1, 480, 100000}) {
    try {
      row_start_time(t, 0.0, y, 0);
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kRowOutOfRange);
    }
  }
}

TEST_CASE("row_start_time is affine in row and frame") {
  // Dyadic values keep every product and sum exact in binary.
  const ShutterTiming t = solve_tf(0.0, 1.0 / 65536, 1024, 32.0);
  REQUIRE(t.frame_delay() == 0.03125 - 1024.0 / 65536);
  for (int y = 0; y + 1 < 1024; y += 37) {
    for (int fi = 0; fi < 5; ++fi) {
      CHECK(row_start_time(t, 0.0, y + 1, fi) - row_start_time(t, 0.0, y, fi) == t.line_delay());
      CHECK(row_start_time(t, 0.0, y, fi + 1) - row_start_time(t, 0.0, y, fi) == t.frame_period());
    }
  }
}

TEST_CASE("reverse sweep reads the bottom row first") {
  const ShutterTiming t = solve_tf(0.001, 2e-5, 100, 50.0, ShutterMode::kRolling,
                                   SweepDirection::kBottomToTop);
  CHECK(row_start_time(t, 0.0, 99, 0) == 0.0);
  CHECK(row_start_time(t, 0.0, 0, 0) == doctest::Approx(99 * 2e-5));
}

TEST_CASE("complete_timing examples") {
  const ShutterTiming t = solve_tf(5e-3, 1e-5, 480, 100.0);
  CHECK(t.frame_delay() == doctest::Approx(2e-4).epsilon(1e-9));

  const ShutterTiming edge = solve_tf(0.01 - 480 * 1e-5, 1e-5, 480, 100.0);
  CHECK(std::abs(edge.frame_delay()) < 1e-15);

  PartialTiming bad;
  bad.exposure = 0.006;
  bad.line_delay = 1e-5;
  bad.fps = 100.0;
  bad.height = 480;
  CHECK(code_of(bad) == ErrorCode::kInfeasibleTiming);
}

TEST_CASE("complete_timing solves each unknown and satisfies the identity") {
  const double te = 2e-3, tr = 3e-5, tf = 4e-4;
  const int H = 240;
  const double fps = 1.0 / (H * tr + tf + te);
  for (int unknown = 0; unknown < 4; ++unknown) {
    PartialTiming p;
    p.height = H;
    if (unknown != 0) p.exposure = te;
    if (unknown != 1) p.line_delay = tr;
    if (unknown != 2) p.frame_delay = tf;
    if (unknown != 3) p.fps = fps;
    const ShutterTiming t = complete_timing(p);
    const double lhs = 1.0 / t.fps();
    const double rhs = H * t.line_delay() + t.frame_delay() + t.exposure();
    CHECK(std::abs(lhs - rhs) <= 1e-12 * lhs);
    CHECK(t.exposure() == doctest::Approx(te).epsilon(1e-9));
    CHECK(t.line_delay() == doctest::Approx(tr).epsilon(1e-9));
    CHECK(t.frame_delay() == doctest::Approx(tf).epsilon(1e-9));
    CHECK(t.fps() == doctest::Approx(fps).epsilon(1e-9));
  }
}

TEST_CASE("complete_timing rejects over and under constrained input") {
  PartialTiming all;
  all.exposure = 1e-3;
  all.line_delay = 1e-5;
  all.frame_delay = 0.0;
  all.fps = 100.0;
  all.height = 100;
  CHECK(code_of(all) == ErrorCode::kOverconstrained);

  PartialTiming two;
  two.exposure = 1e-3;
  two.fps = 100.0;
  two.height = 100;
  CHECK(code_of(two) == ErrorCode::kUnderconstrained);

  PartialTiming neg;
  neg.exposure = -1e-3;
  neg.line_delay = 1e-5;
  neg.fps = 100.0;
  neg.height = 100;
  CHECK(code_of(neg) == ErrorCode::kInvalidTiming);
}

TEST_CASE("constructor enforces the identity") {
  CHECK_THROWS_AS(ShutterTiming(1e-3, 1e-5, 0.0, 100, 100.0), Error);
  CHECK_THROWS_AS(ShutterTiming(-1e-3, 1e-5, 0.0, 100, 1.0 / (1e-3)), Error);
  CHECK_THROWS_AS(ShutterTiming(1e-3, 1e-5, 0.0, 0, 100.0), Error);
  const double fps = 1.0 / (100 * 1e-5 + 1e-3);
  CHECK_NOTHROW(ShutterTiming(1e-3, 1e-5, 0.0, 100, fps));
}

TEST_CASE("without frame delay the last row hands over to the next frame") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const int H = 50 + static_cast<int>(u(rng) * 1000);
    const double tr = 1e-6 + u(rng) * 5e-5;
    const double te = u(rng) * 1e-2;
    PartialTiming p;
    p.exposure = te;
    p.line_delay = tr;
    p.frame_delay = 0.0;
    p.height = H;
    const ShutterTiming t = complete_timing(p);
    const int fi = static_cast<int>(u(rng) * 10);
    const double end = row_start_time(t, 0.0, H - 1, fi) + tr + te;
    const double next = row_start_time(t, 0.0, 0, fi + 1);
    CHECK(std::abs(end - next) <= te + 1e-12);
  }
}
