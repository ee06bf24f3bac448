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
#include <cstring>
#include <filesystem>
#include <limits>
#include <string>
#include <vector>

#include "rollsim/rollsim.h"

namespace {

double quadratic(const double* theta, size_t n, double* gradient, void* user) {
  const double* curv = static_cast<const double*>(user);
  double f = 0.0;
  for (size_t i = 0; i < n; ++i) {
    f += 0.5 * curv[i] * theta[i] * theta[i];
    gradient[i] = curv[i] * theta[i];
  }
  return f;
}

rollsim_timing timing_tf(double te, double tr, double fps, int H) {
  rollsim_timing t{};
  t.exposure = te;
  t.line_delay = tr;
  t.fps = fps;
  t.height = H;
  t.mode = ROLLSIM_SHUTTER_ROLLING;
  REQUIRE(rollsim_timing_complete(&t, ROLLSIM_TIMING_FRAME_DELAY) == ROLLSIM_OK);
  return t;
}

}  // namespace

TEST_CASE("version and status strings") {
  CHECK(std::strlen(rollsim_version()) > 0);
  CHECK(std::string(rollsim_status_string(ROLLSIM_OK)) == "ok");
  CHECK(std::strlen(rollsim_status_string(ROLLSIM_ERR_NOT_IMAGED_THIS_FRAME)) > 0);
}

TEST_CASE("projection through the C interface") {
  const rollsim_pose I = rollsim_pose_identity();
  const rollsim_intrinsics K{500, 500, 320, 240, 0};
  const double X[3] = {0.1, -0.2, 2.0};
  double px[2];
  REQUIRE(rollsim_project(&I, &K, X, px) == ROLLSIM_OK);
  CHECK(px[0] == doctest::Approx(345));
  CHECK(px[1] == doctest::Approx(190));
  double back[3];
  REQUIRE(rollsim_backproject(&K, px, 2.0, back) == ROLLSIM_OK);
  CHECK(std::abs(back[0] - 0.1) < 1e-12);

  const double behind[3] = {0, 0, -1};
  CHECK(rollsim_project(&I, &K, behind, px) == ROLLSIM_ERR_POINT_BEHIND_CAMERA);
  CHECK(std::strlen(rollsim_last_error()) > 0);
  CHECK(rollsim_project(nullptr, &K, X, px) == ROLLSIM_ERR_INVALID_ARGUMENT);
  CHECK(rollsim_backproject(&K, px, 0.0, back) == ROLLSIM_ERR_NON_POSITIVE_DEPTH);
}

TEST_CASE("timing through the C interface") {
  const rollsim_timing t = timing_tf(5e-3, 1e-5, 100.0, 480);
  CHECK(t.frame_delay == doctest::Approx(2e-4));
  CHECK(rollsim_timing_validate(&t) == ROLLSIM_OK);
  double start;
  REQUIRE(rollsim_row_start_time(&t, 0.0, 100, 2, &start) == ROLLSIM_OK);
  CHECK(start == doctest::Approx(100 * 1e-5 + 0.02));
  CHECK(rollsim_row_start_time(&t, 0.0, 480, 0, &start) == ROLLSIM_ERR_ROW_OUT_OF_RANGE);

  rollsim_timing bad = t;
  bad.exposure = 0.006;
  CHECK(rollsim_timing_complete(&bad, ROLLSIM_TIMING_FRAME_DELAY) == ROLLSIM_ERR_INFEASIBLE_TIMING);
  CHECK(rollsim_timing_complete(&bad, 0) == ROLLSIM_ERR_OVERCONSTRAINED);
  CHECK(rollsim_timing_complete(&bad, ROLLSIM_TIMING_FPS | ROLLSIM_TIMING_EXPOSURE) ==
        ROLLSIM_ERR_UNDERCONSTRAINED);
}

TEST_CASE("distortion handles") {
  const double k[1] = {-0.2};
  rollsim_distortion* d = nullptr;
  REQUIRE(rollsim_distortion_create(k, 1, 1.0, &d) == ROLLSIM_OK);
  const double p[2] = {0.3, 0.4};
  double q[2], r[2];
  REQUIRE(rollsim_distort(d, p, q) == ROLLSIM_OK);
  CHECK(q[0] == doctest::Approx(0.285));
  REQUIRE(rollsim_undistort(d, q, 1e-12, r) == ROLLSIM_OK);
  CHECK(std::abs(r[0] - 0.3) < 1e-10);

  rollsim_inverse_distortion* inv = nullptr;
  REQUIRE(rollsim_fit_inverse(d, 3, 0.6, 2000, &inv) == ROLLSIM_OK);
  double coeff[2];
  size_t count = 0;
  double residual = -1;
  CHECK(rollsim_inverse_coefficients(inv, coeff, 2, &count, &residual) == ROLLSIM_ERR_BUFFER_TOO_SMALL);
  CHECK(count == 3);
  double coeff3[3];
  REQUIRE(rollsim_inverse_coefficients(inv, coeff3, 3, &count, &residual) == ROLLSIM_OK);
  CHECK(residual < 1e-4);
  REQUIRE(rollsim_inverse_apply(inv, q, r) == ROLLSIM_OK);
  CHECK(std::abs(r[0] - 0.3) < 1e-4);
  rollsim_inverse_distortion_destroy(inv);
  rollsim_distortion_destroy(d);

  const double bad[1] = {-0.5};
  CHECK(rollsim_distortion_create(bad, 1, 1.0, &d) == ROLLSIM_ERR_INVALID_DISTORTION);
  rollsim_distortion_destroy(nullptr);
}

TEST_CASE("motion handles") {
  const rollsim_pose I = rollsim_pose_identity();
  const double v[3] = {1, 0, 0};
  rollsim_motion* m = nullptr;
  REQUIRE(rollsim_motion_create_const_velocity(&I, v, 0.0, &m) == ROLLSIM_OK);
  rollsim_pose p;
  REQUIRE(rollsim_motion_pose_at(m, 0.25, &p) == ROLLSIM_OK);
  CHECK(p.T[0] == 0.25);
  REQUIRE(rollsim_motion_set_window(m, 0.0, 1.0) == ROLLSIM_OK);
  CHECK(rollsim_motion_pose_at(m, 2.0, &p) == ROLLSIM_ERR_OUTSIDE_VALIDITY_WINDOW);
  rollsim_motion_destroy(m);

  const double omega[3] = {0, 0, M_PI};
  REQUIRE(rollsim_motion_create_const_angular_velocity(&I, omega, 0.0, &m) == ROLLSIM_OK);
  REQUIRE(rollsim_motion_pose_at(m, 0.5, &p) == ROLLSIM_OK);
  CHECK(std::abs(p.R[1] + 1.0) < 1e-14);
  CHECK(std::abs(p.R[3] - 1.0) < 1e-14);
  rollsim_motion_destroy(m);

  rollsim_pose poses[2] = {I, I};
  poses[1].T[2] = 1.0;
  const double times[2] = {0.0, 1.0};
  REQUIRE(rollsim_motion_create_keyframes(times, poses, 2, &m) == ROLLSIM_OK);
  REQUIRE(rollsim_motion_pose_at(m, 0.5, &p) == ROLLSIM_OK);
  CHECK(p.T[2] == 0.5);
  rollsim_motion_destroy(m);
  const double bad_times[2] = {1.0, 0.0};
  CHECK(rollsim_motion_create_keyframes(bad_times, poses, 2, &m) == ROLLSIM_ERR_INVALID_ARGUMENT);
}

TEST_CASE("rendering, projection and rectification") {
  const rollsim_timing t = timing_tf(1e-3, 1e-4, 1.0 / (60 * 1e-4 + 2e-3), 60);
  const rollsim_intrinsics K{120, 120, 39.5, 29.5, 0};
  rollsim_scene* s = nullptr;
  REQUIRE(rollsim_scene_create_sky(12, &s) == ROLLSIM_OK);
  const double w[3] = {0, 0.3, 0}, T[3] = {0, 0, 0};
  rollsim_pose P;
  REQUIRE(rollsim_pose_from_axis_angle(w, T, &P) == ROLLSIM_OK);
  rollsim_motion* still = nullptr;
  REQUIRE(rollsim_motion_create_static(&P, &still) == ROLLSIM_OK);
  rollsim_render_options o = rollsim_render_options_default();
  o.exposure_samples = 3;
  rollsim_frame *rs = nullptr, *gs = nullptr, *rect = nullptr;
  REQUIRE(rollsim_synthesize_rs_frame(s, still, &K, nullptr, &t, 80, 0.0, 0, &o, &rs) == ROLLSIM_OK);
  REQUIRE(rollsim_render_gs(s, &P, &K, nullptr, 80, 60, &o, 0.0, &gs) == ROLLSIM_OK);
  CHECK(std::memcmp(rollsim_frame_pixels(rs), rollsim_frame_pixels(gs), sizeof(double) * 80 * 60) == 0);
  CHECK(rollsim_frame_width(rs) == 80);
  CHECK(rollsim_frame_height(rs) == 60);
  CHECK(rollsim_frame_row_times(rs)[1] == doctest::Approx(1e-4));

  REQUIRE(rollsim_rectify_rotation_only(rs, still, &K, &t, 30, nullptr, 1, 2, &rect) == ROLLSIM_OK);
  rollsim_comparison c;
  REQUIRE(rollsim_compare_frames(rect, rs, &c) == ROLLSIM_OK);
  CHECK(c.mae == 0.0);
  CHECK(c.psnr == std::numeric_limits<double>::infinity());
  CHECK(rollsim_rectify_rotation_only(rs, still, &K, &t, 60, nullptr, 1, 1, &rect) ==
        ROLLSIM_ERR_ANCHOR_OUT_OF_RANGE);

  const double X[3] = {0.2, 0.1, 3.0};
  rollsim_rs_projection pr;
  REQUIRE(rollsim_rs_project_point(X, still, &K, nullptr, &t, 0.0, 0, 0.0, 0, &pr) == ROLLSIM_OK);
  double px[2];
  REQUIRE(rollsim_project(&P, &K, X, px) == ROLLSIM_OK);
  CHECK(pr.px[0] == px[0]);
  CHECK(pr.row == static_cast<int>(std::lround(px[1])));
  rollsim_rs_projection all[4];
  size_t n = 0;
  REQUIRE(rollsim_rs_project_point_all(X, still, &K, nullptr, &t, 0.0, 0, 0.0, 0, all, 4, &n) == ROLLSIM_OK);
  CHECK(n == 1);
  const double far[3] = {0, 0, -3};
  CHECK(rollsim_rs_project_point(far, still, &K, nullptr, &t, 0.0, 0, 0.0, 0, &pr) ==
        ROLLSIM_ERR_NOT_IMAGED_THIS_FRAME);

  rollsim_frame_destroy(rect);
  rollsim_frame_destroy(gs);
  rollsim_frame_destroy(rs);
  rollsim_motion_destroy(still);
  rollsim_scene_destroy(s);
}

TEST_CASE("frames round trip through files") {
  std::vector<double> px(12);
  for (int i = 0; i < 12; ++i) px[i] = i / 11.0;
  rollsim_frame* f = nullptr;
  REQUIRE(rollsim_frame_create(4, 3, px.data(), nullptr, &f) == ROLLSIM_OK);
  const std::string path = (std::filesystem::temp_directory_path() / "rollsim_capi.png").string();
  REQUIRE(rollsim_frame_write(f, path.c_str(), 16, "feed") == ROLLSIM_OK);
  rollsim_frame* g = nullptr;
  REQUIRE(rollsim_frame_read(path.c_str(), &g) == ROLLSIM_OK);
  for (int i = 0; i < 12; ++i) CHECK(std::abs(rollsim_frame_pixels(g)[i] - px[i]) < 1e-4);
  CHECK(rollsim_frame_read("/nonexistent/x.png", &g) == ROLLSIM_ERR_IO);
  rollsim_frame_destroy(g);
  rollsim_frame_destroy(f);
}

TEST_CASE("numerics through the C interface") {
  const double A[2] = {1, 1}, B[2] = {0, 2}, W[2] = {3, 1};
  double theta, res;
  REQUIRE(rollsim_solve_least_squares(A, B, W, 2, 1, &theta, &res) == ROLLSIM_OK);
  CHECK(theta == doctest::Approx(0.2));
  const double D[4] = {10, 0, 0, 1};
  double k;
  REQUIRE(rollsim_condition_number(D, nullptr, 2, 2, &k) == ROLLSIM_OK);
  CHECK(k == 10.0);
  const double S[4] = {1, 2, 2, 4};
  CHECK(rollsim_solve_least_squares(S, B, nullptr, 2, 2, nullptr, &res) == ROLLSIM_ERR_INVALID_ARGUMENT);
  double th2[2];
  CHECK(rollsim_solve_least_squares(S, B, nullptr, 2, 2, th2, &res) == ROLLSIM_ERR_RANK_DEFICIENT);

  double curv[2] = {1.0, 100.0};
  const double x0[2] = {1.0, 1.0};
  rollsim_optimizer_config cfg = rollsim_optimizer_config_default();
  cfg.gamma = 0.015;
  cfg.max_iters = 300;
  rollsim_trace *gd = nullptr, *hb = nullptr;
  REQUIRE(rollsim_gradient_descent(quadratic, curv, x0, 2, &cfg, &gd) == ROLLSIM_OK);
  REQUIRE(rollsim_heavy_ball(quadratic, curv, x0, 2, &cfg, &hb) == ROLLSIM_OK);
  REQUIRE(rollsim_trace_length(gd) == rollsim_trace_length(hb));
  for (size_t i = 0; i < rollsim_trace_length(gd); ++i) {
    double a[2], b[2], fa, fb, ga, gb;
    rollsim_trace_entry(gd, i, a, &fa, &ga);
    rollsim_trace_entry(hb, i, b, &fb, &gb);
    CHECK(std::memcmp(a, b, sizeof a) == 0);
    CHECK(std::memcmp(&fa, &fb, sizeof fa) == 0);
  }
  rollsim_trace_destroy(gd);
  rollsim_trace_destroy(hb);
  cfg.gamma = 0.05;
  CHECK(rollsim_gradient_descent(quadratic, curv, x0, 2, &cfg, &gd) == ROLLSIM_ERR_DIVERGED);
}

TEST_CASE("calibration through the C interface") {
  const rollsim_timing t = timing_tf(1e-4, 2e-5, 1.0 / (480 * 2e-5 + 1e-3 + 1e-4), 480);
  rollsim_frame* frames[2] = {nullptr, nullptr};
  REQUIRE(rollsim_synthesize_flash_frames(&t, 8, 200.0, 0.0, 8, 0.0, 0, 0.0, 0, 2, frames) == ROLLSIM_OK);
  rollsim_calibration c;
  REQUIRE(rollsim_calibrate_line_rate(frames, 2, 200.0, t.exposure, t.fps, &c) == ROLLSIM_OK);
  CHECK(std::abs(c.line_delay - 2e-5) / 2e-5 < 0.01);
  CHECK(std::abs(c.frame_delay - 1e-3) / 1e-3 < 0.05);
  CHECK(c.frame_delay_ambiguous == 0);
  REQUIRE(rollsim_calibrate_line_rate(frames, 1, 200.0, t.exposure, 0.0, &c) == ROLLSIM_OK);
  CHECK(std::isnan(c.frame_delay));
  rollsim_frame_destroy(frames[0]);
  rollsim_frame_destroy(frames[1]);
}

TEST_CASE("run entry point") {
  const std::string dir = (std::filesystem::temp_directory_path() / "rollsim_capi_run").string();
  std::filesystem::remove_all(dir);
  const char* cfg = R"({
    "image": {"width": 32, "height": 24},
    "intrinsics": {"fx": 40.0},
    "timing": {"te_s": 0.0, "tr_s": 1e-4, "tf_s": "solve", "fps": 100.0},
    "motion": {"type": "static"},
    "scene": {"type": "procedural", "pattern": "sky_sinusoid", "cycles": 6}
  })";
  rollsim_run_options o{};
  o.out_dir = dir.c_str();
  o.threads = 1;
  char* summary = nullptr;
  char* message = nullptr;
  CHECK(rollsim_run(ROLLSIM_CMD_SIMULATE, cfg, 1, &o, &summary, &message) == 0);
  REQUIRE(summary != nullptr);
  CHECK(std::string(summary).find("\"command\":\"simulate\"") != std::string::npos);
  rollsim_string_free(summary);
  rollsim_string_free(message);
  CHECK(std::filesystem::exists(dir + "/summary.json"));

  summary = message = nullptr;
  CHECK(rollsim_run(ROLLSIM_CMD_SIMULATE, "{\"image\": 3}", 1, &o, &summary, &message) == 2);
  REQUIRE(message != nullptr);
  CHECK(std::string(message).find("image") != std::string::npos);
  rollsim_string_free(summary);
  rollsim_string_free(message);
}
