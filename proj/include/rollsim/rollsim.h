/* Copyright 2026 The rollsim Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface of the rollsim library.
 *
 * Every function returns a rollsim_status. On failure the thread-local
 * message from rollsim_last_error() describes the problem. Objects behind
 * opaque handles are created by *_create* functions and released with the
 * matching *_destroy; destroy functions accept NULL. Matrices are row-major.
 * Poses map world to camera coordinates: X_cam = R X + T.
 */

#ifndef ROLLSIM_ROLLSIM_H
#define ROLLSIM_ROLLSIM_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(ROLLSIM_BUILDING_LIBRARY)
#define ROLLSIM_API __declspec(dllexport)
#else
#define ROLLSIM_API __declspec(dllimport)
#endif
#else
#define ROLLSIM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rollsim_status {
  ROLLSIM_OK = 0,
  ROLLSIM_ERR_INVALID_ARGUMENT = 1,
  ROLLSIM_ERR_POINT_BEHIND_CAMERA = 2,
  ROLLSIM_ERR_NON_POSITIVE_DEPTH = 3,
  ROLLSIM_ERR_INVALID_POSE = 4,
  ROLLSIM_ERR_INVALID_DISTORTION = 5,
  ROLLSIM_ERR_OUTSIDE_WORKING_RADIUS = 6,
  ROLLSIM_ERR_NO_CONVERGENCE = 7,
  ROLLSIM_ERR_DEGENERATE_FIT = 8,
  ROLLSIM_ERR_ROW_OUT_OF_RANGE = 9,
  ROLLSIM_ERR_INFEASIBLE_TIMING = 10,
  ROLLSIM_ERR_OVERCONSTRAINED = 11,
  ROLLSIM_ERR_UNDERCONSTRAINED = 12,
  ROLLSIM_ERR_INVALID_TIMING = 13,
  ROLLSIM_ERR_OUTSIDE_VALIDITY_WINDOW = 14,
  ROLLSIM_ERR_NOT_IMAGED_THIS_FRAME = 15,
  ROLLSIM_ERR_MULTIPLE_SOLUTIONS = 16,
  ROLLSIM_ERR_ANCHOR_OUT_OF_RANGE = 17,
  ROLLSIM_ERR_RANK_DEFICIENT = 18,
  ROLLSIM_ERR_DIVERGED = 19,
  ROLLSIM_ERR_NO_DOMINANT_BAND = 20,
  ROLLSIM_ERR_CONFIG = 21,
  ROLLSIM_ERR_IO = 22,
  ROLLSIM_ERR_BUFFER_TOO_SMALL = 23,
  ROLLSIM_ERR_INTERNAL = 99
} rollsim_status;

ROLLSIM_API const char* rollsim_version(void);
ROLLSIM_API const char* rollsim_status_string(rollsim_status status);
/* Message of the last failure on the calling thread ("" if none). */
ROLLSIM_API const char* rollsim_last_error(void);

/* ---- value types ------------------------------------------------------ */

typedef struct rollsim_pose {
  double R[9];
  double T[3];
} rollsim_pose;

typedef struct rollsim_intrinsics {
  double fx, fy, cx, cy, skew;
} rollsim_intrinsics;

typedef enum rollsim_shutter_mode {
  ROLLSIM_SHUTTER_ROLLING = 0,
  ROLLSIM_SHUTTER_GLOBAL = 1
} rollsim_shutter_mode;

typedef struct rollsim_timing {
  double exposure;    /* t_e, seconds */
  double line_delay;  /* t_r */
  double frame_delay; /* t_f */
  double fps;
  int height;
  int mode;           /* rollsim_shutter_mode */
  int reverse_sweep;  /* nonzero: bottom row read first */
} rollsim_timing;

/* Flags naming the unknown of rollsim_timing_complete. */
#define ROLLSIM_TIMING_EXPOSURE 1u
#define ROLLSIM_TIMING_LINE_DELAY 2u
#define ROLLSIM_TIMING_FRAME_DELAY 4u
#define ROLLSIM_TIMING_FPS 8u

ROLLSIM_API rollsim_pose rollsim_pose_identity(void);
ROLLSIM_API rollsim_status rollsim_pose_from_axis_angle(const double w[3],
                                                        const double T[3],
                                                        rollsim_pose* out);

ROLLSIM_API rollsim_status rollsim_project(const rollsim_pose* pose,
                                           const rollsim_intrinsics* K,
                                           const double X[3], double out_px[2]);
ROLLSIM_API rollsim_status rollsim_backproject(const rollsim_intrinsics* K,
                                               const double px[2], double depth,
                                               double out_X[3]);

ROLLSIM_API rollsim_status rollsim_timing_validate(const rollsim_timing* t);
/* Solves the one field named by `unknown` from the frame-period identity. */
ROLLSIM_API rollsim_status rollsim_timing_complete(rollsim_timing* t,
                                                   unsigned unknown);
ROLLSIM_API rollsim_status rollsim_row_start_time(const rollsim_timing* t,
                                                  double tau0, int y, int fi,
                                                  double* out);

/* ---- distortion ------------------------------------------------------- */

typedef struct rollsim_distortion rollsim_distortion;
typedef struct rollsim_inverse_distortion rollsim_inverse_distortion;

ROLLSIM_API rollsim_status rollsim_distortion_create(
    const double* k, size_t count, double working_radius,
    rollsim_distortion** out);
ROLLSIM_API void rollsim_distortion_destroy(rollsim_distortion* d);
ROLLSIM_API rollsim_status rollsim_distort(const rollsim_distortion* d,
                                           const double p[2], double out[2]);
/* tol <= 0 selects the default tolerance. */
ROLLSIM_API rollsim_status rollsim_undistort(const rollsim_distortion* d,
                                             const double pd[2], double tol,
                                             double out[2]);
ROLLSIM_API rollsim_status rollsim_fit_inverse(
    const rollsim_distortion* d, int order, double rho_max, int samples,
    rollsim_inverse_distortion** out);
ROLLSIM_API void rollsim_inverse_distortion_destroy(
    rollsim_inverse_distortion* inv);
ROLLSIM_API rollsim_status rollsim_inverse_apply(
    const rollsim_inverse_distortion* inv, const double pd[2], double out[2]);
/* Copies up to `capacity` coefficients; *count receives the total. */
ROLLSIM_API rollsim_status rollsim_inverse_coefficients(
    const rollsim_inverse_distortion* inv, double* out, size_t capacity,
    size_t* count, double* fit_residual);

/* ---- motion ----------------------------------------------------------- */

typedef struct rollsim_motion rollsim_motion;

ROLLSIM_API rollsim_status rollsim_motion_create_static(const rollsim_pose* pose,
                                                        rollsim_motion** out);
ROLLSIM_API rollsim_status rollsim_motion_create_const_velocity(
    const rollsim_pose* pose0, const double velocity[3], double t_ref,
    rollsim_motion** out);
ROLLSIM_API rollsim_status rollsim_motion_create_const_acceleration(
    const rollsim_pose* pose0, const double velocity[3],
    const double acceleration[3], double t_ref, rollsim_motion** out);
ROLLSIM_API rollsim_status rollsim_motion_create_const_angular_velocity(
    const rollsim_pose* pose0, const double omega[3], double t_ref,
    rollsim_motion** out);
/* coefficients: 6 rows (rx, ry, rz, tx, ty, tz) of 5 values, lowest degree
 * first. The rotation is exp([r(t)]x) R0. */
ROLLSIM_API rollsim_status rollsim_motion_create_polynomial(
    const double R0[9], const double coefficients[30], double t_ref,
    rollsim_motion** out);
ROLLSIM_API rollsim_status rollsim_motion_create_keyframes(
    const double* times, const rollsim_pose* poses, size_t count,
    rollsim_motion** out);
/* Replaces the validity window (infinite bounds allowed). */
ROLLSIM_API rollsim_status rollsim_motion_set_window(rollsim_motion* m,
                                                     double begin, double end);
ROLLSIM_API rollsim_status rollsim_motion_pose_at(const rollsim_motion* m,
                                                  double t, rollsim_pose* out);
ROLLSIM_API void rollsim_motion_destroy(rollsim_motion* m);

/* ---- scene ------------------------------------------------------------ */

typedef struct rollsim_scene rollsim_scene;

typedef enum rollsim_texture_pattern {
  ROLLSIM_TEXTURE_CHECKER = 0,
  ROLLSIM_TEXTURE_SINUSOID = 1,
  ROLLSIM_TEXTURE_BARS = 2,
  ROLLSIM_TEXTURE_VALUE_NOISE = 3
} rollsim_texture_pattern;

ROLLSIM_API rollsim_status rollsim_scene_create_points(const double* xyz,
                                                       const double* radiance,
                                                       size_t count,
                                                       rollsim_scene** out);
/* texels: tex_width * tex_height values in [0, 1]. */
ROLLSIM_API rollsim_status rollsim_scene_create_plane(
    const rollsim_pose* plane_to_world, double extent_u, double extent_v,
    const double* texels, int tex_width, int tex_height, rollsim_scene** out);
ROLLSIM_API rollsim_status rollsim_scene_create_pattern_plane(
    const rollsim_pose* plane_to_world, double extent_u, double extent_v,
    int pattern, int tex_width, int tex_height, double period, uint64_t seed,
    rollsim_scene** out);
/* Direction-only content: sinusoid with `cycles`. */
ROLLSIM_API rollsim_status rollsim_scene_create_sky(double cycles,
                                                    rollsim_scene** out);
ROLLSIM_API void rollsim_scene_destroy(rollsim_scene* s);

/* ---- frames ----------------------------------------------------------- */

typedef struct rollsim_frame rollsim_frame;

/* pixels (width * height) is copied; row_times may be NULL. */
ROLLSIM_API rollsim_status rollsim_frame_create(int width, int height,
                                                const double* pixels,
                                                const double* row_times,
                                                rollsim_frame** out);
ROLLSIM_API void rollsim_frame_destroy(rollsim_frame* f);
ROLLSIM_API int rollsim_frame_width(const rollsim_frame* f);
ROLLSIM_API int rollsim_frame_height(const rollsim_frame* f);
ROLLSIM_API const double* rollsim_frame_pixels(const rollsim_frame* f);
/* NULL when the frame carries no such data. */
ROLLSIM_API const double* rollsim_frame_row_times(const rollsim_frame* f);
ROLLSIM_API const double* rollsim_frame_depth(const rollsim_frame* f);
ROLLSIM_API const uint8_t* rollsim_frame_valid(const rollsim_frame* f);
ROLLSIM_API rollsim_status rollsim_frame_row_pose(const rollsim_frame* f,
                                                  int row, rollsim_pose* out);
ROLLSIM_API rollsim_status rollsim_frame_read(const char* path,
                                              rollsim_frame** out);
/* PNG or PGM by extension; config_hash may be NULL. */
ROLLSIM_API rollsim_status rollsim_frame_write(const rollsim_frame* f,
                                               const char* path, int bit_depth,
                                               const char* config_hash);

/* ---- simulation ------------------------------------------------------- */

typedef struct rollsim_render_options {
  int exposure_samples;
  double gamma;
  int jitter;
  uint64_t seed;
  int threads;
} rollsim_render_options;

ROLLSIM_API rollsim_render_options rollsim_render_options_default(void);

/* `d` may be NULL for an ideal pinhole. */
ROLLSIM_API rollsim_status rollsim_render_gs(
    const rollsim_scene* scene, const rollsim_pose* pose,
    const rollsim_intrinsics* K, const rollsim_distortion* d, int width,
    int height, const rollsim_render_options* options, double time,
    rollsim_frame** out);
ROLLSIM_API rollsim_status rollsim_synthesize_rs_frame(
    const rollsim_scene* scene, const rollsim_motion* motion,
    const rollsim_intrinsics* K, const rollsim_distortion* d,
    const rollsim_timing* timing, int width, double tau0, int fi,
    const rollsim_render_options* options, rollsim_frame** out);

typedef struct rollsim_rs_projection {
  double px[2];
  double time;
  int row;
} rollsim_rs_projection;

/* tol <= 0 selects line_delay / 100; width <= 0 disables the column check. */
ROLLSIM_API rollsim_status rollsim_rs_project_point(
    const double X[3], const rollsim_motion* motion,
    const rollsim_intrinsics* K, const rollsim_distortion* d,
    const rollsim_timing* timing, double tau0, int fi, double tol, int width,
    rollsim_rs_projection* out);
/* All images of X; *count receives the total even when it exceeds capacity
 * (then ROLLSIM_ERR_BUFFER_TOO_SMALL is returned). */
ROLLSIM_API rollsim_status rollsim_rs_project_point_all(
    const double X[3], const rollsim_motion* motion,
    const rollsim_intrinsics* K, const rollsim_distortion* d,
    const rollsim_timing* timing, double tau0, int fi, double tol, int width,
    rollsim_rs_projection* out, size_t capacity, size_t* count);

ROLLSIM_API rollsim_status rollsim_rectify_rotation_only(
    const rollsim_frame* frame, const rollsim_motion* motion,
    const rollsim_intrinsics* K, const rollsim_timing* timing, int anchor_row,
    const rollsim_distortion* d, int reapply_distortion, int threads,
    rollsim_frame** out);
/* depth: width * height camera depths (NaN or <= 0 for holes). */
ROLLSIM_API rollsim_status rollsim_rectify_known_depth(
    const rollsim_frame* frame, const rollsim_motion* motion,
    const rollsim_intrinsics* K, const rollsim_timing* timing,
    const double* depth, int anchor_row, const rollsim_distortion* d,
    int reapply_distortion, int threads, rollsim_frame** out);

typedef struct rollsim_comparison {
  double mae;
  double psnr; /* +inf for identical frames */
  double coverage;
} rollsim_comparison;

ROLLSIM_API rollsim_status rollsim_compare_frames(const rollsim_frame* test,
                                                  const rollsim_frame* ref,
                                                  rollsim_comparison* out);

/* ---- numerics --------------------------------------------------------- */

/* A is m x n row-major, W may be NULL for unit weights. */
ROLLSIM_API rollsim_status rollsim_solve_least_squares(
    const double* A, const double* B, const double* W, size_t m, size_t n,
    double* theta, double* residual_norm);
ROLLSIM_API rollsim_status rollsim_condition_number(const double* A,
                                                    const double* W, size_t m,
                                                    size_t n, double* out);

/* Returns f(theta) and writes the gradient. */
typedef double (*rollsim_objective_fn)(const double* theta, size_t n,
                                       double* gradient, void* user);

typedef struct rollsim_optimizer_config {
  double gamma;
  double beta;
  int max_iters;
  double grad_tol;
  double divergence_bound;
} rollsim_optimizer_config;

typedef struct rollsim_trace rollsim_trace;

ROLLSIM_API rollsim_optimizer_config rollsim_optimizer_config_default(void);
ROLLSIM_API rollsim_status rollsim_gradient_descent(
    rollsim_objective_fn f, void* user, const double* theta0, size_t n,
    const rollsim_optimizer_config* cfg, rollsim_trace** out);
ROLLSIM_API rollsim_status rollsim_heavy_ball(
    rollsim_objective_fn f, void* user, const double* theta0, size_t n,
    const rollsim_optimizer_config* cfg, rollsim_trace** out);
ROLLSIM_API size_t rollsim_trace_length(const rollsim_trace* tr);
ROLLSIM_API int rollsim_trace_converged(const rollsim_trace* tr);
/* theta receives n values. */
ROLLSIM_API rollsim_status rollsim_trace_entry(const rollsim_trace* tr,
                                               size_t index, double* theta,
                                               double* value,
                                               double* grad_norm);
ROLLSIM_API rollsim_status rollsim_trace_write_csv(const rollsim_trace* tr,
                                                   const char* path);
ROLLSIM_API void rollsim_trace_destroy(rollsim_trace* tr);

typedef struct rollsim_calibration {
  double rows_per_second;
  double line_delay;
  double frame_delay; /* NaN with a single frame */
  int frame_delay_ambiguous;
  double significance_db;
  double confidence;
} rollsim_calibration;

/* Frames fi = first .. first + count - 1 under a sinusoidal flashing light;
 * `out` receives `count` frame handles. */
ROLLSIM_API rollsim_status rollsim_synthesize_flash_frames(
    const rollsim_timing* timing, int width, double flash_hz, double phase,
    int exposure_samples, double noise_sigma, uint64_t seed, double tau0,
    int first, int count, rollsim_frame** out);
/* fps <= 0 leaves t_f ambiguous modulo the flash period. */
ROLLSIM_API rollsim_status rollsim_calibrate_line_rate(
    const rollsim_frame* const* frames, size_t count, double flash_hz,
    double exposure, double fps, rollsim_calibration* out);

/* ---- experiment runner ------------------------------------------------ */

typedef enum rollsim_command {
  ROLLSIM_CMD_SIMULATE = 0,
  ROLLSIM_CMD_RECTIFY = 1,
  ROLLSIM_CMD_ANALYZE = 2,
  ROLLSIM_CMD_CALIBRATE = 3
} rollsim_command;

typedef struct rollsim_run_options {
  const char* out_dir; /* NULL: current directory */
  int threads;
  int ground_truth;
  const char* const* inputs;
  size_t input_count;
  const char* sidecar;   /* may be NULL */
  const char* reference; /* may be NULL */
  int has_seed;
  uint64_t seed;
} rollsim_run_options;

/* Runs a subcommand. `config` is a file path, or JSON text when
 * config_is_text is nonzero. Returns the process exit code: 0 success,
 * 1 runtime failure, 2 invalid configuration. On success *summary receives
 * the JSON summary line; on failure *message receives a diagnostic. Both
 * are released with rollsim_string_free and may be NULL pointers. */
ROLLSIM_API int rollsim_run(int command, const char* config, int config_is_text,
                            const rollsim_run_options* options, char** summary,
                            char** message);
ROLLSIM_API void rollsim_string_free(char* s);
/* Reads ROLLSIM_LOG (trace, debug, info, warn, error, off). */
ROLLSIM_API void rollsim_configure_logging(void);

#ifdef __cplusplus
}
#endif

#endif /* ROLLSIM_ROLLSIM_H */
