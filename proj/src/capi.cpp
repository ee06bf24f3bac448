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

#include "rollsim/rollsim.h"

#include <cmath>
#include <cstring>
#include <limits>
#include <memory>
#include <string>

#include "rollsim/calibration.hpp"
#include "rollsim/distortion.hpp"
#include "rollsim/error.hpp"
#include "rollsim/experiment.hpp"
#include "rollsim/image_io.hpp"
#include "rollsim/linsolve.hpp"
#include "rollsim/optimize.hpp"
#include "rollsim/rectify.hpp"
#include "rollsim/simulator.hpp"

struct rollsim_distortion {
  rollsim::RadialDistortion value;
};
struct rollsim_inverse_distortion {
  rollsim::InverseRadialDistortion value;
};
struct rollsim_motion {
  rollsim::MotionModel value;
};
struct rollsim_scene {
  rollsim::Scene value;
};
struct rollsim_frame {
  rollsim::Frame value;
};
struct rollsim_trace {
  rollsim::OptimizerTrace value;
};

namespace {

using namespace rollsim;

thread_local std::string g_last_error;

class BufferTooSmall : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <class Fn>
rollsim_status guard(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return ROLLSIM_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return static_cast<rollsim_status>(static_cast<int>(e.code()));
  } catch (const BufferTooSmall& e) {
    g_last_error = e.what();
    return ROLLSIM_ERR_BUFFER_TOO_SMALL;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return ROLLSIM_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return ROLLSIM_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return ROLLSIM_ERR_INTERNAL;
  }
}

template <class T>
const T& deref(const T* p, const char* what) {
  if (!p) throw Error(ErrorCode::kInvalidArgument, std::string(what) + " is NULL");
  return *p;
}

template <class T>
void check_out(T* p) {
  if (!p) throw Error(ErrorCode::kInvalidArgument, "output pointer is NULL");
}

Pose to_pose(const rollsim_pose* p) {
  const rollsim_pose& v = deref(p, "pose");
  std::array<double, 12> a;
  std::copy(v.R, v.R + 9, a.begin());
  std::copy(v.T, v.T + 3, a.begin() + 9);
  return Pose::from_array(a);
}

rollsim_pose from_pose(const Pose& p) {
  rollsim_pose out;
  const auto a = p.to_array();
  std::copy(a.begin(), a.begin() + 9, out.R);
  std::copy(a.begin() + 9, a.end(), out.T);
  return out;
}

Intrinsics to_intrinsics(const rollsim_intrinsics* k) {
  const rollsim_intrinsics& v = deref(k, "intrinsics");
  return Intrinsics(v.fx, v.fy, v.cx, v.cy, v.skew);
}

ShutterTiming to_timing(const rollsim_timing* t) {
  const rollsim_timing& v = deref(t, "timing");
  return ShutterTiming(
      v.exposure, v.line_delay, v.frame_delay, v.height, v.fps,
      v.mode == ROLLSIM_SHUTTER_GLOBAL ? ShutterMode::kGlobal : ShutterMode::kRolling,
      v.reverse_sweep ? SweepDirection::kBottomToTop : SweepDirection::kTopToBottom);
}

RadialDistortion to_distortion(const rollsim_distortion* d) {
  return d ? d->value : RadialDistortion();
}

Vec3 vec3(const double* v, const char* what) {
  if (!v) throw Error(ErrorCode::kInvalidArgument, std::string(what) + " is NULL");
  return {v[0], v[1], v[2]};
}

RenderOptions to_render(const rollsim_render_options* o) {
  RenderOptions r;
  if (!o) return r;
  r.exposure_samples = o->exposure_samples;
  r.gamma = o->gamma;
  r.jitter = o->jitter != 0;
  r.seed = o->seed;
  r.threads = o->threads;
  return r;
}

template <class T, class... Args>
void emit(T** out, Args&&... args) {
  check_out(out);
  *out = new T{std::forward<Args>(args)...};
}

Objective wrap(rollsim_objective_fn f, void* user, std::size_t n) {
  if (!f) throw Error(ErrorCode::kInvalidArgument, "objective is NULL");
  return [f, user, n](const Eigen::VectorXd& theta) {
    Evaluation e;
    e.gradient.resize(static_cast<Eigen::Index>(n));
    e.value = f(theta.data(), n, e.gradient.data(), user);
    return e;
  };
}

OptimizerConfig to_optimizer(const rollsim_optimizer_config* c) {
  const rollsim_optimizer_config& v = deref(c, "config");
  OptimizerConfig o;
  o.gamma = v.gamma;
  o.beta = v.beta;
  o.max_iters = v.max_iters;
  o.grad_tol = v.grad_tol;
  o.divergence_bound = v.divergence_bound;
  return o;
}

char* dup_string(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (p) std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

}  // namespace

extern "C" {

const char* rollsim_version(void) { return "1.0.0"; }

const char* rollsim_status_string(rollsim_status status) {
  if (status == ROLLSIM_OK) return "ok";
  if (status == ROLLSIM_ERR_BUFFER_TOO_SMALL) return "buffer too small";
  return to_string(static_cast<ErrorCode>(static_cast<int>(status)));
}

const char* rollsim_last_error(void) { return g_last_error.c_str(); }

rollsim_pose rollsim_pose_identity(void) { return from_pose(Pose::identity()); }

rollsim_status rollsim_pose_from_axis_angle(const double w[3], const double T[3],
                                            rollsim_pose* out) {
  return guard([&] {
    check_out(out);
    *out = from_pose(Pose::from_axis_angle(vec3(w, "w"), vec3(T, "T")));
  });
}

rollsim_status rollsim_project(const rollsim_pose* pose, const rollsim_intrinsics* K,
                               const double X[3], double out_px[2]) {
  return guard([&] {
    check_out(out_px);
    const PixelPoint p = project(to_pose(pose), to_intrinsics(K), vec3(X, "X"));
    out_px[0] = p.x;
    out_px[1] = p.y;
  });
}

rollsim_status rollsim_backproject(const rollsim_intrinsics* K, const double px[2],
                                   double depth, double out_X[3]) {
  return guard([&] {
    check_out(out_X);
    if (!px) throw Error(ErrorCode::kInvalidArgument, "px is NULL");
    const Vec3 X = backproject(to_intrinsics(K), {px[0], px[1]}, depth);
    std::copy(X.data(), X.data() + 3, out_X);
  });
}

rollsim_status rollsim_timing_validate(const rollsim_timing* t) {
  return guard([&] { to_timing(t); });
}

rollsim_status rollsim_timing_complete(rollsim_timing* t, unsigned unknown) {
  return guard([&] {
    check_out(t);
    PartialTiming p;
    if (!(unknown & ROLLSIM_TIMING_EXPOSURE)) p.exposure = t->exposure;
    if (!(unknown & ROLLSIM_TIMING_LINE_DELAY)) p.line_delay = t->line_delay;
    if (!(unknown & ROLLSIM_TIMING_FRAME_DELAY)) p.frame_delay = t->frame_delay;
    if (!(unknown & ROLLSIM_TIMING_FPS)) p.fps = t->fps;
    p.height = t->height;
    p.mode = t->mode == ROLLSIM_SHUTTER_GLOBAL ? ShutterMode::kGlobal
                                               : ShutterMode::kRolling;
    p.sweep = t->reverse_sweep ? SweepDirection::kBottomToTop
                               : SweepDirection::kTopToBottom;
    const ShutterTiming s = complete_timing(p);
    t->exposure = s.exposure();
    t->line_delay = s.line_delay();
    t->frame_delay = s.frame_delay();
    t->fps = s.fps();
  });
}

rollsim_status rollsim_row_start_time(const rollsim_timing* t, double tau0, int y,
                                      int fi, double* out) {
  return guard([&] {
    check_out(out);
    *out = row_start_time(to_timing(t), tau0, y, fi);
  });
}

rollsim_status rollsim_distortion_create(const double* k, size_t count,
                                         double working_radius,
                                         rollsim_distortion** out) {
  return guard([&] {
    if (count && !k) throw Error(ErrorCode::kInvalidArgument, "k is NULL");
    std::vector<double> coeffs(k, k + count);
    emit(out, RadialDistortion(std::move(coeffs), working_radius));
  });
}

void rollsim_distortion_destroy(rollsim_distortion* d) { delete d; }

rollsim_status rollsim_distort(const rollsim_distortion* d, const double p[2],
                               double out[2]) {
  return guard([&] {
    check_out(out);
    if (!p) throw Error(ErrorCode::kInvalidArgument, "p is NULL");
    const NormalizedPoint r = distort(deref(d, "distortion").value, {p[0], p[1]});
    out[0] = r.x;
    out[1] = r.y;
  });
}

rollsim_status rollsim_undistort(const rollsim_distortion* d, const double pd[2],
                                 double tol, double out[2]) {
  return guard([&] {
    check_out(out);
    if (!pd) throw Error(ErrorCode::kInvalidArgument, "pd is NULL");
    const NormalizedPoint r =
        undistort_numeric(deref(d, "distortion").value, {pd[0], pd[1]},
                          tol > 0.0 ? tol : kDefaultUndistortTolerance);
    out[0] = r.x;
    out[1] = r.y;
  });
}

rollsim_status rollsim_fit_inverse(const rollsim_distortion* d, int order,
                                   double rho_max, int samples,
                                   rollsim_inverse_distortion** out) {
  return guard([&] {
    emit(out, fit_inverse(deref(d, "distortion").value, order, rho_max,
                          samples > 0 ? samples : 2000));
  });
}

void rollsim_inverse_distortion_destroy(rollsim_inverse_distortion* inv) {
  delete inv;
}

rollsim_status rollsim_inverse_apply(const rollsim_inverse_distortion* inv,
                                     const double pd[2], double out[2]) {
  return guard([&] {
    check_out(out);
    if (!pd) throw Error(ErrorCode::kInvalidArgument, "pd is NULL");
    const NormalizedPoint r = apply_inverse(deref(inv, "inverse").value, {pd[0], pd[1]});
    out[0] = r.x;
    out[1] = r.y;
  });
}

rollsim_status rollsim_inverse_coefficients(const rollsim_inverse_distortion* inv,
                                            double* out, size_t capacity,
                                            size_t* count, double* fit_residual) {
  return guard([&] {
    const auto& v = deref(inv, "inverse").value;
    const auto& c = v.coefficients();
    if (count) *count = c.size();
    if (fit_residual) *fit_residual = v.fit_residual();
    if (out) std::copy_n(c.begin(), std::min(capacity, c.size()), out);
    if (capacity < c.size() && out) throw BufferTooSmall("coefficient buffer too small");
  });
}

rollsim_status rollsim_motion_create_static(const rollsim_pose* pose,
                                            rollsim_motion** out) {
  return guard([&] { emit(out, MotionModel(motion::Static{to_pose(pose)})); });
}

rollsim_status rollsim_motion_create_const_velocity(const rollsim_pose* pose0,
                                                    const double velocity[3],
                                                    double t_ref,
                                                    rollsim_motion** out) {
  return guard([&] {
    const Pose p = to_pose(pose0);
    emit(out, MotionModel(motion::TranslationConstVel{
                  p.rotation(), p.translation(), vec3(velocity, "velocity"), t_ref}));
  });
}

rollsim_status rollsim_motion_create_const_acceleration(
    const rollsim_pose* pose0, const double velocity[3],
    const double acceleration[3], double t_ref, rollsim_motion** out) {
  return guard([&] {
    const Pose p = to_pose(pose0);
    emit(out, MotionModel(motion::TranslationConstAccel{
                  p.rotation(), p.translation(), vec3(velocity, "velocity"),
                  vec3(acceleration, "acceleration"), t_ref}));
  });
}

rollsim_status rollsim_motion_create_const_angular_velocity(
    const rollsim_pose* pose0, const double omega[3], double t_ref,
    rollsim_motion** out) {
  return guard([&] {
    const Pose p = to_pose(pose0);
    emit(out, MotionModel(motion::RotationConstAngVel{
                  p.rotation(), p.translation(), vec3(omega, "omega"), t_ref}));
  });
}

rollsim_status rollsim_motion_create_polynomial(const double R0[9],
                                                const double coefficients[30],
                                                double t_ref, rollsim_motion** out) {
  return guard([&] {
    if (!R0 || !coefficients) {
      throw Error(ErrorCode::kInvalidArgument, "R0 or coefficients is NULL");
    }
    motion::PolynomialPerDof m;
    m.R0 = Eigen::Map<const Eigen::Matrix<double, 3, 3, Eigen::RowMajor>>(R0);
    m.t_ref = t_ref;
    for (int d = 0; d < 6; ++d) {
      m.coefficients[d].assign(coefficients + 5 * d, coefficients + 5 * d + 5);
    }
    emit(out, MotionModel(m));
  });
}

rollsim_status rollsim_motion_create_keyframes(const double* times,
                                               const rollsim_pose* poses,
                                               size_t count, rollsim_motion** out) {
  return guard([&] {
    if (!times || !poses) {
      throw Error(ErrorCode::kInvalidArgument, "times or poses is NULL");
    }
    motion::PiecewiseLinearKeyframes kf;
    for (size_t i = 0; i < count; ++i) kf.keyframes.push_back({times[i], to_pose(&poses[i])});
    emit(out, MotionModel(kf));
  });
}

rollsim_status rollsim_motion_set_window(rollsim_motion* m, double begin, double end) {
  return guard([&] {
    check_out(m);
    m->value = MotionModel(m->value.model(), TimeWindow{begin, end});
  });
}

rollsim_status rollsim_motion_pose_at(const rollsim_motion* m, double t,
                                      rollsim_pose* out) {
  return guard([&] {
    check_out(out);
    *out = from_pose(deref(m, "motion").value.pose_at(t));
  });
}

void rollsim_motion_destroy(rollsim_motion* m) { delete m; }

rollsim_status rollsim_scene_create_points(const double* xyz, const double* radiance,
                                           size_t count, rollsim_scene** out) {
  return guard([&] {
    if (count && (!xyz || !radiance)) {
      throw Error(ErrorCode::kInvalidArgument, "xyz or radiance is NULL");
    }
    scene::PointSet ps;
    for (size_t i = 0; i < count; ++i) {
      ps.points.emplace_back(xyz[3 * i], xyz[3 * i + 1], xyz[3 * i + 2]);
      ps.radiance.push_back(radiance[i]);
    }
    emit(out, Scene(std::move(ps)));
  });
}

rollsim_status rollsim_scene_create_plane(const rollsim_pose* plane_to_world,
                                          double extent_u, double extent_v,
                                          const double* texels, int tex_width,
                                          int tex_height, rollsim_scene** out) {
  return guard([&] {
    if (!texels || tex_width <= 0 || tex_height <= 0) {
      throw Error(ErrorCode::kInvalidArgument, "invalid texture");
    }
    scene::TexturedPlane plane;
    plane.plane_to_world = to_pose(plane_to_world);
    plane.extent_u = extent_u;
    plane.extent_v = extent_v;
    plane.texture = Texture(tex_width, tex_height,
                            std::vector<double>(texels, texels + std::size_t(tex_width) * tex_height));
    emit(out, Scene(std::move(plane)));
  });
}

rollsim_status rollsim_scene_create_pattern_plane(const rollsim_pose* plane_to_world,
                                                  double extent_u, double extent_v,
                                                  int pattern, int tex_width,
                                                  int tex_height, double period,
                                                  uint64_t seed, rollsim_scene** out) {
  return guard([&] {
    if (pattern < 0 || pattern > 3) {
      throw Error(ErrorCode::kInvalidArgument, "unknown texture pattern");
    }
    scene::TexturedPlane plane;
    plane.plane_to_world = to_pose(plane_to_world);
    plane.extent_u = extent_u;
    plane.extent_v = extent_v;
    plane.texture = make_texture(static_cast<TexturePattern>(pattern), tex_width,
                                 tex_height, period, seed);
    emit(out, Scene(std::move(plane)));
  });
}

rollsim_status rollsim_scene_create_sky(double cycles, rollsim_scene** out) {
  return guard([&] { emit(out, Scene(procedural::sky_sinusoid(cycles))); });
}

void rollsim_scene_destroy(rollsim_scene* s) { delete s; }

rollsim_status rollsim_frame_create(int width, int height, const double* pixels,
                                    const double* row_times, rollsim_frame** out) {
  return guard([&] {
    if (width <= 0 || height <= 0 || !pixels) {
      throw Error(ErrorCode::kInvalidArgument, "invalid frame data");
    }
    Frame f(width, height);
    std::copy(pixels, pixels + f.size(), f.pixels.begin());
    if (row_times) f.row_times.assign(row_times, row_times + height);
    emit(out, std::move(f));
  });
}

void rollsim_frame_destroy(rollsim_frame* f) { delete f; }

int rollsim_frame_width(const rollsim_frame* f) { return f ? f->value.width : 0; }
int rollsim_frame_height(const rollsim_frame* f) { return f ? f->value.height : 0; }

const double* rollsim_frame_pixels(const rollsim_frame* f) {
  return f ? f->value.pixels.data() : nullptr;
}

const double* rollsim_frame_row_times(const rollsim_frame* f) {
  return f && !f->value.row_times.empty() ? f->value.row_times.data() : nullptr;
}

const double* rollsim_frame_depth(const rollsim_frame* f) {
  return f && !f->value.depth.empty() ? f->value.depth.data() : nullptr;
}

const uint8_t* rollsim_frame_valid(const rollsim_frame* f) {
  return f && !f->value.valid.empty() ? f->value.valid.data() : nullptr;
}

rollsim_status rollsim_frame_row_pose(const rollsim_frame* f, int row,
                                      rollsim_pose* out) {
  return guard([&] {
    check_out(out);
    const Frame& fr = deref(f, "frame").value;
    if (row < 0 || static_cast<size_t>(row) >= fr.row_poses.size()) {
      throw Error(ErrorCode::kRowOutOfRange, "no pose for that row");
    }
    *out = from_pose(fr.row_poses[row]);
  });
}

rollsim_status rollsim_frame_read(const char* path, rollsim_frame** out) {
  return guard([&] {
    if (!path) throw Error(ErrorCode::kInvalidArgument, "path is NULL");
    emit(out, read_image(path));
  });
}

rollsim_status rollsim_frame_write(const rollsim_frame* f, const char* path,
                                   int bit_depth, const char* config_hash) {
  return guard([&] {
    if (!path) throw Error(ErrorCode::kInvalidArgument, "path is NULL");
    write_image(path, deref(f, "frame").value, bit_depth,
                config_hash ? config_hash : "");
  });
}

rollsim_render_options rollsim_render_options_default(void) {
  return {1, 1.0, 0, 0, 1};
}

rollsim_status rollsim_render_gs(const rollsim_scene* scene, const rollsim_pose* pose,
                                 const rollsim_intrinsics* K,
                                 const rollsim_distortion* d, int width, int height,
                                 const rollsim_render_options* options, double time,
                                 rollsim_frame** out) {
  return guard([&] {
    emit(out, render_gs(deref(scene, "scene").value, to_pose(pose), to_intrinsics(K),
                        to_distortion(d), width, height, to_render(options), time));
  });
}

rollsim_status rollsim_synthesize_rs_frame(const rollsim_scene* scene,
                                           const rollsim_motion* motion,
                                           const rollsim_intrinsics* K,
                                           const rollsim_distortion* d,
                                           const rollsim_timing* timing, int width,
                                           double tau0, int fi,
                                           const rollsim_render_options* options,
                                           rollsim_frame** out) {
  return guard([&] {
    emit(out, synthesize_rs_frame(deref(scene, "scene").value,
                                  deref(motion, "motion").value, to_intrinsics(K),
                                  to_distortion(d), to_timing(timing), width, tau0,
                                  fi, to_render(options)));
  });
}

rollsim_status rollsim_rs_project_point(const double X[3], const rollsim_motion* motion,
                                        const rollsim_intrinsics* K,
                                        const rollsim_distortion* d,
                                        const rollsim_timing* timing, double tau0,
                                        int fi, double tol, int width,
                                        rollsim_rs_projection* out) {
  return guard([&] {
    check_out(out);
    const RsProjection p = rs_project_point(
        vec3(X, "X"), deref(motion, "motion").value, to_intrinsics(K),
        to_distortion(d), to_timing(timing), tau0, fi, RsProjectOptions{tol, width});
    *out = {{p.pixel.x, p.pixel.y}, p.time, p.row};
  });
}

rollsim_status rollsim_rs_project_point_all(
    const double X[3], const rollsim_motion* motion, const rollsim_intrinsics* K,
    const rollsim_distortion* d, const rollsim_timing* timing, double tau0, int fi,
    double tol, int width, rollsim_rs_projection* out, size_t capacity,
    size_t* count) {
  return guard([&] {
    check_out(count);
    const auto all = rs_project_point_all(
        vec3(X, "X"), deref(motion, "motion").value, to_intrinsics(K),
        to_distortion(d), to_timing(timing), tau0, fi, RsProjectOptions{tol, width});
    *count = all.size();
    for (size_t i = 0; i < all.size() && i < capacity && out; ++i) {
      out[i] = {{all[i].pixel.x, all[i].pixel.y}, all[i].time, all[i].row};
    }
    if (all.size() > capacity) throw BufferTooSmall("projection buffer too small");
  });
}

rollsim_status rollsim_rectify_rotation_only(const rollsim_frame* frame,
                                             const rollsim_motion* motion,
                                             const rollsim_intrinsics* K,
                                             const rollsim_timing* timing,
                                             int anchor_row, const rollsim_distortion* d,
                                             int reapply_distortion, int threads,
                                             rollsim_frame** out) {
  return guard([&] {
    RectifyOptions o{to_distortion(d), reapply_distortion != 0, threads};
    emit(out, rectify_rotation_only(deref(frame, "frame").value,
                                    deref(motion, "motion").value, to_intrinsics(K),
                                    to_timing(timing), anchor_row, o));
  });
}

rollsim_status rollsim_rectify_known_depth(const rollsim_frame* frame,
                                           const rollsim_motion* motion,
                                           const rollsim_intrinsics* K,
                                           const rollsim_timing* timing,
                                           const double* depth, int anchor_row,
                                           const rollsim_distortion* d,
                                           int reapply_distortion, int threads,
                                           rollsim_frame** out) {
  return guard([&] {
    const Frame& f = deref(frame, "frame").value;
    if (!depth) throw Error(ErrorCode::kInvalidArgument, "depth is NULL");
    RectifyOptions o{to_distortion(d), reapply_distortion != 0, threads};
    emit(out, rectify_known_depth(f, deref(motion, "motion").value, to_intrinsics(K),
                                  to_timing(timing), std::span<const double>(depth, f.size()),
                                  anchor_row, o));
  });
}

rollsim_status rollsim_compare_frames(const rollsim_frame* test,
                                      const rollsim_frame* ref,
                                      rollsim_comparison* out) {
  return guard([&] {
    check_out(out);
    const FrameComparison c =
        compare_frames(deref(test, "test").value, deref(ref, "reference").value);
    *out = {c.mae, c.psnr, c.coverage};
  });
}

rollsim_status rollsim_solve_least_squares(const double* A, const double* B,
                                           const double* W, size_t m, size_t n,
                                           double* theta, double* residual_norm) {
  return guard([&] {
    if (!A || !B) throw Error(ErrorCode::kInvalidArgument, "A or B is NULL");
    check_out(theta);
    using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    const Eigen::MatrixXd a = Eigen::Map<const RowMajor>(A, m, n);
    const Eigen::VectorXd b = Eigen::Map<const Eigen::VectorXd>(B, m);
    const DesignSystem sys = W ? DesignSystem(a, b, Eigen::Map<const Eigen::VectorXd>(W, m))
                               : DesignSystem(a, b);
    const LeastSquaresSolution s = solve_least_squares(sys);
    std::copy(s.theta.data(), s.theta.data() + n, theta);
    if (residual_norm) *residual_norm = s.residual_norm;
  });
}

rollsim_status rollsim_condition_number(const double* A, const double* W, size_t m,
                                        size_t n, double* out) {
  return guard([&] {
    if (!A) throw Error(ErrorCode::kInvalidArgument, "A is NULL");
    check_out(out);
    using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    const Eigen::MatrixXd a = Eigen::Map<const RowMajor>(A, m, n);
    *out = W ? condition_number(a, Eigen::Map<const Eigen::VectorXd>(W, m))
             : condition_number(a);
  });
}

rollsim_optimizer_config rollsim_optimizer_config_default(void) {
  const OptimizerConfig c;
  return {c.gamma, c.beta, c.max_iters, c.grad_tol, c.divergence_bound};
}

rollsim_status rollsim_gradient_descent(rollsim_objective_fn f, void* user,
                                        const double* theta0, size_t n,
                                        const rollsim_optimizer_config* cfg,
                                        rollsim_trace** out) {
  return guard([&] {
    if (!theta0) throw Error(ErrorCode::kInvalidArgument, "theta0 is NULL");
    const Eigen::VectorXd x0 = Eigen::Map<const Eigen::VectorXd>(theta0, n);
    emit(out, gradient_descent(wrap(f, user, n), x0, to_optimizer(cfg)));
  });
}

rollsim_status rollsim_heavy_ball(rollsim_objective_fn f, void* user,
                                  const double* theta0, size_t n,
                                  const rollsim_optimizer_config* cfg,
                                  rollsim_trace** out) {
  return guard([&] {
    if (!theta0) throw Error(ErrorCode::kInvalidArgument, "theta0 is NULL");
    const Eigen::VectorXd x0 = Eigen::Map<const Eigen::VectorXd>(theta0, n);
    emit(out, heavy_ball(wrap(f, user, n), x0, to_optimizer(cfg)));
  });
}

size_t rollsim_trace_length(const rollsim_trace* tr) {
  return tr ? tr->value.entries.size() : 0;
}

int rollsim_trace_converged(const rollsim_trace* tr) {
  return tr && tr->value.converged ? 1 : 0;
}

rollsim_status rollsim_trace_entry(const rollsim_trace* tr, size_t index,
                                   double* theta, double* value, double* grad_norm) {
  return guard([&] {
    const auto& entries = deref(tr, "trace").value.entries;
    if (index >= entries.size()) {
      throw Error(ErrorCode::kInvalidArgument, "trace index out of range");
    }
    const TraceEntry& e = entries[index];
    if (theta) std::copy(e.theta.data(), e.theta.data() + e.theta.size(), theta);
    if (value) *value = e.value;
    if (grad_norm) *grad_norm = e.grad_norm;
  });
}

rollsim_status rollsim_trace_write_csv(const rollsim_trace* tr, const char* path) {
  return guard([&] {
    if (!path) throw Error(ErrorCode::kInvalidArgument, "path is NULL");
    std::ostringstream os;
    write_trace_csv(os, deref(tr, "trace").value);
    write_text_file(path, os.str());
  });
}

void rollsim_trace_destroy(rollsim_trace* tr) { delete tr; }

rollsim_status rollsim_synthesize_flash_frames(const rollsim_timing* timing, int width,
                                               double flash_hz, double phase,
                                               int exposure_samples, double noise_sigma,
                                               uint64_t seed, double tau0, int first,
                                               int count, rollsim_frame** out) {
  return guard([&] {
    check_out(out);
    FlashingLight light;
    light.frequency = flash_hz;
    light.phase = phase;
    FlashCaptureOptions o;
    o.exposure_samples = exposure_samples;
    o.noise_sigma = noise_sigma;
    o.seed = seed;
    auto frames = synthesize_flash_frames(to_timing(timing), width, light, tau0,
                                          first, count, o);
    std::vector<std::unique_ptr<rollsim_frame>> owned;
    for (auto& f : frames) owned.push_back(std::make_unique<rollsim_frame>(rollsim_frame{std::move(f)}));
    for (size_t i = 0; i < owned.size(); ++i) out[i] = owned[i].release();
  });
}

rollsim_status rollsim_calibrate_line_rate(const rollsim_frame* const* frames,
                                           size_t count, double flash_hz,
                                           double exposure, double fps,
                                           rollsim_calibration* out) {
  return guard([&] {
    check_out(out);
    if (!frames && count) throw Error(ErrorCode::kInvalidArgument, "frames is NULL");
    std::vector<Frame> list;
    for (size_t i = 0; i < count; ++i) list.push_back(deref(frames[i], "frame").value);
    CalibrationOptions o;
    o.exposure = exposure;
    if (fps > 0.0) o.fps = fps;
    const LineRateCalibration r = calibrate_line_rate(list, flash_hz, o);
    out->rows_per_second = r.rows_per_second;
    out->line_delay = r.line_delay;
    out->frame_delay = r.frame_delay.value_or(std::numeric_limits<double>::quiet_NaN());
    out->frame_delay_ambiguous = r.frame_delay_ambiguous ? 1 : 0;
    out->significance_db = r.significance_db;
    out->confidence = r.confidence;
  });
}

int rollsim_run(int command, const char* config, int config_is_text,
                const rollsim_run_options* options, char** summary, char** message) {
  if (summary) *summary = nullptr;
  if (message) *message = nullptr;
  RunResult result;
  try {
    if (!config) throw Error(ErrorCode::kInvalidArgument, "config is NULL");
    if (command < ROLLSIM_CMD_SIMULATE || command > ROLLSIM_CMD_CALIBRATE) {
      throw Error(ErrorCode::kInvalidArgument, "unknown command");
    }
    RunOptions o;
    ConfigOverrides ov;
    if (options) {
      if (options->out_dir) o.out_dir = options->out_dir;
      o.threads = options->threads > 0 ? options->threads : 1;
      o.ground_truth = options->ground_truth != 0;
      for (size_t i = 0; i < options->input_count; ++i) {
        if (options->inputs && options->inputs[i]) o.inputs.emplace_back(options->inputs[i]);
      }
      if (options->sidecar) o.sidecar = options->sidecar;
      if (options->reference) o.reference = options->reference;
      if (options->has_seed) ov.seed = options->seed;
    }
    result = run_command(static_cast<Command>(command), config, config_is_text != 0,
                         ov, o);
  } catch (const std::exception& e) {
    result.exit_code = 1;
    result.message = e.what();
  }
  g_last_error = result.message;
  if (result.exit_code == 0) {
    if (summary) *summary = dup_string(result.summary);
  } else if (message) {
    *message = dup_string(result.message);
  }
  return result.exit_code;
}

void rollsim_string_free(char* s) { std::free(s); }

void rollsim_configure_logging(void) { configure_logging_from_env(); }

}  // extern "C"
