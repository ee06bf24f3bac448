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

#ifndef ROLLSIM_SIMULATOR_HPP
#define ROLLSIM_SIMULATOR_HPP

#include <cstdint>
#include <vector>

#include "rollsim/distortion.hpp"
#include "rollsim/frame.hpp"
#include "rollsim/geometry.hpp"
#include "rollsim/motion.hpp"
#include "rollsim/scene.hpp"
#include "rollsim/shutter.hpp"

namespace rollsim {

struct RenderOptions {
  // Renders averaged per row over [t_y, t_y + te]. With one sample only the
  // exposure start is rendered.
  int exposure_samples = 1;
  // f_cam: identity for 1.0, otherwise v^(1/gamma).
  double gamma = 1.0;
  // Randomize sample times inside their strata (only when samples > 1). The
  // offsets are a pure function of (seed, frame, row, sample).
  bool jitter = false;
  std::uint64_t seed = 0;
  int threads = 1;
};

// Sensor response applied after exposure integration.
double apply_camera_response(double value, double gamma);

// Global-shutter render: every row sees `pose`. Row metadata is filled with
// `time` and `pose`.
Frame render_gs(const Scene& scene, const Pose& pose, const Intrinsics& K,
                const RadialDistortion& d, int width, int height,
                const RenderOptions& options = {}, double time = 0.0);

// Rolling-shutter synthesis of frame `fi`. Row y integrates the scene over
// poses sampled uniformly (stratified) in [t_y, t_y + te] where
// t_y = row_start_time(timing, tau0, y, fi). Depth is recorded at the first
// sample. Results do not depend on options.threads.
Frame synthesize_rs_frame(const Scene& scene, const MotionModel& motion,
                          const Intrinsics& K, const RadialDistortion& d,
                          const ShutterTiming& timing, int width, double tau0,
                          int fi, const RenderOptions& options = {});

struct RsProjection {
  PixelPoint pixel;
  double time = 0.0;  // exposure start of `row`
  int row = 0;
};

struct RsProjectOptions {
  // Root tolerance in seconds; <= 0 selects line_delay / 100.
  double tol = 0.0;
  // When positive, projections outside [-0.5, width - 0.5) are not imaged.
  int width = 0;
};

// Pixel and capture time of a world point seen by a rolling shutter. The
// returned row r satisfies round(p_y(t*)) == r with t* = row_start_time(r).
// Throws kNotImagedThisFrame when no row images the point and
// kMultipleSolutions when several (disjoint) rows do.
RsProjection rs_project_point(const Vec3& world_point,
                              const MotionModel& motion, const Intrinsics& K,
                              const RadialDistortion& d,
                              const ShutterTiming& timing, double tau0, int fi,
                              const RsProjectOptions& options = {});

// Every image of the point in the frame, ordered by row readout. Empty when
// the point is not imaged.
std::vector<RsProjection> rs_project_point_all(
    const Vec3& world_point, const MotionModel& motion, const Intrinsics& K,
    const RadialDistortion& d, const ShutterTiming& timing, double tau0,
    int fi, const RsProjectOptions& options = {});

// Horizontal shift of each row of `image` relative to the same row of
// `reference` (image(x) ~ reference(x - shift)), searched in
// [-max_shift, max_shift] with sub-pixel refinement. Rows whose comparison
// window is empty get NaN.
std::vector<double> measure_row_shifts(const Frame& image,
                                       const Frame& reference, int max_shift);

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double rms = 0.0;
};

// Least-squares line through the finite samples (index, value).
LineFit fit_line(const std::vector<double>& values);

// A time-varying spatially uniform illuminant for shutter calibration:
// L(t) = base + amplitude * w(2 pi f t + phase) with w a raised cosine
// (0.5 + 0.5 cos) or a square wave with the given duty cycle.
struct FlashingLight {
  enum class Waveform { kSinusoid, kSquare };
  double frequency = 200.0;  // Hz
  double phase = 0.0;        // radians
  double base = 0.1;
  double amplitude = 0.8;
  Waveform waveform = Waveform::kSinusoid;
  double duty_cycle = 0.5;

  double intensity(double t) const;
};

struct FlashCaptureOptions {
  int exposure_samples = 8;
  double gamma = 1.0;
  double noise_sigma = 0.0;  // additive Gaussian, seeded per pixel
  std::uint64_t seed = 0;
};

// Frames fi = first .. first + count - 1 of a lensless sensor under the
// flashing light. Each row averages the light over its exposure window.
std::vector<Frame> synthesize_flash_frames(const ShutterTiming& timing,
                                           int width, const FlashingLight& light,
                                           double tau0, int first, int count,
                                           const FlashCaptureOptions& options = {});

}  // namespace rollsim

#endif  // ROLLSIM_SIMULATOR_HPP
