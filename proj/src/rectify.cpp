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

#include "rollsim/rectify.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "internal.hpp"
#include "rollsim/error.hpp"

namespace rollsim {

namespace {

constexpr double kSnap = 1e-9;
constexpr int kMaxRowIterations = 50;
constexpr double kRowTolerance = 1e-10;

void check_anchor(const Frame& frame, const ShutterTiming& timing,
                  int anchor_row) {
  if (frame.width <= 0 || frame.height <= 0 ||
      frame.pixels.size() != static_cast<std::size_t>(frame.width) * frame.height) {
    throw Error(ErrorCode::kInvalidArgument, "frame is empty or malformed");
  }
  if (frame.height != timing.height()) {
    std::ostringstream os;
    os << "frame height " << frame.height << " does not match timing height "
       << timing.height();
    throw Error(ErrorCode::kInvalidArgument, os.str());
  }
  if (frame.row_times.size() != static_cast<std::size_t>(frame.height)) {
    throw Error(ErrorCode::kInvalidArgument,
                "frame does not carry per-row exposure times");
  }
  if (anchor_row < 0 || anchor_row >= frame.height) {
    std::ostringstream os;
    os << "anchor row " << anchor_row << " outside [0, " << frame.height << ")";
    throw Error(ErrorCode::kAnchorOutOfRange, os.str());
  }
}

// Exposure start of a fractional row, from the frame's own row times.
double row_time(const Frame& frame, const ShutterTiming& timing, double y) {
  return frame.row_times[0] +
         (timing.readout_index(y) - timing.readout_index(0.0)) *
             timing.effective_line_delay();
}

std::optional<NormalizedPoint> to_ray(const Intrinsics& K,
                                      const RectifyOptions& o,
                                      const PixelPoint& p, bool distorted) {
  NormalizedPoint n = K.to_normalized(p);
  if (distorted && !o.distortion.is_identity()) {
    try {
      n = undistort_numeric(o.distortion, n);
    } catch (const Error&) {
      return std::nullopt;
    }
  }
  return n;
}

std::optional<PixelPoint> to_pixel(const Intrinsics& K,
                                   const RectifyOptions& o, const Vec3& v,
                                   bool distorted) {
  if (!(v.z() > 0.0)) return std::nullopt;
  NormalizedPoint n = drop(v);
  if (distorted && !o.distortion.is_identity()) {
    try {
      n = distort(o.distortion, n);
    } catch (const Error&) {
      return std::nullopt;
    }
  }
  return K.to_pixel(n);
}

Frame output_frame(const Frame& frame, double t_anchor, const Pose& anchor) {
  Frame out(frame.width, frame.height);
  out.row_times.assign(frame.height, t_anchor);
  out.row_poses.assign(frame.height, anchor);
  out.valid.assign(out.size(), 0);
  return out;
}

}  // namespace

std::optional<double> sample_bilinear(const Frame& frame, double x, double y) {
  if (!std::isfinite(x) || !std::isfinite(y)) return std::nullopt;
  if (x < -kSnap || y < -kSnap || x > frame.width - 1 + kSnap ||
      y > frame.height - 1 + kSnap) {
    return std::nullopt;
  }
  int x0 = static_cast<int>(std::floor(x));
  int y0 = static_cast<int>(std::floor(y));
  double fx = x - x0;
  double fy = y - y0;
  if (fx < kSnap) {
    fx = 0.0;
  } else if (fx > 1.0 - kSnap) {
    fx = 0.0;
    ++x0;
  }
  if (fy < kSnap) {
    fy = 0.0;
  } else if (fy > 1.0 - kSnap) {
    fy = 0.0;
    ++y0;
  }
  x0 = std::clamp(x0, 0, frame.width - 1);
  y0 = std::clamp(y0, 0, frame.height - 1);
  const int x1 = fx > 0.0 ? x0 + 1 : x0;
  const int y1 = fy > 0.0 ? y0 + 1 : y0;
  if (x1 >= frame.width || y1 >= frame.height) return std::nullopt;
  if (!frame.is_valid(x0, y0) || !frame.is_valid(x1, y0) ||
      !frame.is_valid(x0, y1) || !frame.is_valid(x1, y1)) {
    return std::nullopt;
  }
  if (fx == 0.0 && fy == 0.0) return frame.at(x0, y0);
  const double top = (1.0 - fx) * frame.at(x0, y0) + fx * frame.at(x1, y0);
  const double bottom = (1.0 - fx) * frame.at(x0, y1) + fx * frame.at(x1, y1);
  return (1.0 - fy) * top + fy * bottom;
}

std::vector<std::optional<PixelPoint>> rotation_only_sources(
    const Frame& frame, const MotionModel& motion, const Intrinsics& K,
    const ShutterTiming& timing, int anchor_row,
    const RectifyOptions& options) {
  check_anchor(frame, timing, anchor_row);
  if (!motion.has_constant_translation()) {
    throw Error(ErrorCode::kInvalidArgument,
                "rotation-only rectification needs constant translation");
  }
  const int W = frame.width;
  const int H = frame.height;
  const double t_anchor = frame.row_times[anchor_row];
  const Pose anchor = motion.pose_at(t_anchor);
  const Mat3 Ra_t = anchor.rotation().transpose();
  const bool reapply = options.reapply_distortion;

  std::vector<std::optional<PixelPoint>> sources(frame.size());
  internal::parallel_rows(H, options.threads, [&](int v) {
    for (int u = 0; u < W; ++u) {
      const auto n = to_ray(K, options, {double(u), double(v)}, reapply);
      if (!n) continue;
      const Vec3 world_dir = Ra_t * lift(*n);
      double ys = v;
      std::optional<PixelPoint> src;
      for (int it = 0; it < kMaxRowIterations; ++it) {
        if (ys < -0.5 || ys > H - 0.5) break;
        Mat3 Ry;
        try {
          Ry = motion.pose_at(row_time(frame, timing, ys)).rotation();
        } catch (const Error&) {
          break;
        }
        const auto p = to_pixel(K, options, Ry * world_dir, true);
        if (!p) break;
        if (std::abs(p->y - ys) <= kRowTolerance) {
          src = p;
          break;
        }
        ys = p->y;
      }
      sources[frame.index(u, v)] = src;
    }
  });
  return sources;
}

Frame rectify_rotation_only(const Frame& frame, const MotionModel& motion,
                            const Intrinsics& K, const ShutterTiming& timing,
                            int anchor_row, const RectifyOptions& options) {
  const auto sources =
      rotation_only_sources(frame, motion, K, timing, anchor_row, options);
  const double t_anchor = frame.row_times[anchor_row];
  Frame out = output_frame(frame, t_anchor, motion.pose_at(t_anchor));
  for (int v = 0; v < frame.height; ++v) {
    for (int u = 0; u < frame.width; ++u) {
      const std::size_t i = frame.index(u, v);
      if (!sources[i]) continue;
      const auto value = sample_bilinear(frame, sources[i]->x, sources[i]->y);
      if (!value) continue;
      out.pixels[i] = *value;
      out.valid[i] = 1;
    }
  }
  return out;
}

DepthWarp known_depth_warp(const Frame& frame, const MotionModel& motion,
                           const Intrinsics& K, const ShutterTiming& timing,
                           std::span<const double> depth, int anchor_row,
                           const RectifyOptions& options) {
  check_anchor(frame, timing, anchor_row);
  if (depth.size() != frame.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "depth map size does not match the frame");
  }
  const int W = frame.width;
  const Pose anchor = motion.pose_at(frame.row_times[anchor_row]);

  DepthWarp warp;
  warp.target.resize(frame.size());
  warp.anchor_depth.assign(frame.size(),
                           std::numeric_limits<double>::quiet_NaN());
  internal::parallel_rows(frame.height, options.threads, [&](int y) {
    Pose capture;
    try {
      capture = motion.pose_at(frame.row_times[y]);
    } catch (const Error&) {
      return;
    }
    const Pose to_anchor = compose(anchor, capture.inverse());
    for (int x = 0; x < W; ++x) {
      const std::size_t i = frame.index(x, y);
      const double z = depth[i];
      if (!std::isfinite(z) || z <= 0.0 || !frame.is_valid(x, y)) continue;
      const auto n = to_ray(K, options, {double(x), double(y)}, true);
      if (!n) continue;
      const Vec3 Xa = to_anchor.apply(lift(*n) * z);
      const auto p = to_pixel(K, options, Xa, options.reapply_distortion);
      if (!p) continue;
      warp.target[i] = p;
      warp.anchor_depth[i] = Xa.z();
    }
  });
  return warp;
}

Frame rectify_known_depth(const Frame& frame, const MotionModel& motion,
                          const Intrinsics& K, const ShutterTiming& timing,
                          std::span<const double> depth, int anchor_row,
                          const RectifyOptions& options) {
  const DepthWarp warp =
      known_depth_warp(frame, motion, K, timing, depth, anchor_row, options);
  const double t_anchor = frame.row_times[anchor_row];
  Frame out = output_frame(frame, t_anchor, motion.pose_at(t_anchor));
  out.depth.assign(out.size(), std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < frame.size(); ++i) {
    if (!warp.target[i]) continue;
    const int u = internal::round_to_int(warp.target[i]->x);
    const int v = internal::round_to_int(warp.target[i]->y);
    if (u < 0 || v < 0 || u >= frame.width || v >= frame.height) continue;
    const std::size_t j = out.index(u, v);
    if (warp.anchor_depth[i] < out.depth[j]) {
      out.depth[j] = warp.anchor_depth[i];
      out.pixels[j] = frame.pixels[i];
      out.valid[j] = 1;
    }
  }
  for (std::size_t j = 0; j < out.size(); ++j) {
    if (!out.valid[j]) out.depth[j] = std::numeric_limits<double>::quiet_NaN();
  }
  return out;
}

FrameComparison compare_frames(const Frame& test, const Frame& reference) {
  return compare_frames(test, reference, {});
}

FrameComparison compare_frames(const Frame& test, const Frame& reference,
                               const std::vector<std::uint8_t>& mask) {
  if (test.width != reference.width || test.height != reference.height) {
    throw Error(ErrorCode::kInvalidArgument, "frame sizes differ");
  }
  if (!mask.empty() && mask.size() != test.size()) {
    throw Error(ErrorCode::kInvalidArgument, "mask size does not match");
  }
  FrameComparison c;
  double abs_sum = 0.0;
  double sq_sum = 0.0;
  for (int y = 0; y < test.height; ++y) {
    for (int x = 0; x < test.width; ++x) {
      const std::size_t i = test.index(x, y);
      if (!test.is_valid(x, y) || !reference.is_valid(x, y)) continue;
      if (!mask.empty() && mask[i] == 0) continue;
      const double e = test.pixels[i] - reference.pixels[i];
      abs_sum += std::abs(e);
      sq_sum += e * e;
      ++c.compared;
    }
  }
  const std::size_t total = test.size();
  c.coverage = total == 0 ? 0.0 : static_cast<double>(c.compared) / total;
  if (c.compared == 0) {
    c.mae = std::numeric_limits<double>::quiet_NaN();
    c.psnr = std::numeric_limits<double>::quiet_NaN();
    return c;
  }
  c.mae = abs_sum / c.compared;
  const double mse = sq_sum / c.compared;
  c.psnr = mse == 0.0 ? std::numeric_limits<double>::infinity()
                      : -10.0 * std::log10(mse);
  return c;
}

}  // namespace rollsim
