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

#ifndef ROLLSIM_RECTIFY_HPP
#define ROLLSIM_RECTIFY_HPP

#include <optional>
#include <span>
#include <vector>

#include "rollsim/distortion.hpp"
#include "rollsim/frame.hpp"
#include "rollsim/motion.hpp"
#include "rollsim/shutter.hpp"

namespace rollsim {

struct RectifyOptions {
  // Lens model of the input frame; removed before warping.
  RadialDistortion distortion;
  // Re-apply the lens model to the output (otherwise the output is an ideal
  // pinhole image).
  bool reapply_distortion = true;
  int threads = 1;
};

// Bilinear lookup at continuous pixel coordinates. Positions within 1e-9 of
// a pixel center return that pixel exactly. Returns nullopt outside the image
// or when a contributing pixel is invalid.
std::optional<double> sample_bilinear(const Frame& frame, double x, double y);

// Source position in the input frame for every output pixel of
// rectify_rotation_only (row-major); nullopt where the source row does not
// settle or the pose is unavailable.
std::vector<std::optional<PixelPoint>> rotation_only_sources(
    const Frame& frame, const MotionModel& motion, const Intrinsics& K,
    const ShutterTiming& timing, int anchor_row,
    const RectifyOptions& options = {});

// Warps every row of a rolling-shutter frame to the pose of `anchor_row`
// using the per-row homography K R(t_anchor) R(t_y)^-1 K^-1. Requires a
// motion model with constant translation and per-row times in the frame.
// Output pixels whose source falls outside the input are marked invalid.
// Throws kAnchorOutOfRange for a bad anchor row.
Frame rectify_rotation_only(const Frame& frame, const MotionModel& motion,
                            const Intrinsics& K, const ShutterTiming& timing,
                            int anchor_row, const RectifyOptions& options = {});

// Where each input pixel lands in the anchor view when its depth is known.
struct DepthWarp {
  std::vector<std::optional<PixelPoint>> target;  // per input pixel
  std::vector<double> anchor_depth;               // camera z at the anchor
};

DepthWarp known_depth_warp(const Frame& frame, const MotionModel& motion,
                           const Intrinsics& K, const ShutterTiming& timing,
                           std::span<const double> depth, int anchor_row,
                           const RectifyOptions& options = {});

// Backprojects every pixel with its depth at the capture pose, reprojects at
// the anchor pose and forward-splats with a z-buffer (nearest wins). Pixels
// that receive nothing are invalid in the output mask. Non-finite or
// non-positive depths are holes.
Frame rectify_known_depth(const Frame& frame, const MotionModel& motion,
                          const Intrinsics& K, const ShutterTiming& timing,
                          std::span<const double> depth, int anchor_row,
                          const RectifyOptions& options = {});

struct FrameComparison {
  double mae = 0.0;
  double psnr = 0.0;      // +infinity for identical frames (peak 1.0)
  double coverage = 0.0;  // fraction of pixels valid in both frames
  std::size_t compared = 0;
};

// Error of `test` against `reference` over pixels valid in both.
FrameComparison compare_frames(const Frame& test, const Frame& reference);

// Same, restricted to pixels where `mask` is non-zero as well.
FrameComparison compare_frames(const Frame& test, const Frame& reference,
                               const std::vector<std::uint8_t>& mask);

}  // namespace rollsim

#endif  // ROLLSIM_RECTIFY_HPP
