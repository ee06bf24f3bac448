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

#ifndef ROLLSIM_FRAME_HPP
#define ROLLSIM_FRAME_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include "rollsim/geometry.hpp"

namespace rollsim {

// Grayscale image with radiance in [0, 1], pixel (x, y) centered at integer
// coordinates, plus optional per-row capture metadata.
struct Frame {
  int width = 0;
  int height = 0;
  std::vector<double> pixels;  // row-major, width * height

  // Per-row exposure start and pose at that instant; empty when unknown.
  std::vector<double> row_times;
  std::vector<Pose> row_poses;

  // Optional camera-space depth per pixel (non-finite where nothing was hit).
  std::vector<double> depth;
  // Optional validity mask (1 = valid); empty means every pixel is valid.
  std::vector<std::uint8_t> valid;

  Frame() = default;
  Frame(int w, int h)
      : width(w), height(h), pixels(static_cast<std::size_t>(w) * h, 0.0) {}

  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * width + x;
  }
  double at(int x, int y) const { return pixels[index(x, y)]; }
  double& at(int x, int y) { return pixels[index(x, y)]; }
  bool is_valid(int x, int y) const {
    return valid.empty() || valid[index(x, y)] != 0;
  }
  std::size_t size() const { return pixels.size(); }
};

}  // namespace rollsim

#endif  // ROLLSIM_FRAME_HPP
