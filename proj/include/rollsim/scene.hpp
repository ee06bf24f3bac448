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

#ifndef ROLLSIM_SCENE_HPP
#define ROLLSIM_SCENE_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "rollsim/geometry.hpp"

namespace rollsim {

// Row-major grayscale image with values in [0, 1] and bilinear lookup.
class Texture {
 public:
  Texture(int width, int height, std::vector<double> texels);

  int width() const { return width_; }
  int height() const { return height_; }
  const std::vector<double>& texels() const { return texels_; }

  // Bilinear sample at continuous texel coordinates, clamped to the edges.
  double sample(double u, double v) const;

 private:
  int width_;
  int height_;
  std::vector<double> texels_;
};

enum class TexturePattern { kChecker, kSinusoid, kBars, kValueNoise };

// `period` is in texels; the seed only affects kValueNoise.
Texture make_texture(TexturePattern pattern, int width, int height,
                     double period, std::uint64_t seed = 0);

namespace scene {

struct PointSet {
  std::vector<Vec3> points;      // world frame
  std::vector<double> radiance;  // one per point
};

// A rectangle in the plane's local z = 0 plane, centered at its origin and
// spanning extent_u x extent_v meters. The texture covers it exactly.
struct TexturedPlane {
  Pose plane_to_world;
  double extent_u = 1.0;
  double extent_v = 1.0;
  Texture texture{1, 1, {0.0}};
};

// Radiance as a pure function of a world ray (origin, unit direction).
// Procedural content is treated as infinitely far away.
struct Procedural {
  std::function<double(const Vec3& origin, const Vec3& direction)> radiance;
};

}  // namespace scene

// Immutable world content. Rays that hit nothing see radiance 0.
class Scene {
 public:
  using Variant =
      std::variant<scene::PointSet, scene::TexturedPlane, scene::Procedural>;

  // Throws kInvalidArgument when radiance lies outside [0, 1], extents are
  // not positive, or a point set's arrays disagree in length.
  explicit Scene(Variant content);

  const Variant& content() const { return content_; }
  bool is_ray_traced() const {
    return !std::holds_alternative<scene::PointSet>(content_);
  }

  struct Hit {
    double radiance = 0.0;
    double depth = 0.0;  // distance along a camera-frame ray with z = 1
    bool hit = false;
  };

  // Casts a ray from the camera center; `direction` is the world-frame image
  // of a camera-frame ray (x, y, 1), so the hit parameter is camera depth.
  Hit trace(const Vec3& origin, const Vec3& direction) const;

 private:
  Variant content_;
};

namespace procedural {

// Smooth pattern on the viewing sphere: 0.5 + 0.25 cos(cycles * azimuth) +
// 0.25 cos(cycles * elevation). Independent of the ray origin.
scene::Procedural sky_sinusoid(double cycles);

// Checkerboard in (azimuth, elevation) with the given cell size in radians.
scene::Procedural sky_checker(double cell_radians);

}  // namespace procedural

}  // namespace rollsim

#endif  // ROLLSIM_SCENE_HPP
