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

#include "rollsim/scene.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "rollsim/error.hpp"

namespace rollsim {

namespace {

bool in_unit_range(double v) { return v >= 0.0 && v <= 1.0; }

double smoothstep(double x) { return x * x * (3.0 - 2.0 * x); }

}  // namespace

Texture::Texture(int width, int height, std::vector<double> texels)
    : width_(width), height_(height), texels_(std::move(texels)) {
  if (width_ <= 0 || height_ <= 0 ||
      texels_.size() != static_cast<std::size_t>(width_) * height_) {
    throw Error(ErrorCode::kInvalidArgument,
                "texture size does not match its dimensions");
  }
  if (!std::all_of(texels_.begin(), texels_.end(), in_unit_range)) {
    throw Error(ErrorCode::kInvalidArgument,
                "texture values must lie in [0, 1]");
  }
}

double Texture::sample(double u, double v) const {
  u = std::clamp(u, 0.0, static_cast<double>(width_ - 1));
  v = std::clamp(v, 0.0, static_cast<double>(height_ - 1));
  const int x0 = std::min(static_cast<int>(u), width_ - 1);
  const int y0 = std::min(static_cast<int>(v), height_ - 1);
  const int x1 = std::min(x0 + 1, width_ - 1);
  const int y1 = std::min(y0 + 1, height_ - 1);
  const double fx = u - x0;
  const double fy = v - y0;
  const auto at = [&](int x, int y) {
    return texels_[static_cast<std::size_t>(y) * width_ + x];
  };
  const double top = at(x0, y0) + fx * (at(x1, y0) - at(x0, y0));
  const double bottom = at(x0, y1) + fx * (at(x1, y1) - at(x0, y1));
  return top + fy * (bottom - top);
}

Texture make_texture(TexturePattern pattern, int width, int height,
                     double period, std::uint64_t seed) {
  if (width <= 0 || height <= 0 || !(period > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "invalid texture parameters");
  }
  std::vector<double> t(static_cast<std::size_t>(width) * height);
  const double w = 2.0 * M_PI / period;

  // Value noise: random lattice every `period` texels, smoothstep blend.
  const int gx = static_cast<int>(std::ceil(width / period)) + 2;
  const int gy = static_cast<int>(std::ceil(height / period)) + 2;
  std::vector<double> lattice;
  if (pattern == TexturePattern::kValueNoise) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.1, 0.9);
    lattice.resize(static_cast<std::size_t>(gx) * gy);
    for (double& v : lattice) v = unit(rng);
  }

  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      double v = 0.0;
      switch (pattern) {
        case TexturePattern::kChecker:
          v = ((static_cast<long>(std::floor(x / period)) +
                static_cast<long>(std::floor(y / period))) % 2 == 0)
                  ? 0.9 : 0.1;
          break;
        case TexturePattern::kSinusoid:
          v = 0.5 + 0.25 * std::cos(w * x) + 0.25 * std::cos(w * y);
          break;
        case TexturePattern::kBars:
          v = (static_cast<long>(std::floor(x / period)) % 2 == 0) ? 0.9 : 0.1;
          break;
        case TexturePattern::kValueNoise: {
          const double fx = x / period, fy = y / period;
          const int ix = static_cast<int>(fx), iy = static_cast<int>(fy);
          const double sx = smoothstep(fx - ix), sy = smoothstep(fy - iy);
          const auto L = [&](int i, int j) {
            return lattice[static_cast<std::size_t>(j) * gx + i];
          };
          const double a = L(ix, iy) + sx * (L(ix + 1, iy) - L(ix, iy));
          const double b =
              L(ix, iy + 1) + sx * (L(ix + 1, iy + 1) - L(ix, iy + 1));
          v = a + sy * (b - a);
          break;
        }
      }
      t[static_cast<std::size_t>(y) * width + x] = std::clamp(v, 0.0, 1.0);
    }
  }
  return Texture(width, height, std::move(t));
}

Scene::Scene(Variant content) : content_(std::move(content)) {
  if (const auto* ps = std::get_if<scene::PointSet>(&content_)) {
    if (ps->points.size() != ps->radiance.size()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "point set needs one radiance per point");
    }
    if (!std::all_of(ps->radiance.begin(), ps->radiance.end(),
                     in_unit_range)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "radiance values must lie in [0, 1]");
    }
    for (const auto& p : ps->points) {
      if (!p.allFinite()) {
        throw Error(ErrorCode::kInvalidArgument, "point is not finite");
      }
    }
  } else if (const auto* pl = std::get_if<scene::TexturedPlane>(&content_)) {
    if (!(pl->extent_u > 0.0) || !(pl->extent_v > 0.0)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "plane extent must be positive");
    }
  } else if (const auto* pr = std::get_if<scene::Procedural>(&content_)) {
    if (!pr->radiance) {
      throw Error(ErrorCode::kInvalidArgument,
                  "procedural scene needs a radiance function");
    }
  }
}

Scene::Hit Scene::trace(const Vec3& origin, const Vec3& direction) const {
  Hit h;
  if (const auto* pl = std::get_if<scene::TexturedPlane>(&content_)) {
    const Mat3& R = pl->plane_to_world.rotation();
    const Vec3& o = pl->plane_to_world.translation();
    const Vec3 n = R.col(2);
    const double denom = n.dot(direction);
    if (std::abs(denom) < 1e-15) return h;
    const double s = n.dot(o - origin) / denom;
    if (!(s > 0.0)) return h;
    const Vec3 local = R.transpose() * (origin + s * direction - o);
    const double u = local.x() / pl->extent_u + 0.5;
    const double v = local.y() / pl->extent_v + 0.5;
    if (u < 0.0 || u > 1.0 || v < 0.0 || v > 1.0) return h;
    const Texture& tex = pl->texture;
    h.radiance = tex.sample(u * (tex.width() - 1), v * (tex.height() - 1));
    h.depth = s;
    h.hit = true;
  } else if (const auto* pr = std::get_if<scene::Procedural>(&content_)) {
    const double value = pr->radiance(origin, direction.normalized());
    h.radiance = std::clamp(value, 0.0, 1.0);
    h.depth = std::numeric_limits<double>::infinity();
    h.hit = true;
  }
  return h;
}

namespace procedural {

scene::Procedural sky_sinusoid(double cycles) {
  return {[cycles](const Vec3&, const Vec3& d) {
    const double azimuth = std::atan2(d.x(), d.z());
    const double elevation = std::asin(std::clamp(d.y(), -1.0, 1.0));
    return 0.5 + 0.25 * std::cos(cycles * azimuth) +
           0.25 * std::cos(cycles * elevation);
  }};
}

scene::Procedural sky_checker(double cell) {
  return {[cell](const Vec3&, const Vec3& d) {
    const double azimuth = std::atan2(d.x(), d.z());
    const double elevation = std::asin(std::clamp(d.y(), -1.0, 1.0));
    const long i = static_cast<long>(std::floor(azimuth / cell));
    const long j = static_cast<long>(std::floor(elevation / cell));
    return ((i + j) % 2 == 0) ? 0.9 : 0.1;
  }};
}

}  // namespace procedural

}  // namespace rollsim
