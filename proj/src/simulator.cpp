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

#include "rollsim/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

#include "internal.hpp"
#include "rollsim/error.hpp"
#include "rollsim/linsolve.hpp"

namespace rollsim {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();

// Undistorted camera-frame ray (x, y, 1) through every pixel center.
struct CameraRays {
  int width = 0;
  std::vector<Vec3> rays;
  std::vector<std::uint8_t> ok;
};

CameraRays build_rays(const Intrinsics& K, const RadialDistortion& d,
                      int width, int height, int threads) {
  CameraRays r;
  r.width = width;
  r.rays.resize(static_cast<std::size_t>(width) * height);
  r.ok.assign(r.rays.size(), 1);
  internal::parallel_rows(height, threads, [&](int y) {
    for (int x = 0; x < width; ++x) {
      const std::size_t i = static_cast<std::size_t>(y) * width + x;
      NormalizedPoint n = K.to_normalized({static_cast<double>(x),
                                           static_cast<double>(y)});
      if (!d.is_identity()) {
        try {
          n = undistort_numeric(d, n);
        } catch (const Error&) {
          r.ok[i] = 0;
          continue;
        }
      }
      r.rays[i] = lift(n);
    }
  });
  return r;
}

// Renders one image row as seen from `pose` into values/depth (width each).
void render_row(const Scene& scene, const CameraRays& rays, const Pose& pose,
                const Intrinsics& K, const RadialDistortion& d, int y,
                double* values, double* depth) {
  const int W = rays.width;
  if (scene.is_ray_traced()) {
    const Mat3 Rt = pose.rotation().transpose();
    const Vec3 C = pose.center();
    for (int x = 0; x < W; ++x) {
      const std::size_t i = static_cast<std::size_t>(y) * W + x;
      if (!rays.ok[i]) {
        values[x] = 0.0;
        depth[x] = kNaN;
        continue;
      }
      const Scene::Hit h = scene.trace(C, Rt * rays.rays[i]);
      values[x] = h.hit ? h.radiance : 0.0;
      depth[x] = h.hit ? h.depth : kNaN;
    }
    return;
  }

  const auto& ps = std::get<scene::PointSet>(scene.content());
  std::fill(values, values + W, 0.0);
  std::fill(depth, depth + W, kInf);
  const double R2 = d.working_radius() * d.working_radius();
  for (std::size_t i = 0; i < ps.points.size(); ++i) {
    const Vec3 Xc = pose.apply(ps.points[i]);
    if (!(Xc.z() > 0.0)) continue;
    NormalizedPoint n = drop(Xc);
    if (!d.is_identity()) {
      if (n.x * n.x + n.y * n.y > R2) continue;
      n = distort(d, n);
    }
    const PixelPoint p = K.to_pixel(n);
    if (internal::round_to_int(p.y) != y) continue;
    const int col = internal::round_to_int(p.x);
    if (col < 0 || col >= W) continue;
    // Nearest wins; ties keep the earlier point.
    if (Xc.z() < depth[col]) {
      depth[col] = Xc.z();
      values[col] = ps.radiance[i];
    }
  }
  for (int x = 0; x < W; ++x) {
    if (std::isinf(depth[x])) depth[x] = kNaN;
  }
}

void check_render_args(int width, int height, const RenderOptions& o) {
  if (width <= 0 || height <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "image size must be positive");
  }
  if (o.exposure_samples < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "exposure_samples must be at least 1");
  }
  if (!(o.gamma > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "gamma must be positive");
  }
}

}  // namespace

double apply_camera_response(double value, double gamma) {
  const double v = std::clamp(value, 0.0, 1.0);
  return gamma == 1.0 ? v : std::pow(v, 1.0 / gamma);
}

Frame render_gs(const Scene& scene, const Pose& pose, const Intrinsics& K,
                const RadialDistortion& d, int width, int height,
                const RenderOptions& options, double time) {
  check_render_args(width, height, options);
  const CameraRays rays = build_rays(K, d, width, height, options.threads);
  Frame f(width, height);
  f.depth.assign(f.size(), kNaN);
  f.row_times.assign(height, time);
  f.row_poses.assign(height, pose);
  internal::parallel_rows(height, options.threads, [&](int y) {
    double* row = &f.pixels[f.index(0, y)];
    render_row(scene, rays, pose, K, d, y, row, &f.depth[f.index(0, y)]);
    for (int x = 0; x < width; ++x) {
      row[x] = apply_camera_response(row[x], options.gamma);
    }
  });
  return f;
}

Frame synthesize_rs_frame(const Scene& scene, const MotionModel& motion,
                          const Intrinsics& K, const RadialDistortion& d,
                          const ShutterTiming& timing, int width, double tau0,
                          int fi, const RenderOptions& options) {
  const int H = timing.height();
  check_render_args(width, H, options);
  const CameraRays rays = build_rays(K, d, width, H, options.threads);
  const int S = options.exposure_samples;

  Frame f(width, H);
  f.depth.assign(f.size(), kNaN);
  f.row_times.assign(H, 0.0);
  f.row_poses.assign(H, Pose::identity());

  internal::parallel_rows(H, options.threads, [&](int y) {
    const double t_row = row_start_time(timing, tau0, y, fi);
    f.row_times[y] = t_row;
    f.row_poses[y] = motion.pose_at(t_row);

    double* mean = &f.pixels[f.index(0, y)];
    std::vector<double> values(width), depth(width);
    for (int s = 0; s < S; ++s) {
      double offset = static_cast<double>(s) / S;
      if (options.jitter && S > 1) {
        offset += internal::to_unit(internal::hash_key(
                      options.seed, static_cast<std::uint64_t>(fi),
                      static_cast<std::uint64_t>(y),
                      static_cast<std::uint64_t>(s))) / S;
      }
      const double t = t_row + offset * timing.exposure();
      render_row(scene, rays, motion.pose_at(t), K, d, y, values.data(),
                 depth.data());
      if (s == 0) {
        std::copy(depth.begin(), depth.end(), f.depth.begin() + f.index(0, y));
      }
      // Running mean: exact when every sample is identical.
      for (int x = 0; x < width; ++x) {
        mean[x] += (values[x] - mean[x]) / (s + 1);
      }
    }
    for (int x = 0; x < width; ++x) {
      mean[x] = apply_camera_response(mean[x], options.gamma);
    }
  });
  return f;
}

std::vector<RsProjection> rs_project_point_all(
    const Vec3& X, const MotionModel& motion, const Intrinsics& K,
    const RadialDistortion& d, const ShutterTiming& timing, double tau0,
    int fi, const RsProjectOptions& options) {
  if (fi < 0) {
    throw Error(ErrorCode::kInvalidArgument, "frame index must be >= 0");
  }
  const int H = timing.height();
  const auto pixel_at = [&](double t) -> std::optional<PixelPoint> {
    if (!motion.window().contains(t)) return std::nullopt;
    const Vec3 Xc = motion.pose_at(t).apply(X);
    if (!(Xc.z() > 0.0)) return std::nullopt;
    NormalizedPoint n = drop(Xc);
    if (!d.is_identity()) {
      if (n.x * n.x + n.y * n.y > d.working_radius() * d.working_radius()) {
        return std::nullopt;
      }
      n = distort(d, n);
    }
    return K.to_pixel(n);
  };
  const auto in_columns = [&](const PixelPoint& p) {
    return options.width <= 0 ||
           (p.x >= -0.5 && p.x < options.width - 0.5);
  };

  std::vector<RsProjection> out;
  const double tr = timing.effective_line_delay();
  if (tr == 0.0) {
    const double t = row_start_time_continuous(timing, tau0, 0.0, fi);
    const auto p = pixel_at(t);
    if (!p) return out;
    const int row = internal::round_to_int(p->y);
    if (row >= 0 && row < H && in_columns(*p)) out.push_back({*p, t, row});
    return out;
  }

  const double tol = options.tol > 0.0 ? options.tol : tr / 100.0;
  const double base = tau0 + fi * timing.frame_period();
  // g(t) = (start of the row the point projects to at t) - t.
  const auto g = [&](double t) -> double {
    const auto p = pixel_at(t);
    if (!p) return kNaN;
    return row_start_time_continuous(timing, tau0, p->y, fi) - t;
  };

  // Bracket sign changes of g at every readout position, half a row past
  // both ends.
  std::vector<double> ts, gs;
  ts.reserve(H + 2);
  for (int k = -1; k <= H; ++k) {
    const double readout = k < 0 ? -0.5 : (k == H ? H - 0.5 : k);
    const double t = base + readout * tr;
    ts.push_back(t);
    gs.push_back(g(t));
  }

  const auto settle_row = [&](double t_guess) -> std::optional<RsProjection> {
    const auto p0 = pixel_at(t_guess);
    if (!p0) return std::nullopt;
    int row = internal::round_to_int(p0->y);
    std::vector<int> seen;
    for (int it = 0; it < 16; ++it) {
      if (row < 0 || row >= H) return std::nullopt;
      const double t = row_start_time(timing, tau0, row, fi);
      const auto p = pixel_at(t);
      if (!p) return std::nullopt;
      const int next = internal::round_to_int(p->y);
      if (next == row) {
        if (!in_columns(*p)) return std::nullopt;
        return RsProjection{*p, t, row};
      }
      // Cycling between rows: the point falls between two row exposures.
      if (std::find(seen.begin(), seen.end(), next) != seen.end()) break;
      seen.push_back(row);
      row = next;
    }
    return std::nullopt;
  };

  for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
    double ga = gs[i], gb = gs[i + 1];
    if (std::isnan(ga) || std::isnan(gb) || ga * gb > 0.0) continue;
    double lo = ts[i], hi = ts[i + 1];
    double root = ga == 0.0 ? lo : (gb == 0.0 ? hi : 0.5 * (lo + hi));
    if (ga != 0.0 && gb != 0.0) {
      while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        const double gm = g(mid);
        if (std::isnan(gm)) break;
        if ((gm < 0.0) == (ga < 0.0)) {
          lo = mid;
          ga = gm;
        } else {
          hi = mid;
        }
      }
      root = 0.5 * (lo + hi);
    }
    if (const auto sol = settle_row(root)) {
      const bool duplicate =
          std::any_of(out.begin(), out.end(),
                      [&](const RsProjection& r) { return r.row == sol->row; });
      if (!duplicate) out.push_back(*sol);
    }
  }
  std::sort(out.begin(), out.end(),
            [](const RsProjection& a, const RsProjection& b) {
              return a.time < b.time;
            });
  return out;
}

RsProjection rs_project_point(const Vec3& X, const MotionModel& motion,
                              const Intrinsics& K, const RadialDistortion& d,
                              const ShutterTiming& timing, double tau0, int fi,
                              const RsProjectOptions& options) {
  const auto all =
      rs_project_point_all(X, motion, K, d, timing, tau0, fi, options);
  if (all.empty()) {
    throw Error(ErrorCode::kNotImagedThisFrame,
                "point is not imaged by any row of this frame");
  }
  if (all.size() > 1) {
    std::ostringstream os;
    os << "point is imaged by " << all.size() << " separate rows";
    throw Error(ErrorCode::kMultipleSolutions, os.str());
  }
  return all.front();
}

std::vector<double> measure_row_shifts(const Frame& image,
                                       const Frame& reference, int max_shift) {
  if (image.width != reference.width || image.height != reference.height) {
    throw Error(ErrorCode::kInvalidArgument, "frame sizes differ");
  }
  if (max_shift < 0) {
    throw Error(ErrorCode::kInvalidArgument, "max_shift must be >= 0");
  }
  const int W = image.width;
  const int x0 = max_shift + 1;
  const int x1 = W - max_shift - 2;
  std::vector<double> shifts(image.height, kNaN);
  if (x1 < x0) return shifts;

  for (int y = 0; y < image.height; ++y) {
    const double* img = &image.pixels[image.index(0, y)];
    const double* ref = &reference.pixels[reference.index(0, y)];
    const auto ssd = [&](double s) {
      double acc = 0.0;
      for (int x = x0; x <= x1; ++x) {
        const double u = x - s;
        const int i = static_cast<int>(std::floor(u));
        const double f = u - i;
        const double r = ref[i] + f * (ref[std::min(i + 1, W - 1)] - ref[i]);
        const double e = img[x] - r;
        acc += e * e;
      }
      return acc;
    };
    int best = 0;
    double best_cost = kInf;
    for (int s = -max_shift; s <= max_shift; ++s) {
      const double c = ssd(s);
      if (c < best_cost) {
        best_cost = c;
        best = s;
      }
    }
    // Golden-section refinement around the best integer shift.
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = std::max(best - 1.0, -static_cast<double>(max_shift));
    double b = std::min(best + 1.0, static_cast<double>(max_shift));
    double c = b - phi * (b - a), dd = a + phi * (b - a);
    double fc = ssd(c), fd = ssd(dd);
    for (int it = 0; it < 80 && b - a > 1e-9; ++it) {
      if (fc < fd) {
        b = dd;
        dd = c;
        fd = fc;
        c = b - phi * (b - a);
        fc = ssd(c);
      } else {
        a = c;
        c = dd;
        fc = fd;
        dd = a + phi * (b - a);
        fd = ssd(dd);
      }
    }
    shifts[y] = 0.5 * (a + b);
  }
  return shifts;
}

LineFit fit_line(const std::vector<double>& values) {
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (std::isfinite(values[i])) {
      xs.push_back(static_cast<double>(i));
      ys.push_back(values[i]);
    }
  }
  if (xs.size() < 2) {
    throw Error(ErrorCode::kInvalidArgument,
                "line fit needs at least two finite samples");
  }
  Eigen::MatrixXd A(xs.size(), 2);
  Eigen::VectorXd B(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    A(i, 0) = xs[i];
    A(i, 1) = 1.0;
    B[i] = ys[i];
  }
  const auto sol = solve_least_squares(DesignSystem(A, B));
  return {sol.theta[0], sol.theta[1],
          sol.residual_norm / std::sqrt(static_cast<double>(xs.size()))};
}

double FlashingLight::intensity(double t) const {
  const double angle = 2.0 * M_PI * frequency * t + phase;
  if (waveform == Waveform::kSinusoid) {
    return base + amplitude * (0.5 + 0.5 * std::cos(angle));
  }
  double cycle = angle / (2.0 * M_PI);
  cycle -= std::floor(cycle);
  return base + (cycle < duty_cycle ? amplitude : 0.0);
}

std::vector<Frame> synthesize_flash_frames(const ShutterTiming& timing,
                                           int width,
                                           const FlashingLight& light,
                                           double tau0, int first, int count,
                                           const FlashCaptureOptions& options) {
  if (width <= 0 || count < 0 || first < 0) {
    throw Error(ErrorCode::kInvalidArgument, "invalid flash capture request");
  }
  if (options.exposure_samples < 1 || options.noise_sigma < 0.0) {
    throw Error(ErrorCode::kInvalidArgument, "invalid flash capture options");
  }
  if (!(light.frequency > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "flash frequency must be positive");
  }
  const int H = timing.height();
  const int S = options.exposure_samples;
  std::vector<Frame> frames;
  frames.reserve(count);
  for (int fi = first; fi < first + count; ++fi) {
    Frame f(width, H);
    f.row_times.resize(H);
    f.row_poses.assign(H, Pose::identity());
    for (int y = 0; y < H; ++y) {
      const double t_row = row_start_time(timing, tau0, y, fi);
      f.row_times[y] = t_row;
      double mean = 0.0;
      for (int s = 0; s < S; ++s) {
        const double t = t_row + timing.exposure() * s / S;
        mean += (light.intensity(t) - mean) / (s + 1);
      }
      const double value = apply_camera_response(mean, options.gamma);
      for (int x = 0; x < width; ++x) {
        double v = value;
        if (options.noise_sigma > 0.0) {
          v += options.noise_sigma *
               internal::keyed_gaussian(options.seed,
                                        static_cast<std::uint64_t>(fi),
                                        static_cast<std::uint64_t>(y),
                                        static_cast<std::uint64_t>(x));
        }
        f.at(x, y) = std::clamp(v, 0.0, 1.0);
      }
    }
    frames.push_back(std::move(f));
  }
  return frames;
}

}  // namespace rollsim
