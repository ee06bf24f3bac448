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

#include "rollsim/config.hpp"

#include <filesystem>
#include <json.hpp>
#include <set>

#include "rollsim/error.hpp"
#include "rollsim/image_io.hpp"

namespace rollsim {

namespace {

using nlohmann::json;

// A JSON object with a dotted path for diagnostics. Every key read is
// recorded; finish() rejects the rest.
class Section {
 public:
  Section(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(path_, "must be an object");
  }

  std::string field(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

  bool has(const std::string& key) {
    seen_.insert(key);
    return j_.contains(key) && !j_.at(key).is_null();
  }

  const json& raw(const std::string& key) {
    if (!has(key)) throw ConfigError(field(key), "required");
    return j_.at(key);
  }

  double number(const std::string& key) {
    const json& v = raw(key);
    if (!v.is_number()) throw ConfigError(field(key), "must be a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw ConfigError(field(key), "must be finite");
    return d;
  }
  double number(const std::string& key, double fallback) {
    return has(key) ? number(key) : fallback;
  }

  long long integer(const std::string& key) {
    const json& v = raw(key);
    if (!v.is_number_integer()) {
      throw ConfigError(field(key), "must be an integer");
    }
    return v.get<long long>();
  }
  long long integer(const std::string& key, long long fallback) {
    return has(key) ? integer(key) : fallback;
  }

  bool boolean(const std::string& key, bool fallback) {
    if (!has(key)) return fallback;
    const json& v = j_.at(key);
    if (!v.is_boolean()) throw ConfigError(field(key), "must be true or false");
    return v.get<bool>();
  }

  std::string string(const std::string& key) {
    const json& v = raw(key);
    if (!v.is_string()) throw ConfigError(field(key), "must be a string");
    return v.get<std::string>();
  }
  std::string string(const std::string& key, const std::string& fallback) {
    return has(key) ? string(key) : fallback;
  }

  std::vector<double> numbers(const std::string& key) {
    const json& v = raw(key);
    if (!v.is_array()) throw ConfigError(field(key), "must be an array");
    std::vector<double> out;
    for (const json& e : v) {
      if (!e.is_number()) {
        throw ConfigError(field(key), "must contain only numbers");
      }
      out.push_back(e.get<double>());
      if (!std::isfinite(out.back())) {
        throw ConfigError(field(key), "must contain finite numbers");
      }
    }
    return out;
  }
  std::vector<double> numbers(const std::string& key, std::size_t count) {
    std::vector<double> v = numbers(key);
    if (v.size() != count) {
      throw ConfigError(field(key),
                        "must have " + std::to_string(count) + " entries");
    }
    return v;
  }

  Vec3 vec3(const std::string& key, const Vec3& fallback) {
    if (!has(key)) return fallback;
    const auto v = numbers(key, 3);
    return {v[0], v[1], v[2]};
  }

  Pose pose(const std::string& key) {
    if (!has(key)) return Pose::identity();
    const auto v = numbers(key, 12);
    std::array<double, 12> a;
    std::copy(v.begin(), v.end(), a.begin());
    try {
      return Pose::from_array(a);
    } catch (const Error& e) {
      throw ConfigError(field(key), e.what());
    }
  }

  Section child(const std::string& key) { return Section(raw(key), field(key)); }

  const std::string& path() const { return path_; }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (!seen_.count(it.key())) {
        throw ConfigError(field(it.key()), "unknown key");
      }
    }
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

int positive_int(Section& s, const std::string& key, long long fallback,
                 long long max = 1 << 20) {
  const long long v = s.integer(key, fallback);
  if (v < 1 || v > max) {
    throw ConfigError(s.field(key), "must be in [1, " + std::to_string(max) + "]");
  }
  return static_cast<int>(v);
}

std::string resolve_path(const std::string& base, const std::string& p) {
  const std::filesystem::path path(p);
  if (path.is_absolute()) return p;
  return (std::filesystem::path(base) / path).lexically_normal().string();
}

void parse_image(ExperimentConfig& c, Section s) {
  c.width = positive_int(s, "width", 0);
  c.height = positive_int(s, "height", 0);
  s.finish();
}

void parse_intrinsics(ExperimentConfig& c, Section s) {
  const double fx = s.number("fx");
  const double fy = s.number("fy", fx);
  const double cx = s.number("cx", 0.5 * (c.width - 1));
  const double cy = s.number("cy", 0.5 * (c.height - 1));
  const double skew = s.number("skew", 0.0);
  if (!(fx > 0.0)) throw ConfigError(s.field("fx"), "must be positive");
  if (!(fy > 0.0)) throw ConfigError(s.field("fy"), "must be positive");
  c.intrinsics.emplace(fx, fy, cx, cy, skew);
  s.finish();
}

void parse_distortion(ExperimentConfig& c, Section s) {
  const std::vector<double> k =
      s.has("radial_k") ? s.numbers("radial_k") : std::vector<double>{};
  const double radius =
      s.number("working_radius", RadialDistortion::kDefaultWorkingRadius);
  if (!(radius > 0.0)) {
    throw ConfigError(s.field("working_radius"), "must be positive");
  }
  try {
    c.distortion = RadialDistortion(k, radius);
  } catch (const Error& e) {
    throw ConfigError(s.field("radial_k"), e.what());
  }
  s.finish();
}

void parse_timing(ExperimentConfig& c, Section s) {
  PartialTiming p;
  auto quantity = [&](const std::string& key, std::optional<double>& out) {
    if (!s.has(key)) throw ConfigError(s.field(key), "required (number or \"solve\")");
    const json& v = s.raw(key);
    if (v.is_string() && v.get<std::string>() == "solve") {
      c.solved_timing.push_back(key);
      return;
    }
    const double d = s.number(key);
    if (d < 0.0) throw ConfigError(s.field(key), "must be non-negative");
    out = d;
  };
  quantity("te_s", p.exposure);
  quantity("tr_s", p.line_delay);
  quantity("tf_s", p.frame_delay);
  quantity("fps", p.fps);
  if (p.fps && !(*p.fps > 0.0)) {
    throw ConfigError(s.field("fps"), "must be positive");
  }
  p.height = c.height;
  if (s.has("height") && s.integer("height") != c.height) {
    throw ConfigError(s.field("height"), "must equal image.height");
  }
  const std::string mode = s.string("mode", "rolling");
  if (mode == "rolling") {
    p.mode = ShutterMode::kRolling;
  } else if (mode == "global") {
    p.mode = ShutterMode::kGlobal;
  } else {
    throw ConfigError(s.field("mode"), "must be \"rolling\" or \"global\"");
  }
  p.sweep = s.boolean("reverse_sweep", false) ? SweepDirection::kBottomToTop
                                              : SweepDirection::kTopToBottom;
  try {
    c.timing = complete_timing(p);
  } catch (const Error& e) {
    throw ConfigError(s.field("te_s/tr_s/tf_s/fps"), e.what());
  }
  s.finish();
}

void parse_motion(ExperimentConfig& c, Section s, const std::string& base) {
  const std::string type = s.string("type");
  c.motion_type = type;
  const Pose pose = s.pose("pose");
  const double t_ref = s.number("t_ref", c.render.tau0);
  std::optional<MotionModel::Variant> model;
  if (type == "static") {
    model = motion::Static{pose};
  } else if (type == "translation_const_vel") {
    model = motion::TranslationConstVel{pose.rotation(), pose.translation(),
                                        s.vec3("velocity", Vec3::Zero()), t_ref};
  } else if (type == "translation_const_accel") {
    model = motion::TranslationConstAccel{
        pose.rotation(), pose.translation(), s.vec3("velocity", Vec3::Zero()),
        s.vec3("acceleration", Vec3::Zero()), t_ref};
  } else if (type == "rotation_const_angvel") {
    model = motion::RotationConstAngVel{
        pose.rotation(), pose.translation(),
        s.vec3("angular_velocity", Vec3::Zero()), t_ref};
  } else if (type == "polynomial") {
    motion::PolynomialPerDof m;
    m.R0 = pose.rotation();
    m.t_ref = t_ref;
    const json& coeffs = s.raw("coefficients");
    if (!coeffs.is_array() || coeffs.size() != 6) {
      throw ConfigError(s.field("coefficients"),
                        "must list 6 coefficient arrays (rx, ry, rz, tx, ty, tz)");
    }
    for (int d = 0; d < 6; ++d) {
      const json& row = coeffs[d];
      const std::string f = s.field("coefficients") + "[" + std::to_string(d) + "]";
      if (!row.is_array()) throw ConfigError(f, "must be an array");
      for (const json& v : row) {
        if (!v.is_number()) throw ConfigError(f, "must contain numbers");
        m.coefficients[d].push_back(v.get<double>());
      }
      if (static_cast<int>(row.size()) > motion::PolynomialPerDof::kMaxDegree + 1) {
        throw ConfigError(f, "degree must not exceed 4");
      }
    }
    model = m;
  } else if (type == "keyframes") {
    motion::PiecewiseLinearKeyframes m;
    if (s.has("keyframes_csv")) {
      try {
        m.keyframes = read_keyframes_csv(resolve_path(base, s.string("keyframes_csv")));
      } catch (const Error& e) {
        throw ConfigError(s.field("keyframes_csv"), e.what());
      }
    } else {
      const json& list = s.raw("keyframes");
      if (!list.is_array()) {
        throw ConfigError(s.field("keyframes"), "must be an array");
      }
      for (std::size_t i = 0; i < list.size(); ++i) {
        const std::string f = s.field("keyframes") + "[" + std::to_string(i) + "]";
        if (!list[i].is_array() || list[i].size() != 13) {
          throw ConfigError(f, "must be [t, 12 pose numbers]");
        }
        std::array<double, 12> a;
        for (int j = 0; j < 12; ++j) {
          if (!list[i][j + 1].is_number()) throw ConfigError(f, "must be numbers");
          a[j] = list[i][j + 1].get<double>();
        }
        if (!list[i][0].is_number()) throw ConfigError(f, "must be numbers");
        try {
          m.keyframes.push_back({list[i][0].get<double>(), Pose::from_array(a)});
        } catch (const Error& e) {
          throw ConfigError(f, e.what());
        }
      }
    }
    model = m;
  } else {
    throw ConfigError(s.field("type"),
                      "unknown motion type '" + type +
                          "' (static, translation_const_vel, "
                          "translation_const_accel, rotation_const_angvel, "
                          "polynomial, keyframes)");
  }
  try {
    if (s.has("window")) {
      const auto w = s.numbers("window", 2);
      c.motion.emplace(*model, TimeWindow{w[0], w[1]});
    } else if (type != "keyframes" && c.timing) {
      c.motion.emplace(*model, frame_window(*c.timing, c.render.tau0,
                                            c.render.first_frame,
                                            c.render.frames));
    } else {
      c.motion.emplace(*model);
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(s.path(), e.what());
  }
  s.finish();
}

Texture parse_texture(Section s, const std::string& base, std::uint64_t seed) {
  if (s.has("image")) {
    const std::string path = resolve_path(base, s.string("image"));
    s.finish();
    try {
      const Frame f = read_image(path);
      return Texture(f.width, f.height, f.pixels);
    } catch (const Error& e) {
      throw ConfigError(s.field("image"), e.what());
    }
  }
  const std::string name = s.string("pattern", "checker");
  TexturePattern pattern;
  if (name == "checker") {
    pattern = TexturePattern::kChecker;
  } else if (name == "sinusoid") {
    pattern = TexturePattern::kSinusoid;
  } else if (name == "bars") {
    pattern = TexturePattern::kBars;
  } else if (name == "value_noise") {
    pattern = TexturePattern::kValueNoise;
  } else {
    throw ConfigError(s.field("pattern"),
                      "must be checker, sinusoid, bars or value_noise");
  }
  const int w = positive_int(s, "width", 256, 1 << 14);
  const int h = positive_int(s, "height", 256, 1 << 14);
  const double period = s.number("period", 16.0);
  if (!(period > 0.0)) throw ConfigError(s.field("period"), "must be positive");
  const auto tex_seed = static_cast<std::uint64_t>(
      s.integer("seed", static_cast<long long>(seed)));
  s.finish();
  return make_texture(pattern, w, h, period, tex_seed);
}

void parse_scene(ExperimentConfig& c, Section s, const std::string& base) {
  const std::string type = s.string("type");
  c.scene_type = type;
  std::optional<Scene::Variant> content;
  if (type == "point_set") {
    scene::PointSet ps;
    const json& list = s.raw("points");
    if (!list.is_array()) throw ConfigError(s.field("points"), "must be an array");
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string f = s.field("points") + "[" + std::to_string(i) + "]";
      if (!list[i].is_array() || list[i].size() != 4) {
        throw ConfigError(f, "must be [x, y, z, radiance]");
      }
      double v[4];
      for (int j = 0; j < 4; ++j) {
        if (!list[i][j].is_number()) throw ConfigError(f, "must be numbers");
        v[j] = list[i][j].get<double>();
      }
      ps.points.emplace_back(v[0], v[1], v[2]);
      ps.radiance.push_back(v[3]);
    }
    content = std::move(ps);
  } else if (type == "textured_plane") {
    scene::TexturedPlane plane;
    plane.plane_to_world = s.pose("pose");
    const auto extent = s.numbers("extent_m", 2);
    plane.extent_u = extent[0];
    plane.extent_v = extent[1];
    if (!(extent[0] > 0.0) || !(extent[1] > 0.0)) {
      throw ConfigError(s.field("extent_m"), "must be positive");
    }
    plane.texture = s.has("texture")
                        ? parse_texture(s.child("texture"), base, c.seed)
                        : make_texture(TexturePattern::kChecker, 256, 256, 16.0);
    content = std::move(plane);
  } else if (type == "procedural") {
    const std::string pattern = s.string("pattern", "sky_sinusoid");
    if (pattern == "sky_sinusoid") {
      content = procedural::sky_sinusoid(s.number("cycles", 12.0));
    } else if (pattern == "sky_checker") {
      const double cell = s.number("cell_rad", 0.05);
      if (!(cell > 0.0)) throw ConfigError(s.field("cell_rad"), "must be positive");
      content = procedural::sky_checker(cell);
    } else {
      throw ConfigError(s.field("pattern"), "must be sky_sinusoid or sky_checker");
    }
  } else {
    throw ConfigError(s.field("type"),
                      "unknown scene type '" + type +
                          "' (point_set, textured_plane, procedural)");
  }
  try {
    c.scene.emplace(std::move(*content));
  } catch (const Error& e) {
    throw ConfigError(s.path(), e.what());
  }
  s.finish();
}

void parse_render(ExperimentConfig& c, Section s) {
  c.render.tau0 = s.number("tau0_s", 0.0);
  const long long first = s.integer("first_frame", 0);
  if (first < 0) throw ConfigError(s.field("first_frame"), "must be >= 0");
  c.render.first_frame = static_cast<int>(first);
  c.render.frames = positive_int(s, "frames", 1, 10000);
  c.render.exposure_samples = positive_int(s, "exposure_samples", 1, 4096);
  c.render.gamma = s.number("gamma", 1.0);
  if (!(c.render.gamma > 0.0)) throw ConfigError(s.field("gamma"), "must be positive");
  c.render.jitter = s.boolean("jitter", false);
  s.finish();
}

void parse_output(ExperimentConfig& c, Section s) {
  c.output.format = s.string("format", "png");
  if (c.output.format != "png" && c.output.format != "pgm") {
    throw ConfigError(s.field("format"), "must be \"png\" or \"pgm\"");
  }
  const long long depth = s.integer("bit_depth", 8);
  if (depth != 8 && depth != 16) {
    throw ConfigError(s.field("bit_depth"), "must be 8 or 16");
  }
  c.output.bit_depth = static_cast<int>(depth);
  c.output.prefix = s.string("prefix", "frame");
  if (c.output.prefix.empty() ||
      c.output.prefix.find_first_of("/\\") != std::string::npos) {
    throw ConfigError(s.field("prefix"), "must be a plain file name prefix");
  }
  s.finish();
}

void parse_rectify(ExperimentConfig& c, Section s, const std::string& base) {
  c.rectify.method = s.string("method", "rotation_only");
  if (c.rectify.method != "rotation_only" && c.rectify.method != "known_depth") {
    throw ConfigError(s.field("method"),
                      "must be \"rotation_only\" or \"known_depth\"");
  }
  if (s.has("anchor_row")) {
    const long long a = s.integer("anchor_row");
    if (a < 0 || a >= c.height) {
      throw ConfigError(s.field("anchor_row"), "outside the image rows");
    }
    c.rectify.anchor_row = static_cast<int>(a);
  }
  c.rectify.reapply_distortion = s.boolean("reapply_distortion", true);
  if (s.has("depth")) c.rectify.depth_path = resolve_path(base, s.string("depth"));
  s.finish();
}

void parse_calibration(CalibrationSettings& cal, Section& s) {
  cal.flash_hz = s.number("flash_hz", cal.flash_hz);
  if (!(cal.flash_hz > 0.0)) throw ConfigError(s.field("flash_hz"), "must be positive");
  cal.frames = positive_int(s, "frames", cal.frames, 1000);
  cal.width = positive_int(s, "width", cal.width, 1 << 14);
  cal.noise_sigma = s.number("noise_sigma", cal.noise_sigma);
  if (cal.noise_sigma < 0.0) {
    throw ConfigError(s.field("noise_sigma"), "must be non-negative");
  }
  cal.exposure_samples = positive_int(s, "exposure_samples", cal.exposure_samples, 4096);
  cal.waveform = s.string("waveform", cal.waveform);
  if (cal.waveform != "sinusoid" && cal.waveform != "square") {
    throw ConfigError(s.field("waveform"), "must be \"sinusoid\" or \"square\"");
  }
  cal.phase = s.number("phase_rad", cal.phase);
  cal.use_fps = s.boolean("use_fps", cal.use_fps);
}

void parse_analysis(ExperimentConfig& c, Section s) {
  AnalysisSettings a;
  a.type = s.string("type");
  if (a.type == "conditioning") {
    auto& k = a.conditioning;
    k.points_per_camera = positive_int(s, "points_per_camera", k.points_per_camera, 100000);
    if (k.points_per_camera < 3) {
      throw ConfigError(s.field("points_per_camera"), "must be at least 3");
    }
    k.half_fov = s.number("half_fov_rad", k.half_fov);
    if (!(k.half_fov > 0.0 && k.half_fov < 1.5)) {
      throw ConfigError(s.field("half_fov_rad"), "must lie in (0, 1.5)");
    }
    k.near = s.number("near_m", k.near);
    k.far = s.number("far_m", k.far);
    if (!(k.near > 0.0 && k.far > k.near)) {
      throw ConfigError(s.field("near_m"), "need 0 < near_m < far_m");
    }
    k.second_camera_yaw = s.number("second_camera_yaw_rad", k.second_camera_yaw);
  } else if (a.type == "optimizer") {
    auto& o = a.optimizer;
    o.objective = s.string("objective", o.objective);
    if (o.objective == "quadratic") {
      o.curvatures = s.has("curvatures") ? s.numbers("curvatures") : o.curvatures;
      if (o.curvatures.empty()) throw ConfigError(s.field("curvatures"), "must not be empty");
      for (double v : o.curvatures) {
        if (!(v > 0.0)) throw ConfigError(s.field("curvatures"), "must be positive");
      }
    } else if (o.objective == "double_well") {
      o.tilt = s.number("tilt", o.tilt);
    } else if (o.objective != "rosenbrock") {
      throw ConfigError(s.field("objective"),
                        "must be quadratic, double_well or rosenbrock");
    }
    const std::size_t dim = o.objective == "quadratic"   ? o.curvatures.size()
                            : o.objective == "double_well" ? 1
                                                           : 2;
    o.start = s.has("start") ? s.numbers("start", dim) : std::vector<double>(dim, 1.0);
    if (s.has("gamma")) {
      o.gamma = s.number("gamma");
      if (!(*o.gamma > 0.0)) throw ConfigError(s.field("gamma"), "must be positive");
    }
    if (s.has("beta")) {
      o.beta = s.number("beta");
      if (!(*o.beta >= 0.0 && *o.beta < 1.0)) {
        throw ConfigError(s.field("beta"), "must lie in [0, 1)");
      }
    }
    if (o.objective != "quadratic" && (!o.gamma || !o.beta)) {
      throw ConfigError(s.field("gamma"),
                        "gamma and beta are required for this objective");
    }
    o.max_iters = positive_int(s, "max_iters", o.max_iters, 10000000);
    o.grad_tol = s.number("grad_tol", o.grad_tol);
    if (!(o.grad_tol >= 0.0)) throw ConfigError(s.field("grad_tol"), "must be >= 0");
  } else if (a.type == "calibration") {
    parse_calibration(a.calibration, s);
  } else {
    throw ConfigError(s.field("type"),
                      "must be conditioning, optimizer or calibration");
  }
  s.finish();
  c.analysis = a;
}

}  // namespace

ExperimentConfig parse_config(const std::string& json_text,
                              const std::string& base_dir,
                              const ConfigOverrides& overrides) {
  json doc;
  try {
    doc = json::parse(json_text, nullptr, true, true);
  } catch (const json::parse_error& e) {
    throw ConfigError("<document>", std::string("invalid JSON: ") + e.what());
  }
  if (overrides.seed) doc["seed"] = *overrides.seed;

  ExperimentConfig c;
  Section root(doc, "");
  if (root.has("seed")) {
    const json& v = root.raw("seed");
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
      throw ConfigError("seed", "must be a non-negative integer");
    }
    c.seed = v.get<std::uint64_t>();
  }
  if (root.has("description") && !root.raw("description").is_string()) {
    throw ConfigError("description", "must be a string");
  }
  if (root.has("image")) parse_image(c, root.child("image"));
  auto need_image = [&](const char* section) {
    if (c.height == 0) throw ConfigError("image", std::string("required by ") + section);
  };
  if (root.has("intrinsics")) {
    need_image("intrinsics");
    parse_intrinsics(c, root.child("intrinsics"));
  }
  if (root.has("distortion")) parse_distortion(c, root.child("distortion"));
  if (root.has("render")) parse_render(c, root.child("render"));
  if (root.has("timing")) {
    need_image("timing");
    parse_timing(c, root.child("timing"));
  }
  if (root.has("motion")) parse_motion(c, root.child("motion"), base_dir);
  if (root.has("scene")) parse_scene(c, root.child("scene"), base_dir);
  if (root.has("output")) parse_output(c, root.child("output"));
  if (root.has("rectify")) {
    need_image("rectify");
    parse_rectify(c, root.child("rectify"), base_dir);
  }
  if (root.has("analysis")) parse_analysis(c, root.child("analysis"));
  if (root.has("calibration")) {
    Section s = root.child("calibration");
    parse_calibration(c.calibration, s);
    s.finish();
  }
  root.finish();

  c.canonical = doc.dump();
  c.hash = sha256_hex(c.canonical);
  return c;
}

ExperimentConfig load_config(const std::string& path,
                             const ConfigOverrides& overrides) {
  std::string text;
  try {
    text = read_text_file(path);
  } catch (const Error& e) {
    throw ConfigError("--config", e.what());
  }
  const std::string base =
      std::filesystem::path(path).parent_path().string();
  return parse_config(text, base.empty() ? "." : base, overrides);
}

const Intrinsics& require_intrinsics(const ExperimentConfig& c) {
  if (!c.intrinsics) throw ConfigError("intrinsics", "required");
  return *c.intrinsics;
}

const ShutterTiming& require_timing(const ExperimentConfig& c) {
  if (!c.timing) throw ConfigError("timing", "required");
  return *c.timing;
}

const MotionModel& require_motion(const ExperimentConfig& c) {
  if (!c.motion) throw ConfigError("motion", "required");
  return *c.motion;
}

const Scene& require_scene(const ExperimentConfig& c) {
  if (!c.scene) throw ConfigError("scene", "required");
  return *c.scene;
}

}  // namespace rollsim
