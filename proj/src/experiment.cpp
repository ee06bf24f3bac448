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

#include "rollsim/experiment.hpp"

#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <json.hpp>
#include <limits>
#include <sstream>

#include "rollsim/calibration.hpp"
#include "rollsim/error.hpp"
#include "rollsim/image_io.hpp"
#include "rollsim/linsolve.hpp"
#include "rollsim/optimize.hpp"
#include "rollsim/rectify.hpp"
#include "rollsim/simulator.hpp"

namespace rollsim {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

std::shared_ptr<spdlog::logger> logger() {
  static std::shared_ptr<spdlog::logger> log = [] {
    auto l = spdlog::stderr_logger_mt("rollsim");
    l->set_level(spdlog::level::warn);
    l->set_pattern("[%l] %v");
    return l;
  }();
  return log;
}

std::string join(const std::string& dir, const std::string& name) {
  return (fs::path(dir) / name).string();
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw Error(ErrorCode::kIo, dir + ": cannot create output directory");
  }
}

std::string frame_name(const std::string& prefix, int fi,
                       const std::string& kind, const std::string& ext) {
  std::ostringstream os;
  os << prefix << '_' << std::setw(4) << std::setfill('0') << fi << '_' << kind
     << '.' << ext;
  return os.str();
}

std::string fixed(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

// JSON cannot carry infinities; the PSNR of identical frames is "inf".
json number_or_sentinel(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return nullptr;
  return v;
}

class Artifacts {
 public:
  Artifacts(std::string dir, std::string hash)
      : dir_(std::move(dir)), hash_(std::move(hash)) {}

  const std::string& dir() const { return dir_; }
  const std::string& hash() const { return hash_; }

  std::string image(const std::string& name, const Frame& f, int bit_depth) {
    const std::string path = join(dir_, name);
    write_image(path, f, bit_depth, hash_);
    return record(name);
  }
  std::string sidecar(const std::string& name, const Frame& f) {
    write_sidecar_csv(join(dir_, name), f, hash_);
    return record(name);
  }
  std::string text(const std::string& name, const std::string& content) {
    write_text_file(join(dir_, name), content);
    return record(name);
  }

  json listing() const { return files_; }

 private:
  std::string record(const std::string& name) {
    const std::string digest = sha256_file(join(dir_, name));
    files_[name] = digest;
    return digest;
  }

  std::string dir_;
  std::string hash_;
  json files_ = json::object();
};

std::string finish(Artifacts& a, json summary, const std::string& report) {
  a.text("report.txt", "config_sha256 " + a.hash() + "\n" + report);
  summary["files"] = a.listing();
  const std::string line = summary.dump();
  write_text_file(join(a.dir(), "summary.json"), line + "\n");
  return line;
}

json comparison_json(const FrameComparison& c) {
  return {{"mae", number_or_sentinel(c.mae)},
          {"psnr_db", number_or_sentinel(c.psnr)},
          {"coverage", c.coverage}};
}

std::string depth_text(const Frame& f) {
  std::ostringstream os;
  os << std::setprecision(17);
  for (int y = 0; y < f.height; ++y) {
    for (int x = 0; x < f.width; ++x) {
      if (x) os << ' ';
      const double d = f.depth.empty() ? std::numeric_limits<double>::quiet_NaN()
                                       : f.depth[f.index(x, y)];
      if (std::isfinite(d)) {
        os << d;
      } else {
        os << "nan";
      }
    }
    os << '\n';
  }
  return os.str();
}

std::vector<double> read_depth_text(const std::string& path, int w, int h) {
  std::istringstream in(read_text_file(path));
  std::vector<double> out;
  std::string token;
  while (in >> token) {
    if (token == "nan") {
      out.push_back(std::numeric_limits<double>::quiet_NaN());
      continue;
    }
    try {
      out.push_back(std::stod(token));
    } catch (const std::exception&) {
      throw Error(ErrorCode::kIo, path + ": not a number: '" + token + "'");
    }
  }
  if (out.size() != static_cast<std::size_t>(w) * h) {
    throw Error(ErrorCode::kIo, path + ": expected " + std::to_string(w * h) +
                                    " depth values, found " +
                                    std::to_string(out.size()));
  }
  return out;
}

// Closed-form per-row skew of a fronto-parallel plane under constant
// velocity, together with the measured slope of RS against the oracle.
json skew_report(const ExperimentConfig& c, const Frame& rs, const Frame& gs) {
  const auto* m = std::get_if<motion::TranslationConstVel>(&c.motion->model());
  if (!m || c.scene_type != "textured_plane" || gs.depth.empty()) return nullptr;
  const double Z = gs.depth[gs.index(gs.width / 2, gs.height / 2)];
  if (!std::isfinite(Z) || Z <= 0.0) return nullptr;
  const ShutterTiming& t = *c.timing;
  const double dt_row =
      row_start_time(t, 0.0, 1, 0) - row_start_time(t, 0.0, 0, 0);
  const Vec3 v_cam = m->velocity;
  const double closed = c.intrinsics->fx() * v_cam.x() * dt_row / Z;
  const int max_shift =
      static_cast<int>(std::ceil(std::abs(closed) * rs.height)) + 3;
  if (2 * max_shift + 8 >= rs.width) return nullptr;
  const LineFit fit = fit_line(measure_row_shifts(rs, gs, max_shift));
  const double rel = closed != 0.0 ? std::abs(fit.slope - closed) / std::abs(closed)
                                   : std::abs(fit.slope);
  return {{"measured_px_per_row", fit.slope},
          {"closed_form_px_per_row", closed},
          {"relative_error", rel},
          {"plane_depth_m", Z}};
}

MotionModel motion_from_rows(const RowMetadata& rows) {
  std::vector<std::size_t> order(rows.times.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return rows.times[a] < rows.times[b];
  });
  motion::PiecewiseLinearKeyframes kf;
  for (std::size_t i : order) {
    if (!kf.keyframes.empty() && kf.keyframes.back().time == rows.times[i]) {
      if (max_abs_difference(kf.keyframes.back().pose, rows.poses[i]) > 1e-12) {
        throw Error(ErrorCode::kInvalidArgument,
                    "sidecar lists different poses for the same time");
      }
      continue;
    }
    kf.keyframes.push_back({rows.times[i], rows.poses[i]});
  }
  if (kf.keyframes.size() == 1) {
    return MotionModel(motion::Static{kf.keyframes.front().pose});
  }
  return MotionModel(kf);
}

FlashingLight flash_light(const CalibrationSettings& s) {
  FlashingLight light;
  light.frequency = s.flash_hz;
  light.phase = s.phase;
  light.waveform = s.waveform == "square" ? FlashingLight::Waveform::kSquare
                                          : FlashingLight::Waveform::kSinusoid;
  return light;
}

json calibration_json(const LineRateCalibration& r) {
  json j = {{"rows_per_second", r.rows_per_second},
            {"t_r_s", r.line_delay},
            {"t_f_s", r.frame_delay ? json(*r.frame_delay) : json(nullptr)},
            {"t_f_ambiguous", r.frame_delay_ambiguous},
            {"flash_period_s", r.flash_period},
            {"band_cycles_per_row", r.band_frequency},
            {"significance_db", r.significance_db},
            {"confidence", r.confidence}};
  return j;
}

std::string calibration_text(const LineRateCalibration& r) {
  std::ostringstream os;
  os << "n_r " << fixed(r.rows_per_second) << " rows/s\n"
     << "t_r " << fixed(r.line_delay) << " s\n";
  if (r.frame_delay) {
    os << "t_f " << fixed(*r.frame_delay) << " s"
       << (r.frame_delay_ambiguous ? " (modulo flash period " + fixed(r.flash_period) + " s)"
                                   : "")
       << '\n';
  } else {
    os << "t_f unavailable (needs two or more frames)\n";
  }
  os << "significance " << fixed(r.significance_db) << " dB\n"
     << "confidence " << fixed(r.confidence) << '\n';
  return os.str();
}

// Simulated flash frames plus the truth they were generated from.
json run_flash_calibration(const ExperimentConfig& c, const CalibrationSettings& s,
                           Artifacts& a, std::ostringstream& report) {
  const ShutterTiming& t = require_timing(c);
  FlashCaptureOptions o;
  o.exposure_samples = s.exposure_samples;
  o.gamma = c.render.gamma;
  o.noise_sigma = s.noise_sigma;
  o.seed = c.seed;
  const auto frames = synthesize_flash_frames(t, s.width, flash_light(s),
                                              c.render.tau0, c.render.first_frame,
                                              s.frames, o);
  for (std::size_t i = 0; i < frames.size(); ++i) {
    a.image(frame_name("flash", c.render.first_frame + static_cast<int>(i), "rs", "png"),
            frames[i], 16);
  }
  CalibrationOptions co;
  co.exposure = t.exposure();
  co.sweep = t.sweep();
  if (s.use_fps) co.fps = t.fps();
  const LineRateCalibration r = calibrate_line_rate(frames, s.flash_hz, co);
  json truth = {{"t_r_s", t.line_delay()}, {"t_f_s", t.frame_delay()}};
  json out = calibration_json(r);
  out["truth"] = truth;
  out["t_r_relative_error"] = std::abs(r.line_delay - t.line_delay()) / t.line_delay();
  if (r.frame_delay) {
    const double P = r.flash_period;
    double d = std::fmod(*r.frame_delay - t.frame_delay(), P);
    if (d > 0.5 * P) d -= P;
    if (d < -0.5 * P) d += P;
    out["t_f_error_mod_period_s"] = d;
  }
  report << "flash " << fixed(s.flash_hz) << " Hz, " << s.frames << " frames, noise "
         << fixed(s.noise_sigma) << ", seed " << c.seed << '\n'
         << calibration_text(r) << "true t_r " << fixed(t.line_delay())
         << " s, true t_f " << fixed(t.frame_delay()) << " s\n";
  a.text("calibration.json", out.dump(2) + "\n");
  return out;
}

}  // namespace

void configure_logging_from_env() {
  const char* env = std::getenv("ROLLSIM_LOG");
  if (!env) return;
  const auto level = spdlog::level::from_str(env);
  logger()->set_level(level);
}

std::string run_simulate(const ExperimentConfig& c, const RunOptions& o) {
  const Intrinsics& K = require_intrinsics(c);
  const ShutterTiming& timing = require_timing(c);
  const MotionModel& motion = require_motion(c);
  const Scene& scene = require_scene(c);
  ensure_dir(o.out_dir);
  Artifacts a(o.out_dir, c.hash);
  const std::string ext = c.output.format;
  const int H = timing.height();
  const int anchor = c.rectify.anchor_row.value_or(H / 2);

  RenderOptions ro;
  ro.exposure_samples = c.render.exposure_samples;
  ro.gamma = c.render.gamma;
  ro.jitter = c.render.jitter;
  ro.seed = c.seed;
  ro.threads = o.threads;

  json frames = json::array();
  json skew = nullptr;
  std::ostringstream report;
  report << "seed " << c.seed << "\nmotion " << c.motion_type << "\nscene "
         << c.scene_type << '\n';
  for (int k = 0; k < c.render.frames; ++k) {
    const int fi = c.render.first_frame + k;
    logger()->info("rendering frame {}", fi);
    const Frame rs = synthesize_rs_frame(scene, motion, K, c.distortion, timing,
                                         c.width, c.render.tau0, fi, ro);
    json entry = {{"index", fi}};
    const std::string rs_name = frame_name(c.output.prefix, fi, "rs", ext);
    entry["rs"] = a.image(rs_name, rs, c.output.bit_depth);
    a.sidecar(frame_name(c.output.prefix, fi, "rs", "csv"), rs);

    const double t_anchor = row_start_time(timing, c.render.tau0, anchor, fi);
    RenderOptions go = ro;
    go.jitter = false;
    const Frame gs = synthesize_rs_frame(
        scene, MotionModel::fixed(motion.pose_at(t_anchor)), K, c.distortion,
        timing, c.width, c.render.tau0, fi, go);
    if (o.ground_truth) {
      Frame gs_meta = gs;
      gs_meta.row_times.assign(H, t_anchor);
      entry["gs"] = a.image(frame_name(c.output.prefix, fi, "gs", ext), gs_meta,
                            c.output.bit_depth);
      a.sidecar(frame_name(c.output.prefix, fi, "gs", "csv"), gs_meta);
      a.text(frame_name(c.output.prefix, fi, "depth", "txt"), depth_text(rs));
    }
    if (k == 0) {
      skew = skew_report(c, rs, gs);
      const FrameComparison cmp = compare_frames(rs, gs);
      entry["rs_vs_gs"] = comparison_json(cmp);
      report << "frame " << fi << " RS vs GS oracle: MAE " << fixed(cmp.mae)
             << ", PSNR " << fixed(cmp.psnr) << " dB\n";
    }
    frames.push_back(entry);
  }
  if (!skew.is_null()) {
    report << "skew slope measured " << fixed(skew["measured_px_per_row"])
           << " px/row, closed form " << fixed(skew["closed_form_px_per_row"])
           << " px/row\n";
  }
  json summary = {{"command", "simulate"},
                  {"config_sha256", c.hash},
                  {"seed", c.seed},
                  {"anchor_row", anchor},
                  {"frames", frames},
                  {"skew", skew}};
  return finish(a, summary, report.str());
}

std::string run_rectify(const ExperimentConfig& c, const RunOptions& o) {
  const Intrinsics& K = require_intrinsics(c);
  const ShutterTiming& timing = require_timing(c);
  if (o.inputs.size() != 1) {
    throw Error(ErrorCode::kInvalidArgument, "rectify needs exactly one --input frame");
  }
  if (o.sidecar.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "rectify needs --sidecar");
  }
  Frame frame = read_image(o.inputs.front());
  if (!fs::exists(o.sidecar)) {
    throw Error(ErrorCode::kIo, o.sidecar + ": sidecar file not found");
  }
  const RowMetadata rows = read_sidecar_csv(o.sidecar);
  if (rows.times.size() != static_cast<std::size_t>(frame.height)) {
    throw Error(ErrorCode::kInvalidArgument,
                o.sidecar + ": sidecar has " + std::to_string(rows.times.size()) +
                    " rows but the frame has " + std::to_string(frame.height));
  }
  if (frame.height != timing.height()) {
    throw Error(ErrorCode::kInvalidArgument,
                "frame height does not match timing height");
  }
  frame.row_times = rows.times;
  frame.row_poses = rows.poses;
  const MotionModel motion = motion_from_rows(rows);
  const int anchor = c.rectify.anchor_row.value_or(frame.height / 2);

  RectifyOptions ro;
  ro.distortion = c.distortion;
  ro.reapply_distortion = c.rectify.reapply_distortion;
  ro.threads = o.threads;
  Frame out;
  if (c.rectify.method == "known_depth") {
    if (c.rectify.depth_path.empty()) {
      throw ConfigError("rectify.depth", "required for known_depth");
    }
    const auto depth = read_depth_text(c.rectify.depth_path, frame.width, frame.height);
    out = rectify_known_depth(frame, motion, K, timing, depth, anchor, ro);
  } else {
    out = rectify_rotation_only(frame, motion, K, timing, anchor, ro);
  }

  ensure_dir(o.out_dir);
  Artifacts a(o.out_dir, c.hash);
  const fs::path in(o.inputs.front());
  const std::string ext = in.extension().string().substr(1);
  const std::string name = in.stem().string() + "_rect." + ext;
  const int depth_bits = c.output.bit_depth;
  json summary = {{"command", "rectify"},
                  {"config_sha256", c.hash},
                  {"method", c.rectify.method},
                  {"anchor_row", anchor},
                  {"output", name}};
  summary["output_sha256"] = a.image(name, out, depth_bits);
  const double coverage =
      static_cast<double>(std::count(out.valid.begin(), out.valid.end(), 1)) /
      out.size();
  summary["coverage"] = coverage;
  std::ostringstream report;
  report << "input " << o.inputs.front() << "\nsidecar " << o.sidecar
         << "\nmethod " << c.rectify.method << "\nanchor row " << anchor
         << "\ncoverage " << fixed(coverage) << '\n';
  if (!o.reference.empty()) {
    const Frame ref = read_image(o.reference);
    const FrameComparison before = compare_frames(frame, ref, out.valid);
    const FrameComparison after = compare_frames(out, ref);
    summary["unrectified"] = comparison_json(before);
    summary["rectified"] = comparison_json(after);
    report << "unrectified vs reference: MAE " << fixed(before.mae) << ", PSNR "
           << fixed(before.psnr) << " dB\n"
           << "rectified vs reference:   MAE " << fixed(after.mae) << ", PSNR "
           << fixed(after.psnr) << " dB, coverage " << fixed(after.coverage) << '\n';
  }
  return finish(a, summary, report.str());
}

std::string run_analyze(const ExperimentConfig& c, const RunOptions& o) {
  if (!c.analysis) throw ConfigError("analysis", "required");
  const AnalysisSettings& an = *c.analysis;
  ensure_dir(o.out_dir);
  Artifacts a(o.out_dir, c.hash);
  json summary = {{"command", "analyze"},
                  {"analysis", an.type},
                  {"config_sha256", c.hash},
                  {"seed", c.seed}};
  std::ostringstream report;
  report << "seed " << c.seed << "\nanalysis " << an.type << '\n';

  if (an.type == "conditioning") {
    const auto& k = an.conditioning;
    const Pose cam_a = Pose::identity();
    const Pose cam_b = Pose::from_center(rotation_y(k.second_camera_yaw), Vec3::Zero());
    RigCamera a_cam{cam_a, sample_points_in_view(cam_a, k.points_per_camera, k.half_fov,
                                                 k.near, k.far, c.seed)};
    RigCamera b_cam{cam_b, sample_points_in_view(cam_b, k.points_per_camera, k.half_fov,
                                                 k.near, k.far, c.seed + 1)};
    const double ka = condition_number(rig_design_matrix({a_cam}));
    const double kb = condition_number(rig_design_matrix({b_cam}));
    const double kab = condition_number(rig_design_matrix({a_cam, b_cam}));
    std::ostringstream csv;
    csv << "# config_sha256 " << c.hash << "\nrig,rows,kappa\n"
        << "camera_a," << 2 * k.points_per_camera << ',' << fixed(ka) << '\n'
        << "camera_b," << 2 * k.points_per_camera << ',' << fixed(kb) << '\n'
        << "stacked," << 4 * k.points_per_camera << ',' << fixed(kab) << '\n';
    a.text("conditioning.csv", csv.str());
    summary["kappa"] = {{"camera_a", number_or_sentinel(ka)},
                        {"camera_b", number_or_sentinel(kb)},
                        {"stacked", number_or_sentinel(kab)}};
    summary["stacked_lower"] = kab < ka && kab < kb;
    report << "kappa camera A " << fixed(ka) << "\nkappa camera B " << fixed(kb)
           << "\nkappa stacked  " << fixed(kab) << '\n';
  } else if (an.type == "optimizer") {
    const auto& s = an.optimizer;
    Objective f;
    double gd_gamma = 0.0, hb_gamma = 0.0, hb_beta = 0.0;
    if (s.objective == "quadratic") {
      Eigen::VectorXd curv = Eigen::Map<const Eigen::VectorXd>(
          s.curvatures.data(), static_cast<Eigen::Index>(s.curvatures.size()));
      f = objectives::quadratic(curv);
      const double L = curv.maxCoeff();
      const double mu = curv.minCoeff();
      const double kappa = L / mu;
      gd_gamma = 2.0 / (L + mu);
      hb_gamma = 4.0 / std::pow(std::sqrt(L) + std::sqrt(mu), 2);
      hb_beta = std::pow((std::sqrt(kappa) - 1.0) / (std::sqrt(kappa) + 1.0), 2);
    } else if (s.objective == "double_well") {
      f = objectives::tilted_double_well(s.tilt);
    } else {
      f = objectives::rosenbrock();
    }
    if (s.gamma) gd_gamma = hb_gamma = *s.gamma;
    if (s.beta) hb_beta = *s.beta;
    const Eigen::VectorXd x0 = Eigen::Map<const Eigen::VectorXd>(
        s.start.data(), static_cast<Eigen::Index>(s.start.size()));
    auto run_one = [&](const std::string& name, double gamma, double beta) {
      OptimizerConfig cfg;
      cfg.gamma = gamma;
      cfg.beta = beta;
      cfg.max_iters = s.max_iters;
      cfg.grad_tol = s.grad_tol;
      json j = {{"gamma", gamma}, {"beta", beta}};
      try {
        const OptimizerTrace tr = name == "gd" ? gradient_descent(f, x0, cfg)
                                               : heavy_ball(f, x0, cfg);
        std::ostringstream csv;
        csv << "# config_sha256 " << c.hash << '\n';
        write_trace_csv(csv, tr);
        a.text(name + "_trace.csv", csv.str());
        j["iterations"] = tr.iterations();
        j["converged"] = tr.converged;
        j["final_value"] = tr.last().value;
        j["final_theta"] = std::vector<double>(tr.last().theta.data(),
                                               tr.last().theta.data() + tr.last().theta.size());
        report << name << ": gamma " << fixed(gamma) << ", beta " << fixed(beta)
               << ", " << tr.iterations() << " iterations, converged "
               << (tr.converged ? "yes" : "no") << ", f " << fixed(tr.last().value) << '\n';
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kDiverged) throw;
        j["diverged"] = true;
        report << name << ": diverged (" << e.what() << ")\n";
      }
      return j;
    };
    summary["gradient_descent"] = run_one("gd", gd_gamma, 0.0);
    summary["heavy_ball"] = run_one("hb", hb_gamma, hb_beta);
  } else {
    summary["calibration"] = run_flash_calibration(c, an.calibration, a, report);
  }
  return finish(a, summary, report.str());
}

std::string run_calibrate(const ExperimentConfig& c, const RunOptions& o) {
  ensure_dir(o.out_dir);
  Artifacts a(o.out_dir, c.hash);
  json summary = {{"command", "calibrate"}, {"config_sha256", c.hash}, {"seed", c.seed}};
  std::ostringstream report;
  if (o.inputs.empty()) {
    summary["calibration"] = run_flash_calibration(c, c.calibration, a, report);
    return finish(a, summary, report.str());
  }
  std::vector<Frame> frames;
  for (const auto& path : o.inputs) frames.push_back(read_image(path));
  CalibrationOptions co;
  if (c.timing) {
    co.exposure = c.timing->exposure();
    co.sweep = c.timing->sweep();
    if (c.calibration.use_fps) co.fps = c.timing->fps();
  }
  const LineRateCalibration r = calibrate_line_rate(frames, c.calibration.flash_hz, co);
  const json j = calibration_json(r);
  a.text("calibration.json", j.dump(2) + "\n");
  summary["calibration"] = j;
  report << "frames " << frames.size() << "\nflash " << fixed(c.calibration.flash_hz)
         << " Hz\n" << calibration_text(r);
  return finish(a, summary, report.str());
}

RunResult run_command(Command command, const std::string& config,
                      bool config_is_text, const ConfigOverrides& overrides,
                      const RunOptions& options) {
  RunResult result;
  try {
    const ExperimentConfig c = config_is_text
                                   ? parse_config(config, ".", overrides)
                                   : load_config(config, overrides);
    switch (command) {
      case Command::kSimulate:
        result.summary = run_simulate(c, options);
        break;
      case Command::kRectify:
        result.summary = run_rectify(c, options);
        break;
      case Command::kAnalyze:
        result.summary = run_analyze(c, options);
        break;
      case Command::kCalibrate:
        result.summary = run_calibrate(c, options);
        break;
    }
  } catch (const ConfigError& e) {
    result.exit_code = 2;
    result.message = std::string("invalid configuration: ") + e.what();
  } catch (const Error& e) {
    result.exit_code = 1;
    result.message = std::string(to_string(e.code())) + ": " + e.what();
  } catch (const std::exception& e) {
    result.exit_code = 1;
    result.message = std::string("error: ") + e.what();
  }
  if (result.exit_code != 0) logger()->debug("{}", result.message);
  return result;
}

}  // namespace rollsim
