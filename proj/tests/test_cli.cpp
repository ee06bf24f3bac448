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

#include <doctest.h>
#include <json.hpp>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <string>

#include "rollsim/image_io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

fs::path work_dir() {
  const fs::path d = fs::temp_directory_path() / "rollsim_cli_tests";
  fs::create_directories(d);
  return d;
}

std::string config(const std::string& name) {
  return std::string(ROLLSIM_CONFIG_DIR) + "/" + name;
}

Run cli(const std::string& args) {
  const fs::path out = work_dir() / "stdout.txt";
  const fs::path err = work_dir() / "stderr.txt";
  const std::string cmd = std::string(ROLLSIM_CLI_PATH) + " " + args + " >" +
                          out.string() + " 2>" + err.string();
  const int status = std::system(cmd.c_str());
  Run r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = rollsim::read_text_file(out.string());
  r.err = rollsim::read_text_file(err.string());
  return r;
}

fs::path fresh(const std::string& name) {
  const fs::path d = work_dir() / name;
  fs::remove_all(d);
  return d;
}

std::string write_config(const std::string& name, const std::string& text) {
  const fs::path p = work_dir() / name;
  rollsim::write_text_file(p.string(), text);
  return p.string();
}

}  // namespace

TEST_CASE("static simulation gives identical rolling and global outputs") {
  const fs::path d = fresh("static");
  const Run r = cli("simulate --config " + config("static.json") + " --out " + d.string() + " --ground-truth");
  REQUIRE(r.code == 0);
  const json s = json::parse(r.out);
  const json& f0 = s["frames"][0];
  CHECK(f0["rs"] == f0["gs"]);
  CHECK(f0["rs_vs_gs"]["mae"] == 0.0);
  CHECK(f0["rs_vs_gs"]["psnr_db"] == "inf");
  CHECK(fs::exists(d / "frame_0000_rs.csv"));
  CHECK(fs::exists(d / "frame_0000_depth.txt"));
}

TEST_CASE("skew summary matches the closed form") {
  const fs::path d = fresh("skew");
  const Run r = cli("simulate --config " + config("skew.json") + " --out " + d.string());
  REQUIRE(r.code == 0);
  const json s = json::parse(r.out);
  REQUIRE(s["skew"].is_object());
  CHECK(s["skew"]["relative_error"].get<double>() < 0.01);
  CHECK(s["skew"]["closed_form_px_per_row"].get<double>() == doctest::Approx(300.0 * 10.0 * 3e-5 / 5.0));
}

TEST_CASE("every artifact carries the config hash") {
  const fs::path d = fresh("hash");
  const Run r = cli("simulate --config " + config("static.json") + " --out " + d.string());
  REQUIRE(r.code == 0);
  const json s = json::parse(r.out);
  const std::string h = s["config_sha256"];
  CHECK(h.size() == 64);
  CHECK(rollsim::read_text_file((d / "report.txt").string()).rfind("config_sha256 " + h, 0) == 0);
  CHECK(rollsim::read_text_file((d / "frame_0000_rs.csv").string()).rfind("# config_sha256 " + h, 0) == 0);
  const auto text = rollsim::read_png_text((d / "frame_0000_rs.png").string());
  REQUIRE(!text.empty());
  CHECK(text[0].second == h);
  for (const auto& [name, digest] : s["files"].items()) {
    CHECK(rollsim::sha256_file((d / name).string()) == digest.get<std::string>());
  }
}

TEST_CASE("seed override changes the hash but not a noise-free render") {
  const Run a = cli("simulate --config " + config("static.json") + " --out " + fresh("seed_a").string());
  const Run b = cli("simulate --config " + config("static.json") + " --out " + fresh("seed_b").string() + " --seed 99");
  REQUIRE(a.code == 0);
  REQUIRE(b.code == 0);
  const json ja = json::parse(a.out), jb = json::parse(b.out);
  CHECK(jb["seed"] == 99);
  CHECK(ja["config_sha256"] != jb["config_sha256"]);
}

TEST_CASE("negative line delay is a configuration error") {
  const std::string cfg = write_config("neg_tr.json", R"({
    "image": {"width": 32, "height": 24},
    "intrinsics": {"fx": 40.0},
    "timing": {"te_s": 0.001, "tr_s": -1e-5, "tf_s": "solve", "fps": 30.0},
    "motion": {"type": "static"},
    "scene": {"type": "procedural", "pattern": "sky_sinusoid", "cycles": 4}
  })");
  const Run r = cli("simulate --config " + cfg + " --out " + fresh("neg").string());
  CHECK(r.code == 2);
  CHECK(r.err.find("tr_s") != std::string::npos);
}

TEST_CASE("unknown keys and bad flags exit with 2") {
  const std::string cfg = write_config("unknown.json", R"({"image": {"width": 8, "height": 8}, "colour": 1})");
  const Run r = cli("simulate --config " + cfg);
  CHECK(r.code == 2);
  CHECK(r.err.find("colour") != std::string::npos);
  CHECK(cli("simulate --config " + config("static.json") + " --threads 0").code == 2);
  CHECK(cli("simulate").code == 2);
  CHECK(cli("--config " + config("static.json")).code == 2);
}

TEST_CASE("rectifying a static frame is byte-identical") {
  const fs::path d = fresh("static_rect");
  REQUIRE(cli("simulate --config " + config("static.json") + " --out " + d.string() + " --ground-truth").code == 0);
  const std::string in = (d / "frame_0000_rs.png").string();
  const Run r = cli("rectify --config " + config("static.json") + " --out " + d.string() + " --input " + in +
                    " --sidecar " + (d / "frame_0000_rs.csv").string() + " --ground-truth " +
                    (d / "frame_0000_gs.png").string());
  REQUIRE(r.code == 0);
  const json s = json::parse(r.out);
  CHECK(rollsim::read_text_file((d / "frame_0000_rs_rect.png").string()) == rollsim::read_text_file(in));
  CHECK(s["rectified"]["psnr_db"] == "inf");
}

TEST_CASE("rotation-only rectification beats the raw frame") {
  const fs::path d = fresh("yaw");
  REQUIRE(cli("simulate --config " + config("yaw.json") + " --out " + d.string() + " --ground-truth").code == 0);
  const Run r = cli("rectify --config " + config("yaw.json") + " --out " + d.string() + " --input " +
                    (d / "yaw_0000_rs.png").string() + " --sidecar " + (d / "yaw_0000_rs.csv").string() +
                    " --ground-truth " + (d / "yaw_0000_gs.png").string());
  REQUIRE(r.code == 0);
  const json s = json::parse(r.out);
  CHECK(s["rectified"]["mae"].get<double>() < s["unrectified"]["mae"].get<double>());
}

TEST_CASE("rectify reports missing or mismatched sidecars") {
  const fs::path d = fresh("sidecar");
  REQUIRE(cli("simulate --config " + config("static.json") + " --out " + d.string()).code == 0);
  const std::string missing = (d / "nothing_here.csv").string();
  const Run r = cli("rectify --config " + config("static.json") + " --out " + d.string() + " --input " +
                    (d / "frame_0000_rs.png").string() + " --sidecar " + missing);
  CHECK(r.code == 1);
  CHECK(r.err.find("nothing_here.csv") != std::string::npos);

  const std::string csv = rollsim::read_text_file((d / "frame_0000_rs.csv").string());
  const std::string cut = csv.substr(0, csv.rfind('\n', csv.size() - 2) + 1);
  rollsim::write_text_file((d / "short.csv").string(), cut);
  const Run s = cli("rectify --config " + config("static.json") + " --out " + d.string() + " --input " +
                    (d / "frame_0000_rs.png").string() + " --sidecar " + (d / "short.csv").string());
  CHECK(s.code == 1);
  CHECK(s.err.find("rows") != std::string::npos);
}

TEST_CASE("conditioning analysis") {
  const fs::path d = fresh("cond");
  const Run r = cli("analyze --config " + config("conditioning.json") + " --out " + d.string());
  REQUIRE(r.code == 0);
  const json s = json::parse(r.out);
  CHECK(s["stacked_lower"] == true);
  CHECK(s["seed"] == 5);
  CHECK(fs::exists(d / "conditioning.csv"));
}

TEST_CASE("optimizer analysis writes both traces") {
  const fs::path d = fresh("opt");
  const Run r = cli("analyze --config " + config("optimizer.json") + " --out " + d.string());
  REQUIRE(r.code == 0);
  const json s = json::parse(r.out);
  CHECK(s["heavy_ball"]["iterations"].get<int>() < s["gradient_descent"]["iterations"].get<int>());
  CHECK(fs::exists(d / "gd_trace.csv"));
  CHECK(fs::exists(d / "hb_trace.csv"));

  const Run b = cli("analyze --config " + config("bump.json") + " --out " + fresh("bump").string());
  REQUIRE(b.code == 0);
  const json jb = json::parse(b.out);
  CHECK(jb["gradient_descent"]["final_theta"][0].get<double>() > 0.0);
  CHECK(jb["heavy_ball"]["final_theta"][0].get<double>() < 0.0);
}

TEST_CASE("calibration analysis and calibrate on written frames") {
  const fs::path d = fresh("calib");
  const Run r = cli("analyze --config " + config("calibration.json") + " --out " + d.string());
  REQUIRE(r.code == 0);
  const json s = json::parse(r.out);
  CHECK(s["calibration"]["t_r_relative_error"].get<double>() < 0.01);

  const std::string cfg = write_config("calib_in.json", R"({
    "image": {"width": 64, "height": 480},
    "timing": {"te_s": 0.0005, "tr_s": 2e-05, "tf_s": 0.001, "fps": "solve"},
    "calibration": {"flash_hz": 200.0}
  })");
  const Run c = cli("calibrate --config " + cfg + " --out " + fresh("calib_in").string() + " --input " +
                    (d / "flash_0000_rs.png").string() + " " + (d / "flash_0001_rs.png").string());
  REQUIRE(c.code == 0);
  const json jc = json::parse(c.out);
  CHECK(std::abs(jc["calibration"]["t_r_s"].get<double>() - 2e-5) / 2e-5 < 0.01);
  CHECK(std::abs(jc["calibration"]["t_f_s"].get<double>() - 1e-3) / 1e-3 < 0.05);
}

TEST_CASE("repeated runs are byte-identical") {
  const fs::path a = fresh("rep_a"), b = fresh("rep_b");
  const Run ra = cli("simulate --config " + config("yaw.json") + " --out " + a.string() + " --threads 3");
  const Run rb = cli("simulate --config " + config("yaw.json") + " --out " + b.string() + " --threads 5");
  REQUIRE(ra.code == 0);
  REQUIRE(rb.code == 0);
  CHECK(ra.out == rb.out);
}
