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

#include <cmath>
#include <numbers>
#include <numeric>

#include "rollsim/calibration.hpp"
#include "rollsim/error.hpp"
#include "rollsim/simulator.hpp"

using namespace rollsim;

namespace {

ShutterTiming timing_for(int H, double tr, double tf, double te,
                         SweepDirection sweep = SweepDirection::kTopToBottom) {
  PartialTiming p;
  p.exposure = te;
  p.line_delay = tr;
  p.frame_delay = tf;
  p.height = H;
  p.sweep = sweep;
  return complete_timing(p);
}

double circular_error(double a, double b, double period) {
  double d = std::fmod(a - b, period);
  if (d > 0.5 * period) d -= period;
  if (d < -0.5 * period) d += period;
  return std::abs(d);
}

}  // namespace

TEST_CASE("band estimate of a pure cosine") {
  const double f = 0.0371, phase = 0.8;
  std::vector<double> s(400);
  for (int y = 0; y < 400; ++y) s[y] = 0.5 + 0.3 * std::cos(2 * std::numbers::pi * f * y + phase);
  const BandEstimate b = estimate_band(s);
  CHECK(b.frequency == doctest::Approx(f).epsilon(1e-8));
  CHECK(circular_error(b.phase, phase, 2 * std::numbers::pi) < 1e-6);
  CHECK(b.amplitude == doctest::Approx(0.3).epsilon(1e-6));
  CHECK(b.offset == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(b.significance_db >= kBandSignificanceDb);
  CHECK(b.rms_residual < 1e-8);

  const BandEstimate at = fit_band_at(s, f);
  CHECK(at.amplitude == doctest::Approx(0.3).epsilon(1e-9));
}

TEST_CASE("row means") {
  Frame f(3, 2);
  f.pixels = {0.1, 0.2, 0.3, 0.5, 0.5, 0.8};
  const auto m = row_means(f);
  CHECK(m[0] == doctest::Approx(0.2));
  CHECK(m[1] == doctest::Approx(0.6));
  f.valid = {1, 1, 1, 0, 1, 1};
  CHECK(row_means(f)[1] == doctest::Approx(0.65));
}

TEST_CASE("flat illumination has no dominant band") {
  const ShutterTiming t = timing_for(240, 2e-5, 1e-3, 1e-4);
  FlashingLight light;
  light.amplitude = 0.0;
  const auto frames = synthesize_flash_frames(t, 8, light, 0.0, 0, 2);
  try {
    calibrate_line_rate(frames, 200.0);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNoDominantBand);
  }
  CHECK_THROWS_AS(estimate_band(std::vector<double>(100, 0.3)), Error);
}

TEST_CASE("line delay is recovered from 200 Hz banding") {
  const ShutterTiming t = timing_for(480, 2e-5, 1e-3, 1e-4);
  FlashingLight light;
  light.frequency = 200.0;
  const auto frames = synthesize_flash_frames(t, 16, light, 0.0, 0, 2);
  CalibrationOptions o;
  o.exposure = t.exposure();
  const LineRateCalibration c = calibrate_line_rate(frames, 200.0, o);
  CHECK(std::abs(c.line_delay - 2e-5) / 2e-5 < 0.01);
  CHECK(c.rows_per_second == doctest::Approx(1.0 / c.line_delay));
  CHECK(c.flash_period == doctest::Approx(1.0 / 200.0));
  CHECK(c.band_frequency == doctest::Approx(200.0 * 2e-5).epsilon(0.01));
  CHECK(c.confidence > 0.99);
  REQUIRE(c.frame_delay.has_value());
  CHECK(c.frame_delay_ambiguous);
  CHECK(std::abs(*c.frame_delay - 1e-3) / 1e-3 < 0.05);
  CHECK(*c.frame_delay >= 0.0);
  CHECK(*c.frame_delay < c.flash_period);
}

TEST_CASE("frame rate resolves the flash period ambiguity") {
  // t_f exceeds the flash period, so only fps pins down the representative.
  const ShutterTiming t = timing_for(300, 3e-5, 7e-3, 2e-4);
  FlashingLight light;
  light.frequency = 250.0;
  light.phase = 1.1;
  const auto frames = synthesize_flash_frames(t, 8, light, 0.0, 2, 3);
  CalibrationOptions o;
  o.exposure = t.exposure();
  const LineRateCalibration mod = calibrate_line_rate(frames, 250.0, o);
  REQUIRE(mod.frame_delay.has_value());
  CHECK(mod.frame_delay_ambiguous);
  CHECK(circular_error(*mod.frame_delay, 7e-3, 1.0 / 250.0) < 0.05 * 7e-3);
  o.fps = t.fps();
  const LineRateCalibration full = calibrate_line_rate(frames, 250.0, o);
  CHECK_FALSE(full.frame_delay_ambiguous);
  CHECK(std::abs(*full.frame_delay - 7e-3) / 7e-3 < 0.05);
}

TEST_CASE("single frame gives no frame delay") {
  const ShutterTiming t = timing_for(240, 4e-5, 0.0, 0.0);
  const auto frames = synthesize_flash_frames(t, 4, FlashingLight{}, 0.0, 0, 1);
  const LineRateCalibration c = calibrate_line_rate(frames, 200.0);
  CHECK_FALSE(c.frame_delay.has_value());
  CHECK(std::abs(c.line_delay - 4e-5) / 4e-5 < 0.01);
  CHECK_THROWS_AS(calibrate_line_rate({}, 200.0), Error);
  CHECK_THROWS_AS(calibrate_line_rate(frames, -1.0), Error);
}

TEST_CASE("square-wave flashes and bottom-up readout") {
  const ShutterTiming t = timing_for(400, 2.5e-5, 1.5e-3, 1e-4, SweepDirection::kBottomToTop);
  FlashingLight light;
  light.frequency = 500.0;
  light.waveform = FlashingLight::Waveform::kSquare;
  FlashCaptureOptions fo;
  fo.exposure_samples = 16;
  const auto frames = synthesize_flash_frames(t, 8, light, 0.0, 0, 2, fo);
  CalibrationOptions o;
  o.exposure = t.exposure();
  o.sweep = SweepDirection::kBottomToTop;
  const LineRateCalibration c = calibrate_line_rate(frames, 500.0, o);
  CHECK(std::abs(c.line_delay - 2.5e-5) / 2.5e-5 < 0.01);
  REQUIRE(c.frame_delay.has_value());
  CHECK(circular_error(*c.frame_delay, 1.5e-3, 1.0 / 500.0) < 0.05 * 1.5e-3);
}

TEST_CASE("taller frames give steadier band estimates under noise") {
  std::vector<double> variances;
  for (int H : {120, 240, 480}) {
    const ShutterTiming t = timing_for(H, 2e-5, 0.0, 0.0);
    FlashingLight light;
    light.frequency = 400.0;
    FlashCaptureOptions fo;
    fo.exposure_samples = 1;
    fo.noise_sigma = 0.25;
    std::vector<double> est;
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
      fo.seed = seed;
      const auto frames = synthesize_flash_frames(t, 4, light, 0.0, 0, 1, fo);
      est.push_back(estimate_band(row_means(frames[0])).frequency);
    }
    const double mean = std::accumulate(est.begin(), est.end(), 0.0) / est.size();
    double var = 0.0;
    for (double e : est) var += (e - mean) * (e - mean);
    variances.push_back(var / (est.size() - 1));
  }
  CHECK(variances[1] < variances[0]);
  CHECK(variances[2] < variances[1]);
}
