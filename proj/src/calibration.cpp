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

#include "rollsim/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "rollsim/error.hpp"
#include "rollsim/linsolve.hpp"

namespace rollsim {

namespace {

constexpr int kZeroPadding = 8;
constexpr int kScanPoints = 61;
constexpr int kGoldenIterations = 80;

std::vector<double> finite_samples(const std::vector<double>& signal) {
  std::vector<double> out;
  out.reserve(signal.size());
  for (double v : signal) {
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::kInvalidArgument, "row signal has gaps");
    }
    out.push_back(v);
  }
  return out;
}

struct SineFit {
  double offset;
  double b;  // cosine weight
  double c;  // sine weight
  double residual;
};

SineFit fit_sine(const std::vector<double>& s, double f) {
  const Eigen::Index n = static_cast<Eigen::Index>(s.size());
  Eigen::MatrixXd A(n, 3);
  Eigen::VectorXd B(n);
  for (Eigen::Index y = 0; y < n; ++y) {
    const double a = 2.0 * M_PI * f * static_cast<double>(y);
    A(y, 0) = 1.0;
    A(y, 1) = std::cos(a);
    A(y, 2) = std::sin(a);
    B[y] = s[y];
  }
  const LeastSquaresSolution sol = solve_least_squares(DesignSystem(A, B));
  return {sol.theta[0], sol.theta[1], sol.theta[2], sol.residual_norm};
}

BandEstimate to_estimate(const SineFit& fit, double f, std::size_t n) {
  BandEstimate e;
  e.frequency = f;
  e.offset = fit.offset;
  e.amplitude = std::hypot(fit.b, fit.c);
  e.phase = std::atan2(-fit.c, fit.b);
  e.rms_residual = fit.residual / std::sqrt(static_cast<double>(n));
  return e;
}

double wrap_two_pi(double a) {
  a = std::fmod(a, 2.0 * M_PI);
  return a < 0.0 ? a + 2.0 * M_PI : a;
}

}  // namespace

std::vector<double> row_means(const Frame& frame) {
  std::vector<double> means(frame.height,
                            std::numeric_limits<double>::quiet_NaN());
  for (int y = 0; y < frame.height; ++y) {
    double sum = 0.0;
    int count = 0;
    for (int x = 0; x < frame.width; ++x) {
      if (!frame.is_valid(x, y)) continue;
      sum += frame.at(x, y);
      ++count;
    }
    if (count > 0) means[y] = sum / count;
  }
  return means;
}

BandEstimate fit_band_at(const std::vector<double>& signal, double frequency) {
  const std::vector<double> s = finite_samples(signal);
  if (s.size() < 4) {
    throw Error(ErrorCode::kInvalidArgument, "row signal is too short");
  }
  return to_estimate(fit_sine(s, frequency), frequency, s.size());
}

BandEstimate estimate_band(const std::vector<double>& signal) {
  const std::vector<double> s = finite_samples(signal);
  const std::size_t n = s.size();
  if (n < 8) {
    throw Error(ErrorCode::kInvalidArgument, "row signal is too short");
  }
  const double mean = std::accumulate(s.begin(), s.end(), 0.0) / n;
  double spread = 0.0;
  for (double v : s) spread = std::max(spread, std::abs(v - mean));
  if (spread <= 1e-12 * std::max(1.0, std::abs(mean))) {
    throw Error(ErrorCode::kNoDominantBand, "row signal is flat");
  }

  // Hann-windowed spectrum sampled on a grid kZeroPadding times finer than
  // the natural resolution.
  std::vector<double> windowed(n);
  for (std::size_t y = 0; y < n; ++y) {
    const double w = 0.5 - 0.5 * std::cos(2.0 * M_PI * y / (n - 1));
    windowed[y] = w * (s[y] - mean);
  }
  const double df = 1.0 / (static_cast<double>(kZeroPadding) * n);
  const int k_min = kZeroPadding / 2;  // half a cycle over the signal
  const int k_max = static_cast<int>(0.5 / df);
  if (k_max <= k_min + 2) {
    throw Error(ErrorCode::kInvalidArgument, "row signal is too short");
  }
  std::vector<double> power(k_max - k_min + 1);
  for (int k = k_min; k <= k_max; ++k) {
    const double w = 2.0 * M_PI * k * df;
    double re = 0.0;
    double im = 0.0;
    for (std::size_t y = 0; y < n; ++y) {
      re += windowed[y] * std::cos(w * y);
      im -= windowed[y] * std::sin(w * y);
    }
    power[k - k_min] = re * re + im * im;
  }
  const auto peak_it = std::max_element(power.begin(), power.end());
  const std::size_t peak = peak_it - power.begin();
  std::vector<double> sorted = power;
  std::nth_element(sorted.begin(), sorted.begin() + sorted.size() / 2,
                   sorted.end());
  const double median = sorted[sorted.size() / 2];
  const double significance =
      median > 0.0 ? 10.0 * std::log10(*peak_it / median)
                   : std::numeric_limits<double>::infinity();
  if (!(*peak_it > 0.0) || significance < kBandSignificanceDb) {
    std::ostringstream os;
    os << "spectral peak only " << significance << " dB above the floor";
    throw Error(ErrorCode::kNoDominantBand, os.str());
  }

  double offset = 0.0;
  if (peak > 0 && peak + 1 < power.size()) {
    const double a = std::log(std::max(power[peak - 1], 1e-300));
    const double b = std::log(power[peak]);
    const double c = std::log(std::max(power[peak + 1], 1e-300));
    const double denom = a - 2.0 * b + c;
    if (denom < 0.0) offset = std::clamp(0.5 * (a - c) / denom, -0.5, 0.5);
  }
  const double f0 = (k_min + peak + offset) * df;

  // Refine on the least-squares residual around the spectral estimate.
  const double lo = std::max(0.5 * k_min * df, f0 - 1.5 / n);
  const double hi = std::min(0.5, f0 + 1.5 / n);
  const double step = (hi - lo) / (kScanPoints - 1);
  int best = 0;
  double best_residual = std::numeric_limits<double>::infinity();
  for (int i = 0; i < kScanPoints; ++i) {
    const double r = fit_sine(s, lo + i * step).residual;
    if (r < best_residual) {
      best_residual = r;
      best = i;
    }
  }
  double a = lo + std::max(best - 1, 0) * step;
  double b = lo + std::min(best + 1, kScanPoints - 1) * step;
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - g * (b - a);
  double x2 = a + g * (b - a);
  double r1 = fit_sine(s, x1).residual;
  double r2 = fit_sine(s, x2).residual;
  for (int it = 0; it < kGoldenIterations && b - a > 1e-15; ++it) {
    if (r1 <= r2) {
      b = x2;
      x2 = x1;
      r2 = r1;
      x1 = b - g * (b - a);
      r1 = fit_sine(s, x1).residual;
    } else {
      a = x1;
      x1 = x2;
      r1 = r2;
      x2 = a + g * (b - a);
      r2 = fit_sine(s, x2).residual;
    }
  }
  const double f = 0.5 * (a + b);
  BandEstimate e = to_estimate(fit_sine(s, f), f, n);
  e.significance_db = significance;
  return e;
}

LineRateCalibration calibrate_line_rate(const std::vector<Frame>& frames,
                                        double flash_frequency,
                                        const CalibrationOptions& options) {
  if (frames.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "no frames to calibrate from");
  }
  if (!(flash_frequency > 0.0) || !std::isfinite(flash_frequency)) {
    throw Error(ErrorCode::kInvalidArgument, "flash frequency must be positive");
  }
  if (!(options.exposure >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "exposure must be non-negative");
  }
  if (options.fps && !(*options.fps > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "fps must be positive");
  }
  const int H = frames.front().height;
  std::vector<std::vector<double>> signals;
  for (const Frame& f : frames) {
    if (f.height != H) {
      throw Error(ErrorCode::kInvalidArgument, "frames differ in height");
    }
    std::vector<double> s = row_means(f);
    if (options.sweep == SweepDirection::kBottomToTop) {
      std::reverse(s.begin(), s.end());
    }
    signals.push_back(std::move(s));
  }

  LineRateCalibration out;
  double f_sum = 0.0;
  double significance = std::numeric_limits<double>::infinity();
  for (const auto& s : signals) {
    const BandEstimate e = estimate_band(s);
    f_sum += e.frequency;
    significance = std::min(significance, e.significance_db);
  }
  const double f_band = f_sum / signals.size();
  out.band_frequency = f_band;
  out.significance_db = significance;
  out.rows_per_second = flash_frequency / f_band;
  out.line_delay = 1.0 / out.rows_per_second;
  out.flash_period = 1.0 / flash_frequency;

  std::vector<BandEstimate> fits;
  double quality = 0.0;
  for (const auto& s : signals) {
    fits.push_back(fit_band_at(s, f_band));
    const BandEstimate& e = fits.back();
    quality += e.amplitude > 0.0
                   ? std::clamp(1.0 - e.rms_residual / e.amplitude, 0.0, 1.0)
                   : 0.0;
  }
  out.confidence = quality / fits.size();

  if (fits.size() >= 2) {
    double sx = 0.0;
    double sy = 0.0;
    for (std::size_t i = 0; i + 1 < fits.size(); ++i) {
      const double d = fits[i + 1].phase - fits[i].phase;
      sx += std::cos(d);
      sy += std::sin(d);
    }
    const double advance = wrap_two_pi(std::atan2(sy, sx));
    const double P = out.flash_period;
    const double period_mod = advance / (2.0 * M_PI * flash_frequency);
    const double raw = period_mod - H * out.line_delay - options.exposure;
    double tf = raw - P * std::floor(raw / P);
    if (tf >= P) tf -= P;
    out.frame_delay_ambiguous = true;
    if (options.fps) {
      const double expected = 1.0 / *options.fps - H * out.line_delay -
                              options.exposure;
      tf += P * std::round((expected - tf) / P);
      out.frame_delay_ambiguous = false;
    }
    out.frame_delay = tf;
  }
  return out;
}

}  // namespace rollsim
