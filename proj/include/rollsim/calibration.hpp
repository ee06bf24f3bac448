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

#ifndef ROLLSIM_CALIBRATION_HPP
#define ROLLSIM_CALIBRATION_HPP

#include <optional>
#include <vector>

#include "rollsim/frame.hpp"
#include "rollsim/shutter.hpp"

namespace rollsim {

// Peak must exceed the median spectral power by this many decibels.
inline constexpr double kBandSignificanceDb = 6.0;

struct BandEstimate {
  double frequency = 0.0;  // cycles per row
  double phase = 0.0;      // signal ~ offset + amplitude cos(2 pi f y + phase)
  double amplitude = 0.0;
  double offset = 0.0;
  double significance_db = 0.0;  // peak over median spectral floor
  double rms_residual = 0.0;     // of the sinusoid fit
};

// Per-row means of a frame (valid pixels only; NaN for empty rows).
std::vector<double> row_means(const Frame& frame);

// Dominant spatial frequency of a 1-D row signal: Hann-windowed, zero-padded
// spectrum with parabolic peak interpolation, then refined by a least-squares
// sinusoid fit. Frequencies below half a cycle per signal length are not
// considered. Throws kNoDominantBand for a flat or insignificant spectrum.
BandEstimate estimate_band(const std::vector<double>& signal);

// Least-squares amplitude and phase of a sinusoid at a fixed frequency.
BandEstimate fit_band_at(const std::vector<double>& signal, double frequency);

struct LineRateCalibration {
  double rows_per_second = 0.0;  // n_r
  double line_delay = 0.0;       // t_r = 1 / n_r
  // Frame delay, present with two or more frames. Unless fps was given it is
  // only known modulo the flash period and is reported as the smallest
  // non-negative representative.
  std::optional<double> frame_delay;
  bool frame_delay_ambiguous = true;
  double flash_period = 0.0;
  double band_frequency = 0.0;  // cycles per row, averaged over frames
  double significance_db = 0.0;
  double confidence = 0.0;  // in [0, 1]; 1 for a perfect sinusoid fit
};

struct CalibrationOptions {
  double exposure = 0.0;      // t_e, subtracted when recovering t_f
  std::optional<double> fps;  // resolves the flash-period ambiguity
  SweepDirection sweep = SweepDirection::kTopToBottom;
};

// Line rate from banding under a light flashing at `flash_frequency` Hz.
// Frames must be consecutive. Throws kNoDominantBand when any frame shows no
// significant banding and kInvalidArgument for empty input.
LineRateCalibration calibrate_line_rate(const std::vector<Frame>& frames,
                                        double flash_frequency,
                                        const CalibrationOptions& options = {});

}  // namespace rollsim

#endif  // ROLLSIM_CALIBRATION_HPP
