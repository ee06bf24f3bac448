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

#ifndef ROLLSIM_ERROR_HPP
#define ROLLSIM_ERROR_HPP

#include <stdexcept>
#include <string>

namespace rollsim {

// Every failure the library reports carries one of these codes. The numeric
// values are part of the C ABI (see rollsim.h) and must not be reordered.
enum class ErrorCode : int {
  kInvalidArgument = 1,
  kPointBehindCamera = 2,
  kNonPositiveDepth = 3,
  kInvalidPose = 4,
  kInvalidDistortion = 5,
  kOutsideWorkingRadius = 6,
  kNoConvergence = 7,
  kDegenerateFit = 8,
  kRowOutOfRange = 9,
  kInfeasibleTiming = 10,
  kOverconstrained = 11,
  kUnderconstrained = 12,
  kInvalidTiming = 13,
  kOutsideValidityWindow = 14,
  kNotImagedThisFrame = 15,
  kMultipleSolutions = 16,
  kAnchorOutOfRange = 17,
  kRankDeficient = 18,
  kDiverged = 19,
  kNoDominantBand = 20,
  kConfig = 21,
  kIo = 22,
  kInternal = 99,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Configuration problems name the offending field, e.g. "timing.tr_s".
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& message)
      : Error(ErrorCode::kConfig, field + ": " + message),
        field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace rollsim

#endif  // ROLLSIM_ERROR_HPP
