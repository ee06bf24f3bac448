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

#ifndef ROLLSIM_IMAGE_IO_HPP
#define ROLLSIM_IMAGE_IO_HPP

#include <string>
#include <utility>
#include <vector>

#include "rollsim/frame.hpp"
#include "rollsim/motion.hpp"

namespace rollsim {

// Image files. Values are quantized as round(v * maxval) after clamping to
// [0, 1]; invalid pixels are written as 0. Output bytes depend only on the
// inputs (no timestamps). All functions throw kIo on file errors and
// malformed content.

using TextChunks = std::vector<std::pair<std::string, std::string>>;

void write_png(const std::string& path, const Frame& frame, int bit_depth = 8,
               const TextChunks& text = {});
// Reads 8- or 16-bit grayscale (other color types are converted to gray).
Frame read_png(const std::string& path);
// Text chunks of a PNG file, in file order.
TextChunks read_png_text(const std::string& path);

// ASCII PGM (P2). The comment is written on its own "#" line.
void write_pgm(const std::string& path, const Frame& frame, int maxval = 255,
               const std::string& comment = {});
// Reads P2 and P5 files.
Frame read_pgm(const std::string& path);

// Dispatches on the extension (.png or .pgm).
void write_image(const std::string& path, const Frame& frame, int bit_depth,
                 const std::string& config_hash);
Frame read_image(const std::string& path);

// Per-row metadata: header "row,t_start,r00,...,r22,t0,t1,t2", then one line
// per row with the pose as 12 row-major numbers (R then T).
void write_sidecar_csv(const std::string& path, const Frame& frame,
                       const std::string& config_hash = {});
struct RowMetadata {
  std::vector<double> times;
  std::vector<Pose> poses;
};
RowMetadata read_sidecar_csv(const std::string& path);

// Keyframes: "t,r00,...,r22,t0,t1,t2" per line (header optional).
std::vector<motion::Keyframe> read_keyframes_csv(const std::string& path);

std::string sha256_hex(const std::string& bytes);
std::string sha256_file(const std::string& path);
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace rollsim

#endif  // ROLLSIM_IMAGE_IO_HPP
