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

#include "rollsim/image_io.hpp"

#include <openssl/evp.h>
#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <memory>
#include <sstream>

#include "rollsim/error.hpp"

namespace rollsim {

namespace {

[[noreturn]] void io_error(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::kIo, path + ": " + what);
}

std::string extension(const std::string& path) {
  const auto dot = path.find_last_of('.');
  if (dot == std::string::npos) return {};
  std::string ext = path.substr(dot + 1);
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return ext;
}

unsigned quantize(double v, unsigned maxval) {
  if (!std::isfinite(v)) v = 0.0;
  v = std::clamp(v, 0.0, 1.0);
  return static_cast<unsigned>(std::floor(v * maxval + 0.5));
}

double pixel_or_zero(const Frame& f, int x, int y) {
  return f.is_valid(x, y) ? f.at(x, y) : 0.0;
}

void check_frame(const Frame& frame, const std::string& path) {
  if (frame.width <= 0 || frame.height <= 0 ||
      frame.pixels.size() != static_cast<std::size_t>(frame.width) * frame.height) {
    io_error(path, "cannot write an empty or malformed frame");
  }
}

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f) std::fclose(f);
  }
};
using File = std::unique_ptr<std::FILE, FileCloser>;

void png_error_fn(png_structp png, png_const_charp message) {
  auto* text = static_cast<std::string*>(png_get_error_ptr(png));
  if (text) *text = message;
  png_longjmp(png, 1);
}

void png_warning_fn(png_structp, png_const_charp) {}

std::string format_double(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

}  // namespace

void write_png(const std::string& path, const Frame& frame, int bit_depth,
               const TextChunks& text) {
  check_frame(frame, path);
  if (bit_depth != 8 && bit_depth != 16) {
    throw Error(ErrorCode::kInvalidArgument, "PNG bit depth must be 8 or 16");
  }
  File fp(std::fopen(path.c_str(), "wb"));
  if (!fp) io_error(path, "cannot open for writing");

  std::string message;
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, &message,
                                            png_error_fn, png_warning_fn);
  if (!png) io_error(path, "png_create_write_struct failed");
  png_infop info = png_create_info_struct(png);
  const unsigned maxval = bit_depth == 8 ? 255u : 65535u;
  const std::size_t stride =
      static_cast<std::size_t>(frame.width) * (bit_depth / 8);
  std::vector<png_byte> row(stride);
  std::vector<std::string> keys;
  std::vector<std::string> values;
  std::vector<png_text> chunks;

  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    io_error(path, "PNG encode failed: " + message);
  }
  png_init_io(png, fp.get());
  png_set_compression_level(png, 9);
  png_set_IHDR(png, info, frame.width, frame.height, bit_depth,
               PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  for (const auto& [k, v] : text) {
    keys.push_back(k);
    values.push_back(v);
  }
  for (std::size_t i = 0; i < keys.size(); ++i) {
    png_text t{};
    t.compression = PNG_TEXT_COMPRESSION_NONE;
    t.key = keys[i].data();
    t.text = values[i].data();
    t.text_length = values[i].size();
    chunks.push_back(t);
  }
  if (!chunks.empty()) {
    png_set_text(png, info, chunks.data(), static_cast<int>(chunks.size()));
  }
  png_write_info(png, info);
  for (int y = 0; y < frame.height; ++y) {
    for (int x = 0; x < frame.width; ++x) {
      const unsigned q = quantize(pixel_or_zero(frame, x, y), maxval);
      if (bit_depth == 8) {
        row[x] = static_cast<png_byte>(q);
      } else {
        row[2 * x] = static_cast<png_byte>(q >> 8);
        row[2 * x + 1] = static_cast<png_byte>(q & 0xFF);
      }
    }
    png_write_row(png, row.data());
  }
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  if (std::fflush(fp.get()) != 0) io_error(path, "write failed");
}

namespace {

struct PngDecoded {
  Frame frame;
  TextChunks text;
};

PngDecoded decode_png(const std::string& path) {
  File fp(std::fopen(path.c_str(), "rb"));
  if (!fp) io_error(path, "cannot open for reading");
  png_byte sig[8];
  if (std::fread(sig, 1, 8, fp.get()) != 8 || png_sig_cmp(sig, 0, 8) != 0) {
    io_error(path, "not a PNG file");
  }
  std::string message;
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, &message,
                                           png_error_fn, png_warning_fn);
  if (!png) io_error(path, "png_create_read_struct failed");
  png_infop info = png_create_info_struct(png);
  PngDecoded out;
  std::vector<png_byte> row;
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    io_error(path, "PNG decode failed: " + message);
  }
  png_init_io(png, fp.get());
  png_set_sig_bytes(png, 8);
  png_read_info(png, info);
  const int color = png_get_color_type(png, info);
  int depth = png_get_bit_depth(png, info);
  if (color == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
  if (color == PNG_COLOR_TYPE_GRAY && depth < 8) {
    png_set_expand_gray_1_2_4_to_8(png);
  }
  if (color & PNG_COLOR_MASK_ALPHA) png_set_strip_alpha(png);
  if (color == PNG_COLOR_TYPE_RGB || color == PNG_COLOR_TYPE_RGB_ALPHA ||
      color == PNG_COLOR_TYPE_PALETTE) {
    png_set_rgb_to_gray_fixed(png, 1, -1, -1);
  }
  png_read_update_info(png, info);
  depth = png_get_bit_depth(png, info);
  const int width = static_cast<int>(png_get_image_width(png, info));
  const int height = static_cast<int>(png_get_image_height(png, info));
  const int channels = png_get_channels(png, info);
  row.resize(png_get_rowbytes(png, info));
  out.frame = Frame(width, height);
  const double maxval = depth == 16 ? 65535.0 : 255.0;
  for (int y = 0; y < height; ++y) {
    png_read_row(png, row.data(), nullptr);
    for (int x = 0; x < width; ++x) {
      const std::size_t i = static_cast<std::size_t>(x) * channels;
      const unsigned q = depth == 16 ? (unsigned(row[2 * i]) << 8) | row[2 * i + 1]
                                     : row[i];
      out.frame.at(x, y) = q / maxval;
    }
  }
  png_read_end(png, info);
  png_textp text = nullptr;
  int count = 0;
  png_get_text(png, info, &text, &count);
  for (int i = 0; i < count; ++i) {
    out.text.emplace_back(text[i].key,
                          std::string(text[i].text, text[i].text_length));
  }
  png_destroy_read_struct(&png, &info, nullptr);
  return out;
}

}  // namespace

Frame read_png(const std::string& path) { return decode_png(path).frame; }

TextChunks read_png_text(const std::string& path) {
  return decode_png(path).text;
}

void write_pgm(const std::string& path, const Frame& frame, int maxval,
               const std::string& comment) {
  check_frame(frame, path);
  if (maxval < 1 || maxval > 65535) {
    throw Error(ErrorCode::kInvalidArgument, "PGM maxval must be in [1, 65535]");
  }
  std::ostringstream os;
  os << "P2\n";
  if (!comment.empty()) os << "# " << comment << '\n';
  os << frame.width << ' ' << frame.height << '\n' << maxval << '\n';
  for (int y = 0; y < frame.height; ++y) {
    for (int x = 0; x < frame.width; ++x) {
      if (x) os << ' ';
      os << quantize(pixel_or_zero(frame, x, y), static_cast<unsigned>(maxval));
    }
    os << '\n';
  }
  write_text_file(path, os.str());
}

Frame read_pgm(const std::string& path) {
  const std::string data = read_text_file(path);
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < data.size()) {
      if (std::isspace(static_cast<unsigned char>(data[pos]))) {
        ++pos;
      } else if (data[pos] == '#') {
        while (pos < data.size() && data[pos] != '\n') ++pos;
      } else {
        break;
      }
    }
  };
  auto number = [&]() -> long {
    skip();
    std::size_t start = pos;
    while (pos < data.size() && std::isdigit(static_cast<unsigned char>(data[pos]))) {
      ++pos;
    }
    if (start == pos) io_error(path, "malformed PGM header or data");
    return std::stol(data.substr(start, pos - start));
  };
  if (data.size() < 2 || data[0] != 'P' || (data[1] != '2' && data[1] != '5')) {
    io_error(path, "not a PGM file");
  }
  const bool binary = data[1] == '5';
  pos = 2;
  const long w = number();
  const long h = number();
  const long maxval = number();
  if (w <= 0 || h <= 0 || maxval <= 0 || maxval > 65535) {
    io_error(path, "invalid PGM dimensions");
  }
  Frame f(static_cast<int>(w), static_cast<int>(h));
  if (binary) {
    ++pos;
    const int bytes = maxval > 255 ? 2 : 1;
    if (data.size() < pos + f.size() * bytes) io_error(path, "truncated PGM");
    for (std::size_t i = 0; i < f.size(); ++i) {
      unsigned q = static_cast<unsigned char>(data[pos + i * bytes]);
      if (bytes == 2) {
        q = (q << 8) | static_cast<unsigned char>(data[pos + i * bytes + 1]);
      }
      f.pixels[i] = q / static_cast<double>(maxval);
    }
  } else {
    for (std::size_t i = 0; i < f.size(); ++i) {
      const long q = number();
      if (q > maxval) io_error(path, "PGM sample exceeds maxval");
      f.pixels[i] = q / static_cast<double>(maxval);
    }
  }
  return f;
}

void write_image(const std::string& path, const Frame& frame, int bit_depth,
                 const std::string& config_hash) {
  const std::string ext = extension(path);
  if (ext == "png") {
    TextChunks text;
    if (!config_hash.empty()) text.emplace_back("config_sha256", config_hash);
    write_png(path, frame, bit_depth, text);
  } else if (ext == "pgm") {
    write_pgm(path, frame, bit_depth == 16 ? 65535 : 255,
              config_hash.empty() ? std::string()
                                  : "config_sha256 " + config_hash);
  } else {
    io_error(path, "unsupported image extension (use .png or .pgm)");
  }
}

Frame read_image(const std::string& path) {
  const std::string ext = extension(path);
  if (ext == "png") return read_png(path);
  if (ext == "pgm") return read_pgm(path);
  io_error(path, "unsupported image extension (use .png or .pgm)");
}

void write_sidecar_csv(const std::string& path, const Frame& frame,
                       const std::string& config_hash) {
  if (frame.row_times.size() != static_cast<std::size_t>(frame.height) ||
      frame.row_poses.size() != static_cast<std::size_t>(frame.height)) {
    throw Error(ErrorCode::kInvalidArgument,
                "frame has no per-row metadata to write");
  }
  std::ostringstream os;
  if (!config_hash.empty()) os << "# config_sha256 " << config_hash << '\n';
  os << "row,t_start,r00,r01,r02,r10,r11,r12,r20,r21,r22,t0,t1,t2\n";
  for (int y = 0; y < frame.height; ++y) {
    os << y << ',' << format_double(frame.row_times[y]);
    for (double v : frame.row_poses[y].to_array()) os << ',' << format_double(v);
    os << '\n';
  }
  write_text_file(path, os.str());
}

namespace {

std::vector<std::vector<double>> read_numeric_csv(const std::string& path,
                                                  std::size_t columns) {
  std::ifstream in(path);
  if (!in) io_error(path, "cannot open for reading");
  std::vector<std::vector<double>> rows;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (std::isalpha(static_cast<unsigned char>(line[0]))) continue;  // header
    std::vector<double> values;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        std::size_t used = 0;
        values.push_back(std::stod(cell, &used));
        while (used < cell.size() &&
               std::isspace(static_cast<unsigned char>(cell[used]))) {
          ++used;
        }
        if (used != cell.size()) throw std::invalid_argument(cell);
      } catch (const std::exception&) {
        io_error(path, "line " + std::to_string(line_no) +
                           ": not a number: '" + cell + "'");
      }
    }
    if (values.size() != columns) {
      io_error(path, "line " + std::to_string(line_no) + ": expected " +
                         std::to_string(columns) + " columns, found " +
                         std::to_string(values.size()));
    }
    rows.push_back(std::move(values));
  }
  return rows;
}

Pose pose_from(const std::vector<double>& v, std::size_t first,
               const std::string& path, std::size_t row) {
  std::array<double, 12> a;
  std::copy(v.begin() + first, v.begin() + first + 12, a.begin());
  try {
    return Pose::from_array(a);
  } catch (const Error& e) {
    io_error(path, "row " + std::to_string(row) + ": " + e.what());
  }
}

}  // namespace

RowMetadata read_sidecar_csv(const std::string& path) {
  const auto rows = read_numeric_csv(path, 14);
  RowMetadata meta;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i][0] != static_cast<double>(i)) {
      io_error(path, "rows must be listed in order starting at 0");
    }
    meta.times.push_back(rows[i][1]);
    meta.poses.push_back(pose_from(rows[i], 2, path, i));
  }
  return meta;
}

std::vector<motion::Keyframe> read_keyframes_csv(const std::string& path) {
  const auto rows = read_numeric_csv(path, 13);
  std::vector<motion::Keyframe> keys;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    keys.push_back({rows[i][0], pose_from(rows[i], 1, path, i)});
  }
  return keys;
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(),
                 nullptr) != 1) {
    throw Error(ErrorCode::kInternal, "SHA-256 failed");
  }
  std::ostringstream os;
  os << std::hex << std::setfill('0');
  for (unsigned int i = 0; i < length; ++i) os << std::setw(2) << int(digest[i]);
  return os.str();
}

std::string sha256_file(const std::string& path) {
  return sha256_hex(read_text_file(path));
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) io_error(path, "cannot open for reading");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) io_error(path, "cannot open for writing");
  out << content;
  if (!out) io_error(path, "write failed");
}

}  // namespace rollsim
