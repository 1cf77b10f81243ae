// include/dctface/image.hpp

// Copyright 2026  The dctface Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef DCTFACE_IMAGE_HPP_
#define DCTFACE_IMAGE_HPP_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dctface/error.hpp"

namespace dctface {

/// Integer pixel grid as stored in a PNM file: 1 (gray) or 3 (RGB)
/// interleaved channels, row-major, every sample in [0, maxval].
class RasterImage {
 public:
  RasterImage() = default;
  /// Throws ValidationError unless the sample count and ranges are
  /// consistent with the header fields.
  RasterImage(int width, int height, int channels, int maxval,
              std::vector<std::uint16_t> samples);

  int width() const { return width_; }
  int height() const { return height_; }
  int channels() const { return channels_; }
  int maxval() const { return maxval_; }
  const std::vector<std::uint16_t> &samples() const { return samples_; }

  std::uint16_t at(int x, int y, int c = 0) const {
    return samples_[(static_cast<std::size_t>(y) * width_ + x) * channels_ + c];
  }

  bool operator==(const RasterImage &) const = default;

 private:
  int width_ = 0;
  int height_ = 0;
  int channels_ = 1;
  int maxval_ = 255;
  std::vector<std::uint16_t> samples_;
};

/// Real-valued single-channel plane with values in [0, 1].
struct GrayPlane {
  int width = 0;
  int height = 0;
  std::vector<double> values;

  GrayPlane() = default;
  GrayPlane(int w, int h) : width(w), height(h), values(std::size_t(w) * h) {}
  GrayPlane(int w, int h, std::vector<double> v);

  double &at(int x, int y) { return values[std::size_t(y) * width + x]; }
  double at(int x, int y) const { return values[std::size_t(y) * width + x]; }
};

enum class ColorChannel { kRed = 0, kGreen = 1, kBlue = 2 };

/// Reasons a PNM byte stream is rejected.
enum class PnmErrorKind {
  kMalformedHeader,
  kUnsupportedMagic,
  kZeroDimension,
  kMaxvalOutOfRange,
  kTruncatedBody,
  kSampleOutOfRange,
};

const char *ToString(PnmErrorKind kind);

class PnmError : public DataError {
 public:
  PnmError(PnmErrorKind kind, const std::string &detail);
  PnmErrorKind kind() const { return kind_; }

 private:
  PnmErrorKind kind_;
};

/// Parses binary P5 (gray) or P6 (RGB). Header comments are skipped;
/// maxval > 255 means two-byte big-endian samples. Bytes after the
/// body are ignored.
RasterImage ReadPnm(std::span<const std::uint8_t> bytes);
RasterImage ReadPnm(std::string_view bytes);
RasterImage ReadPnmFile(const std::filesystem::path &path);

/// Serializes as P5 or P6 with a minimal "P5\nW H\nMAXVAL\n" header.
std::string WritePnm(const RasterImage &img);
void WritePnmFile(const RasterImage &img, const std::filesystem::path &path);

/// Y = 0.3R + 0.59G + 0.11B, rounded half-up and clamped to maxval.
RasterImage ToLuminance(const RasterImage &img);

/// Single-channel image holding one plane of an RGB image.
RasterImage SelectChannel(const RasterImage &img, ColorChannel channel);

/// samples / maxval; requires a single-channel image.
GrayPlane Normalize(const RasterImage &img);

/// Bilinear resampling with pixel-centre alignment: the source coordinate
/// of output pixel d is (d + 0.5) * in / out - 0.5, clamped to the grid.
GrayPlane ResizeBilinear(const GrayPlane &plane, int out_width, int out_height);

}  // namespace dctface

#endif  // DCTFACE_IMAGE_HPP_
