// src/image.cpp

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

#include "dctface/image.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iterator>
#include <sstream>

namespace dctface {

RasterImage::RasterImage(int width, int height, int channels, int maxval,
                         std::vector<std::uint16_t> samples)
    : width_(width), height_(height), channels_(channels), maxval_(maxval),
      samples_(std::move(samples)) {
  if (width < 1 || height < 1)
    throw ValidationError("image dimensions must be >= 1");
  if (channels != 1 && channels != 3)
    throw ValidationError("image must have 1 or 3 channels");
  if (maxval < 1 || maxval > 65535)
    throw ValidationError("maxval must be in [1, 65535]");
  if (samples_.size() != std::size_t(width) * height * channels)
    throw ValidationError("sample count does not match width*height*channels");
  for (auto s : samples_)
    if (s > maxval) throw ValidationError("sample exceeds maxval");
}

GrayPlane::GrayPlane(int w, int h, std::vector<double> v)
    : width(w), height(h), values(std::move(v)) {
  if (w < 1 || h < 1) throw ValidationError("plane dimensions must be >= 1");
  if (values.size() != std::size_t(w) * h)
    throw ValidationError("plane value count does not match width*height");
}

const char *ToString(PnmErrorKind kind) {
  switch (kind) {
    case PnmErrorKind::kMalformedHeader: return "malformed header";
    case PnmErrorKind::kUnsupportedMagic: return "unsupported magic";
    case PnmErrorKind::kZeroDimension: return "zero dimension";
    case PnmErrorKind::kMaxvalOutOfRange: return "maxval out of range";
    case PnmErrorKind::kTruncatedBody: return "truncated body";
    case PnmErrorKind::kSampleOutOfRange: return "sample out of range";
  }
  return "unknown";
}

PnmError::PnmError(PnmErrorKind kind, const std::string &detail)
    : DataError(std::string("PNM: ") + ToString(kind) +
                (detail.empty() ? "" : ": " + detail)),
      kind_(kind) {}

namespace {

class HeaderReader {
 public:
  explicit HeaderReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  // Skips whitespace and '#' comments that run to end of line.
  void SkipSeparators() {
    while (pos_ < bytes_.size()) {
      auto c = bytes_[pos_];
      if (c == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n' &&
               bytes_[pos_] != '\r')
          ++pos_;
      } else if (std::isspace(c)) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  long ReadUnsigned(const char *field) {
    SkipSeparators();
    if (pos_ >= bytes_.size() || !std::isdigit(bytes_[pos_]))
      throw PnmError(PnmErrorKind::kMalformedHeader,
                     std::string("expected ") + field);
    long value = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      value = value * 10 + (bytes_[pos_] - '0');
      if (value > 1'000'000'000)
        throw PnmError(PnmErrorKind::kMalformedHeader,
                       std::string(field) + " too large");
      ++pos_;
    }
    return value;
  }

  std::size_t pos() const { return pos_; }
  void Advance(std::size_t n) { pos_ += n; }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

std::uint16_t ClampRound(double v, int maxval) {
  double r = std::floor(v + 0.5);
  return static_cast<std::uint16_t>(std::clamp(r, 0.0, double(maxval)));
}

}  // namespace

RasterImage ReadPnm(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P')
    throw PnmError(PnmErrorKind::kMalformedHeader, "missing magic");
  int channels = 0;
  switch (bytes[1]) {
    case '5': channels = 1; break;
    case '6': channels = 3; break;
    case '1': case '2': case '3': case '4': case '7':
      throw PnmError(PnmErrorKind::kUnsupportedMagic,
                     std::string("P") + char(bytes[1]));
    default:
      throw PnmError(PnmErrorKind::kMalformedHeader, "bad magic");
  }
  HeaderReader reader(bytes);
  reader.Advance(2);
  if (reader.pos() >= bytes.size() || !std::isspace(bytes[reader.pos()]))
    throw PnmError(PnmErrorKind::kMalformedHeader, "no separator after magic");

  long width = reader.ReadUnsigned("width");
  long height = reader.ReadUnsigned("height");
  long maxval = reader.ReadUnsigned("maxval");
  if (width == 0 || height == 0)
    throw PnmError(PnmErrorKind::kZeroDimension,
                   std::to_string(width) + "x" + std::to_string(height));
  if (maxval < 1 || maxval > 65535)
    throw PnmError(PnmErrorKind::kMaxvalOutOfRange, std::to_string(maxval));

  // Exactly one whitespace byte separates maxval from the raster.
  if (reader.pos() >= bytes.size() || !std::isspace(bytes[reader.pos()]))
    throw PnmError(PnmErrorKind::kMalformedHeader,
                   "no whitespace after maxval");
  reader.Advance(1);

  const std::size_t count = std::size_t(width) * height * channels;
  const std::size_t bytes_per_sample = maxval > 255 ? 2 : 1;
  const std::size_t body = bytes.size() - reader.pos();
  if (body < count * bytes_per_sample)
    throw PnmError(PnmErrorKind::kTruncatedBody,
                   "need " + std::to_string(count * bytes_per_sample) +
                       " bytes, have " + std::to_string(body));

  std::vector<std::uint16_t> samples(count);
  const std::uint8_t *p = bytes.data() + reader.pos();
  for (std::size_t i = 0; i < count; ++i) {
    std::uint16_t s = bytes_per_sample == 2
                          ? std::uint16_t((p[2 * i] << 8) | p[2 * i + 1])
                          : p[i];
    if (s > maxval)
      throw PnmError(PnmErrorKind::kSampleOutOfRange,
                     "sample " + std::to_string(i) + " = " + std::to_string(s));
    samples[i] = s;
  }
  return RasterImage(int(width), int(height), channels, int(maxval),
                     std::move(samples));
}

RasterImage ReadPnm(std::string_view bytes) {
  return ReadPnm(std::span<const std::uint8_t>(
      reinterpret_cast<const std::uint8_t *>(bytes.data()), bytes.size()));
}

RasterImage ReadPnmFile(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open image " + path.string());
  std::string bytes((std::istreambuf_iterator<char>(in)),
                    std::istreambuf_iterator<char>());
  try {
    return ReadPnm(bytes);
  } catch (const PnmError &e) {
    throw PnmError(e.kind(), path.string());
  }
}

std::string WritePnm(const RasterImage &img) {
  std::ostringstream header;
  header << (img.channels() == 1 ? "P5" : "P6") << '\n'
         << img.width() << ' ' << img.height() << '\n'
         << img.maxval() << '\n';
  std::string out = header.str();
  const bool wide = img.maxval() > 255;
  out.reserve(out.size() + img.samples().size() * (wide ? 2 : 1));
  for (auto s : img.samples()) {
    if (wide) out.push_back(char(s >> 8));
    out.push_back(char(s & 0xff));
  }
  return out;
}

void WritePnmFile(const RasterImage &img, const std::filesystem::path &path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write image " + path.string());
  out << WritePnm(img);
}

RasterImage ToLuminance(const RasterImage &img) {
  if (img.channels() != 3)
    throw ValidationError("luminance needs an RGB image");
  const std::size_t n = std::size_t(img.width()) * img.height();
  std::vector<std::uint16_t> out(n);
  const auto &s = img.samples();
  for (std::size_t i = 0; i < n; ++i) {
    double y = 0.3 * s[3 * i] + 0.59 * s[3 * i + 1] + 0.11 * s[3 * i + 2];
    out[i] = ClampRound(y, img.maxval());
  }
  return RasterImage(img.width(), img.height(), 1, img.maxval(),
                     std::move(out));
}

RasterImage SelectChannel(const RasterImage &img, ColorChannel channel) {
  if (img.channels() != 3)
    throw ValidationError("channel selection needs an RGB image");
  const std::size_t n = std::size_t(img.width()) * img.height();
  const auto c = static_cast<std::size_t>(channel);
  std::vector<std::uint16_t> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = img.samples()[3 * i + c];
  return RasterImage(img.width(), img.height(), 1, img.maxval(),
                     std::move(out));
}

GrayPlane Normalize(const RasterImage &img) {
  if (img.channels() != 1)
    throw ValidationError("normalize needs a single-channel image");
  std::vector<double> v(img.samples().size());
  const double scale = img.maxval();
  std::transform(img.samples().begin(), img.samples().end(), v.begin(),
                 [scale](std::uint16_t s) { return s / scale; });
  return GrayPlane(img.width(), img.height(), std::move(v));
}

namespace {

struct Tap {
  int lo, hi;
  double frac;
};

std::vector<Tap> BilinearTaps(int in, int out) {
  std::vector<Tap> taps(out);
  const double scale = double(in) / out;
  for (int d = 0; d < out; ++d) {
    double src = std::clamp((d + 0.5) * scale - 0.5, 0.0, double(in - 1));
    int lo = static_cast<int>(std::floor(src));
    int hi = std::min(lo + 1, in - 1);
    taps[d] = {lo, hi, src - lo};
  }
  return taps;
}

}  // namespace

GrayPlane ResizeBilinear(const GrayPlane &plane, int out_width,
                         int out_height) {
  if (out_width < 1 || out_height < 1)
    throw ValidationError("resize target must be >= 1x1");
  const auto xs = BilinearTaps(plane.width, out_width);
  const auto ys = BilinearTaps(plane.height, out_height);
  GrayPlane out(out_width, out_height);
  for (int y = 0; y < out_height; ++y) {
    const Tap &ty = ys[y];
    for (int x = 0; x < out_width; ++x) {
      const Tap &tx = xs[x];
      double top = plane.at(tx.lo, ty.lo) +
                   tx.frac * (plane.at(tx.hi, ty.lo) - plane.at(tx.lo, ty.lo));
      double bottom =
          plane.at(tx.lo, ty.hi) +
          tx.frac * (plane.at(tx.hi, ty.hi) - plane.at(tx.lo, ty.hi));
      out.at(x, y) = top + ty.frac * (bottom - top);
    }
  }
  return out;
}

}  // namespace dctface
