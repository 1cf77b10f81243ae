// src/synth.cpp

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

#include "dctface/synth.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <random>

#include "dctface/image.hpp"

namespace dctface {

void SynthSpec::Validate() const {
  if (subjects < 1) throw ValidationError("synth: subjects must be >= 1");
  if (subjects > 999) throw ValidationError("synth: at most 999 subjects");
  if (samples < 1 || samples > 99)
    throw ValidationError("synth: samples must be in [1, 99]");
  if (!(sigma >= 0) || !std::isfinite(sigma))
    throw ValidationError("synth: sigma must be finite and >= 0");
  if (width < 2 || height < 2)
    throw ValidationError("synth: image must be at least 2x2");
  if (color == "none" || color == "same") return;
  if (color.empty() || color.size() > 3)
    throw ValidationError("synth: color must be none, same or a subset of RGB");
  for (char c : color)
    if ((c != 'R' && c != 'G' && c != 'B') ||
        std::count(color.begin(), color.end(), c) > 1)
      throw ValidationError("synth: color must be none, same or a subset of RGB");
}

namespace {

// Smooth pattern on [0,1]^2: a mean level plus a few low-frequency
// cosine modes and Gaussian blobs.
class BasePattern {
 public:
  explicit BasePattern(std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> amp(-0.12, 0.12);
    std::uniform_real_distribution<double> phase(0.0, 2 * std::numbers::pi);
    std::uniform_int_distribution<int> freq(0, 4);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> level(0.35, 0.65);
    mean_ = level(rng);
    for (auto &m : modes_) m = {freq(rng), freq(rng), amp(rng), phase(rng)};
    for (auto &b : blobs_)
      b = {0.2 + 0.6 * unit(rng), 0.2 + 0.6 * unit(rng), 0.06 + 0.1 * unit(rng),
           amp(rng) * 2.0};
  }

  double operator()(double u, double v) const {
    double value = mean_;
    for (const auto &m : modes_)
      value += m.amp * std::cos(std::numbers::pi * (m.fu * u + m.fv * v) + m.phase);
    for (const auto &b : blobs_) {
      const double du = u - b.cu, dv = v - b.cv;
      value += b.amp * std::exp(-(du * du + dv * dv) / (2 * b.radius * b.radius));
    }
    return value;
  }

 private:
  struct Mode {
    int fu, fv;
    double amp, phase;
  };
  struct Blob {
    double cu, cv, radius, amp;
  };
  double mean_ = 0.5;
  std::array<Mode, 6> modes_{};
  std::array<Blob, 3> blobs_{};
};

struct Rendering {
  double gain, offset, shift_x, shift_y;
};

Rendering DrawRendering(std::mt19937_64 &rng, double sigma) {
  std::normal_distribution<double> z(0.0, 1.0);
  Rendering r;
  r.gain = 1.0 + 0.5 * sigma * z(rng);
  r.offset = 0.25 * sigma * z(rng);
  r.shift_x = 2.0 * sigma * z(rng);
  r.shift_y = 2.0 * sigma * z(rng);
  return r;
}

// Renders one plane into channel `c` of an interleaved sample buffer.
void RenderPlane(const BasePattern &pattern, const Rendering &r, double sigma,
                 int w, int h, int channels, int c, std::mt19937_64 &rng,
                 std::vector<std::uint16_t> &samples) {
  std::normal_distribution<double> z(0.0, 1.0);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      const double u = (x + 0.5 + r.shift_x) / w;
      const double v = (y + 0.5 + r.shift_y) / h;
      double value = r.gain * (pattern(u, v) - 0.5) + 0.5 + r.offset;
      if (sigma > 0) value += sigma * z(rng);
      value = std::clamp(value, 0.0, 1.0);
      samples[(std::size_t(y) * w + x) * channels + c] =
          static_cast<std::uint16_t>(std::floor(value * 255.0 + 0.5));
    }
}

}  // namespace

DatasetManifest GenerateDataset(const SynthSpec &spec,
                                const std::filesystem::path &dir) {
  spec.Validate();
  std::filesystem::create_directories(dir);
  std::mt19937_64 rng(spec.seed);
  const bool gray = spec.color == "none";
  const int channels = gray ? 1 : 3;
  std::array<bool, 3> carries{true, true, true};
  if (!gray && spec.color != "same") {
    carries = {false, false, false};
    for (char c : spec.color) carries[c == 'R' ? 0 : c == 'G' ? 1 : 2] = true;
  }

  DatasetManifest manifest;
  manifest.root = dir;
  char name[32];
  for (int s = 1; s <= spec.subjects; ++s) {
    std::snprintf(name, sizeof name, "s%03d", s);
    const std::string id = name;
    const BasePattern pattern(rng);
    std::filesystem::create_directories(dir / id);
    auto &paths = manifest.subjects[id];
    for (int k = 1; k <= spec.samples; ++k) {
      std::vector<std::uint16_t> samples(std::size_t(spec.width) * spec.height *
                                         channels);
      const Rendering r = DrawRendering(rng, spec.sigma);
      if (gray || spec.color == "same") {
        // One rendering replicated into every channel.
        std::vector<std::uint16_t> plane(std::size_t(spec.width) * spec.height);
        RenderPlane(pattern, r, spec.sigma, spec.width, spec.height, 1, 0, rng,
                    plane);
        for (std::size_t i = 0; i < plane.size(); ++i)
          for (int c = 0; c < channels; ++c) samples[i * channels + c] = plane[i];
      } else {
        for (int c = 0; c < 3; ++c) {
          if (carries[c]) {
            RenderPlane(pattern, r, spec.sigma, spec.width, spec.height, 3, c,
                        rng, samples);
          } else {
            const BasePattern clutter(rng);
            RenderPlane(clutter, r, spec.sigma, spec.width, spec.height, 3, c,
                        rng, samples);
          }
        }
      }
      std::snprintf(name, sizeof name, "%02d.%s", k, gray ? "pgm" : "ppm");
      const std::filesystem::path rel = std::filesystem::path(id) / name;
      WritePnmFile(RasterImage(spec.width, spec.height, channels, 255,
                               std::move(samples)),
                   dir / rel);
      paths.push_back(rel);
    }
  }
  std::ofstream out(dir / "manifest.json", std::ios::binary);
  if (!out) throw DataError("cannot write " + (dir / "manifest.json").string());
  out << ManifestToJson(manifest);
  return manifest;
}

}  // namespace dctface
