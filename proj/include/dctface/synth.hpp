// include/dctface/synth.hpp

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

#ifndef DCTFACE_SYNTH_HPP_
#define DCTFACE_SYNTH_HPP_

#include <cstdint>
#include <filesystem>
#include <string>

#include "dctface/gallery.hpp"

namespace dctface {

/// Synthetic face-like dataset: every subject owns a smooth random base
/// pattern; each sample is an affine rendering of it (intensity gain and
/// offset, sub-pixel shift) plus pixel noise. All perturbations scale
/// with `sigma`, so sigma = 0 yields identical samples per subject.
struct SynthSpec {
  int subjects = 40;
  int samples = 10;
  double sigma = 0.0;
  std::uint64_t seed = 1;
  int width = 64;
  int height = 64;
  /// "none": gray PGM. "same": PPM with the pattern in all three channels.
  /// Any subset of "RGB" (e.g. "R"): PPM where only those channels carry
  /// the subject pattern and the others get a fresh pattern per sample.
  std::string color = "none";

  /// Throws ValidationError.
  void Validate() const;
};

/// Writes <dir>/<subject>/<nn>.pgm|ppm and <dir>/manifest.json; returns the
/// manifest. Subject ids are "s001", "s002", ... so lexicographic order
/// equals generation order. Same spec -> byte-identical files.
DatasetManifest GenerateDataset(const SynthSpec &spec,
                                const std::filesystem::path &dir);

}  // namespace dctface

#endif  // DCTFACE_SYNTH_HPP_
