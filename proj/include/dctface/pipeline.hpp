// include/dctface/pipeline.hpp

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

#ifndef DCTFACE_PIPELINE_HPP_
#define DCTFACE_PIPELINE_HPP_

#include <filesystem>
#include <vector>

#include "dctface/fusion.hpp"
#include "dctface/gallery.hpp"
#include "dctface/matching.hpp"
#include "dctface/verification.hpp"

namespace dctface {

/// Image -> canonical window -> feature settings shared by enrollment and
/// probing.
struct FeatureSettings {
  SourceChannel channel = SourceChannel::kGray;
  int window = 64;
  int dim = 100;

  /// Throws ValidationError unless window >= 1 and 1 <= dim <= window^2.
  void Validate() const;
};

/// Reads one image and produces the normalized, resized analysis plane
/// for the requested channel. GRAY and Y accept gray images unchanged;
/// Y on RGB applies the luminance weights; R/G/B need RGB input.
GrayPlane LoadAnalysisPlane(const std::filesystem::path &path,
                            const FeatureSettings &settings);

/// Loads and extracts every image of every subject (extraction runs on the
/// parallel kernel). Errors carry the offending subject and file.
std::map<std::string, std::vector<FeatureVector>> ExtractSamples(
    const DatasetManifest &manifest, const SampleSet &samples,
    const FeatureSettings &settings,
    kernels::Execution exec = kernels::Execution::kParallel);

/// One template per training image.
Gallery EnrollSamples(
    const DatasetManifest &manifest, const SampleSet &train,
    const FeatureSettings &settings,
    kernels::Execution exec = kernels::Execution::kParallel);

/// Identification rate and verification summary of one score tensor.
struct Evaluation {
  IdentificationResult identification;
  std::size_t genuine_trials = 0;
  std::size_t impostor_trials = 0;
  double eer = 0;
  MinDcfResult min_dcf;
  std::vector<DetPoint> det;
};

Evaluation EvaluateTensor(const ScoreTensor &tensor, const DcfParams &params);

struct ChannelRun {
  SourceChannel channel = SourceChannel::kGray;
  ScoreTensor tensor;
  Evaluation evaluation;
};

/// End to end for one input signal: channel selection (luminance for Y)
/// -> features -> enrollment -> score tensor -> evaluation.
ChannelRun RunChannelPipeline(
    const DatasetManifest &manifest, const SplitSpec &split,
    SourceChannel channel, Metric metric, int dim, int window,
    const DcfParams &params,
    kernels::Execution exec = kernels::Execution::kParallel);

}  // namespace dctface

#endif  // DCTFACE_PIPELINE_HPP_
