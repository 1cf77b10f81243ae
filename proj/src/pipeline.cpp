// src/pipeline.cpp

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

#include "dctface/pipeline.hpp"

namespace dctface {

void FeatureSettings::Validate() const {
  if (window < 1) throw ValidationError("window must be >= 1");
  if (dim < 1 || dim > window * window)
    throw ValidationError("feature dim " + std::to_string(dim) +
                          " must be in [1, window^2 = " +
                          std::to_string(window * window) + "]");
}

GrayPlane LoadAnalysisPlane(const std::filesystem::path &path,
                            const FeatureSettings &settings) {
  RasterImage img = ReadPnmFile(path);
  auto need_rgb = [&] {
    if (img.channels() != 3)
      throw DataError(path.string() + ": channel " +
                      ToString(settings.channel) + " needs an RGB image");
  };
  switch (settings.channel) {
    case SourceChannel::kGray:
      if (img.channels() != 1)
        throw DataError(path.string() +
                        ": GRAY channel needs a gray image (use Y for RGB)");
      break;
    case SourceChannel::kLuma:
      if (img.channels() == 3) img = ToLuminance(img);
      break;
    case SourceChannel::kRed:
      need_rgb();
      img = SelectChannel(img, ColorChannel::kRed);
      break;
    case SourceChannel::kGreen:
      need_rgb();
      img = SelectChannel(img, ColorChannel::kGreen);
      break;
    case SourceChannel::kBlue:
      need_rgb();
      img = SelectChannel(img, ColorChannel::kBlue);
      break;
  }
  GrayPlane plane = Normalize(img);
  if (plane.width == settings.window && plane.height == settings.window)
    return plane;
  return ResizeBilinear(plane, settings.window, settings.window);
}

std::map<std::string, std::vector<FeatureVector>> ExtractSamples(
    const DatasetManifest &manifest, const SampleSet &samples,
    const FeatureSettings &settings, kernels::Execution exec) {
  settings.Validate();
  std::vector<GrayPlane> planes;
  std::vector<std::pair<std::string, std::size_t>> owner;
  for (const auto &[id, paths] : samples)
    for (const auto &p : paths) {
      try {
        planes.push_back(LoadAnalysisPlane(manifest.Resolve(p), settings));
      } catch (const PnmError &e) {
        throw DataError("subject '" + id + "', " + e.what());
      } catch (const DataError &e) {
        throw DataError("subject '" + id + "': " + e.what());
      }
      owner.emplace_back(id, 0);
    }
  auto vectors =
      kernels::ExtractBatch(planes, settings.dim, settings.channel, exec);
  std::map<std::string, std::vector<FeatureVector>> out;
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    vectors[i].set_subject_id(owner[i].first);
    out[owner[i].first].push_back(std::move(vectors[i]));
  }
  return out;
}

Gallery EnrollSamples(const DatasetManifest &manifest, const SampleSet &train,
                      const FeatureSettings &settings,
                      kernels::Execution exec) {
  Gallery gallery;
  gallery.set_window(settings.window);
  for (auto &[id, vecs] : ExtractSamples(manifest, train, settings, exec))
    for (auto &v : vecs) gallery.Enroll(id, std::move(v));
  return gallery;
}

Evaluation EvaluateTensor(const ScoreTensor &tensor, const DcfParams &params) {
  Evaluation ev;
  ev.identification = IdentificationRate(tensor);
  const TrialScores trials = SplitIntraInter(tensor);
  ev.genuine_trials = trials.genuine().size();
  ev.impostor_trials = trials.impostor().size();
  ev.det = DetCurve(trials);
  ev.eer = Eer(ev.det);
  ev.min_dcf = MinDcf(ev.det, params);
  return ev;
}

ChannelRun RunChannelPipeline(const DatasetManifest &manifest,
                              const SplitSpec &split, SourceChannel channel,
                              Metric metric, int dim, int window,
                              const DcfParams &params,
                              kernels::Execution exec) {
  const FeatureSettings settings{channel, window, dim};
  settings.Validate();
  params.Validate();
  const SplitResult parts = ApplySplit(manifest, split);
  const Gallery gallery = EnrollSamples(manifest, parts.train, settings, exec);
  const ProbeSet probes = ExtractSamples(manifest, parts.test, settings, exec);
  ChannelRun run;
  run.channel = channel;
  run.tensor = BuildScoreTensor(probes, gallery, metric, exec);
  run.evaluation = EvaluateTensor(run.tensor, params);
  return run;
}

}  // namespace dctface
