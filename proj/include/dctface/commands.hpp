// include/dctface/commands.hpp

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

#ifndef DCTFACE_COMMANDS_HPP_
#define DCTFACE_COMMANDS_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dctface/pipeline.hpp"
#include "dctface/significance.hpp"
#include "dctface/synth.hpp"

namespace dctface {

inline constexpr const char *kToolVersion = "1.0.0";

/// Everything an experiment needs. Serialized as one JSON file; command
/// line flags override individual fields.
struct ExperimentConfig {
  std::filesystem::path manifest;
  SplitSpec split = SplitSpec::Orl();
  int window = 64;
  int dim = 100;
  std::vector<Metric> metrics{Metric::kMse, Metric::kMad};
  SourceChannel channel = SourceChannel::kGray;
  /// Score-fusion recipes evaluated by fuse-eval.
  std::vector<std::string> fusion{"sum:R,G,B", "w:0.3R+0.59G+0.11B"};
  double c_miss = 1.0;
  double c_fa = 1.0;
  /// Target priors to report min-DCF for; the empirical genuine fraction
  /// is always added.
  std::vector<double> priors{0.5};
  std::filesystem::path output = "out";
  bool svg = true;

  /// Unknown keys are rejected. Relative paths resolve against `base`.
  static ExperimentConfig FromJson(const std::string &text,
                                   const std::filesystem::path &base = {});
  static ExperimentConfig Load(const std::filesystem::path &path);
  std::string ToJson() const;

  /// Throws ValidationError: paths exist, dim <= window^2, priors valid.
  void Validate() const;
};

/// 64-bit FNV-1a of the canonical config JSON, as 16 hex digits.
std::string ConfigHash(const ExperimentConfig &config);

/// enroll: training split -> <gallery_dir>/{gallery.json, vectors.csv,
/// provenance.json}. Returns the gallery.
Gallery CmdEnroll(const ExperimentConfig &config,
                  const std::filesystem::path &gallery_dir);

/// evaluate: test split vs gallery -> <output>/{scores.csv, det.csv,
/// results.json, det.svg}. Returns results.json contents.
std::string CmdEvaluate(const ExperimentConfig &config,
                        const std::filesystem::path &gallery_dir);

/// identify: one probe image against the gallery. Writes a JSON ranking
/// (nearest subject first) to `out`.
void CmdIdentify(const std::filesystem::path &gallery_dir,
                 const std::filesystem::path &image, Metric metric, int top,
                 std::ostream &out);

/// det-export: score tensor CSV -> DET CSV (+ optional SVG). Returns EER.
double CmdDetExport(const std::filesystem::path &scores_csv,
                    const std::filesystem::path &det_csv,
                    const std::optional<std::filesystem::path> &svg);

/// fuse-eval: per-channel rows (R, G, B, Y) plus every fusion recipe,
/// written to <output>/fusion_results.csv and fusion_results.json.
/// Returns the CSV text.
std::string CmdFuseEval(const ExperimentConfig &config);

struct SigsizeRequest {
  double alpha = 0.05;
  double beta = 0.2;
  std::optional<double> p;
  std::optional<std::uint64_t> n;
  bool iid = false;
};

/// sigsize: one-line report then a JSON line on `out`; the correlated
/// samples caveat goes to `err` unless iid is asserted.
void CmdSigsize(const SigsizeRequest &request, std::ostream &out,
                std::ostream &err);

/// synth-data: writes the dataset and prints a summary line.
DatasetManifest CmdSynthData(const SynthSpec &spec,
                             const std::filesystem::path &dir,
                             std::ostream &out);

/// Stable process exit codes.
enum ExitCode : int {
  kExitOk = 0,
  kExitValidation = 1,
  kExitData = 2,
  kExitInternal = 3,
};

}  // namespace dctface

#endif  // DCTFACE_COMMANDS_HPP_
