// tools/dctface_main.cpp

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

// Command-line front end: enroll, evaluate, identify, det-export,
// fuse-eval, sigsize, synth-data.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dctface/commands.hpp"

namespace {

using namespace dctface;

// Flags that override fields of the JSON experiment config.
struct ConfigFlags {
  std::string config;
  std::optional<std::string> manifest, split, channel, output;
  std::optional<int> window, dim;
  std::vector<std::string> metrics, fusion;
  std::vector<double> priors;
  std::optional<double> c_miss, c_fa;
  bool no_svg = false;

  void Register(CLI::App *cmd) {
    cmd->add_option("--config", config, "Experiment config (JSON)");
    cmd->add_option("--manifest", manifest, "Dataset manifest (JSON)");
    cmd->add_option("--split", split, "TRAIN:TEST sample indices, e.g. 1-5:6-10");
    cmd->add_option("--window", window, "Canonical analysis window side");
    cmd->add_option("--dim", dim, "Retained DCT coefficients");
    cmd->add_option("--metric", metrics, "MSE or MAD (repeatable)");
    cmd->add_option("--channel", channel, "GRAY, R, G, B or Y");
    cmd->add_option("--fusion", fusion,
                    "Fusion recipe, e.g. sum:R,G,B or w:0.3R+0.59G+0.11B");
    cmd->add_option("--prior", priors, "DCF target prior (repeatable)");
    cmd->add_option("--c-miss", c_miss, "DCF miss cost");
    cmd->add_option("--c-fa", c_fa, "DCF false-alarm cost");
    cmd->add_option("--output", output, "Output directory");
    cmd->add_flag("--no-svg", no_svg, "Skip det.svg");
  }

  ExperimentConfig Build() const {
    ExperimentConfig c =
        config.empty() ? ExperimentConfig{} : ExperimentConfig::Load(config);
    if (manifest) c.manifest = *manifest;
    if (split) c.split = SplitSpec::Parse(*split);
    if (channel) c.channel = ParseSourceChannel(*channel);
    if (output) c.output = *output;
    if (window) c.window = *window;
    if (dim) c.dim = *dim;
    if (!metrics.empty()) {
      c.metrics.clear();
      for (const auto &m : metrics) c.metrics.push_back(ParseMetric(m));
    }
    if (!fusion.empty()) c.fusion = fusion;
    if (!priors.empty()) c.priors = priors;
    if (c_miss) c.c_miss = *c_miss;
    if (c_fa) c.c_fa = *c_fa;
    if (no_svg) c.svg = false;
    return c;
  }
};

int Run(int argc, char **argv) {
  CLI::App app{"DCT-feature face identification and verification toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  ConfigFlags enroll_flags, evaluate_flags, fuse_flags;
  std::string enroll_gallery, evaluate_gallery;

  auto *enroll = app.add_subcommand("enroll", "Build a gallery from the training split");
  enroll_flags.Register(enroll);
  enroll->add_option("--gallery", enroll_gallery,
                     "Gallery directory (default <output>/gallery)");

  auto *evaluate = app.add_subcommand(
      "evaluate", "Score the test split against a gallery");
  evaluate_flags.Register(evaluate);
  evaluate->add_option("--gallery", evaluate_gallery,
                       "Gallery directory (default <output>/gallery)");

  std::string id_gallery, id_image, id_metric = "MAD";
  int id_top = 5;
  auto *identify = app.add_subcommand("identify", "Identify a single probe image");
  identify->add_option("--gallery", id_gallery, "Gallery directory")->required();
  identify->add_option("--image", id_image, "Probe image (PGM/PPM)")->required();
  identify->add_option("--metric", id_metric, "MSE or MAD");
  identify->add_option("--top", id_top, "Ranking entries to print");

  std::string det_scores, det_out, det_svg;
  auto *det = app.add_subcommand("det-export", "DET curve from a score tensor CSV");
  det->add_option("--scores", det_scores, "Score tensor CSV (i,j,k,score)")
      ->required();
  det->add_option("--out", det_out, "DET CSV to write")->required();
  det->add_option("--svg", det_svg, "Optional DET plot");

  auto *fuse = app.add_subcommand(
      "fuse-eval", "Per-channel and score-fusion results table (RGB datasets)");
  fuse_flags.Register(fuse);

  SigsizeRequest sig;
  std::optional<double> sig_p;
  std::optional<std::uint64_t> sig_n;
  auto *sigsize = app.add_subcommand(
      "sigsize", "Test-set size needed for a significant error-rate estimate");
  sigsize->add_option("--alpha", sig.alpha, "Risk of being wrong");
  sigsize->add_option("--beta", sig.beta, "Relative margin");
  auto *p_opt = sigsize->add_option("--p", sig_p, "Error rate to resolve");
  auto *n_opt = sigsize->add_option("--n", sig_n, "Available trial count");
  p_opt->excludes(n_opt);
  sigsize->add_flag("--iid", sig.iid, "Assert independent trials");

  SynthSpec synth;
  std::string synth_out;
  std::optional<std::uint64_t> synth_seed;
  int synth_size = 64;
  auto *synth_cmd = app.add_subcommand("synth-data", "Generate a synthetic dataset");
  synth_cmd->add_option("--out", synth_out, "Dataset directory")->required();
  synth_cmd->add_option("--subjects", synth.subjects, "Number of subjects");
  synth_cmd->add_option("--samples", synth.samples, "Images per subject");
  synth_cmd->add_option("--sigma", synth.sigma, "Noise level");
  synth_cmd->add_option("--seed", synth_seed, "RNG seed")->required();
  synth_cmd->add_option("--size", synth_size, "Image side in pixels");
  synth_cmd->add_option("--color", synth.color,
                        "none, same, or the RGB channels carrying identity");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  if (*enroll) {
    const ExperimentConfig c = enroll_flags.Build();
    const auto dir = enroll_gallery.empty() ? c.output / "gallery"
                                            : std::filesystem::path(enroll_gallery);
    const Gallery g = CmdEnroll(c, dir);
    std::cout << "enrolled " << g.template_count() << " templates for "
              << g.subject_count() << " subjects into " << dir.generic_string()
              << '\n';
  } else if (*evaluate) {
    const ExperimentConfig c = evaluate_flags.Build();
    const auto dir = evaluate_gallery.empty()
                         ? c.output / "gallery"
                         : std::filesystem::path(evaluate_gallery);
    std::cout << CmdEvaluate(c, dir);
  } else if (*identify) {
    CmdIdentify(id_gallery, id_image, ParseMetric(id_metric), id_top, std::cout);
  } else if (*det) {
    std::optional<std::filesystem::path> svg;
    if (!det_svg.empty()) svg = det_svg;
    const double eer = CmdDetExport(det_scores, det_out, svg);
    std::cout << "EER " << eer * 100 << "%\n";
  } else if (*fuse) {
    std::cout << CmdFuseEval(fuse_flags.Build());
  } else if (*sigsize) {
    sig.p = sig_p;
    sig.n = sig_n;
    CmdSigsize(sig, std::cout, std::cerr);
  } else if (*synth_cmd) {
    synth.seed = *synth_seed;
    synth.width = synth.height = synth_size;
    CmdSynthData(synth, synth_out, std::cout);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char **argv) {
  try {
    return Run(argc, argv);
  } catch (const dctface::ValidationError &e) {
    std::cerr << "error: " << e.what() << '\n';
    return dctface::kExitValidation;
  } catch (const dctface::DataError &e) {
    std::cerr << "data error: " << e.what() << '\n';
    return dctface::kExitData;
  } catch (const std::exception &e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return dctface::kExitInternal;
  }
}
