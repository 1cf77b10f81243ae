// src/commands.cpp

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

#include "dctface/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace dctface {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

void WriteFile(const std::filesystem::path &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  out << text;
}

std::string ReadFile(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  return std::string((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
}

// JSON has no infinities; thresholds at the sentinels become strings.
ordered_json JsonNumber(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return nullptr;
  return v > 0 ? "inf" : "-inf";
}

std::string Lower(std::string s) {
  for (auto &c : s) c = char(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

std::filesystem::path Rebase(const std::filesystem::path &p,
                             const std::filesystem::path &base) {
  if (p.empty() || p.is_absolute() || base.empty()) return p;
  return base / p;
}

}  // namespace

ExperimentConfig ExperimentConfig::FromJson(const std::string &text,
                                            const std::filesystem::path &base) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception &e) {
    throw ValidationError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ValidationError("config must be a JSON object");
  static const std::vector<std::string> kKeys = {
      "manifest", "split", "window", "dim",    "metrics",
      "channel",  "fusion", "dcf",   "output", "svg"};
  for (auto &[key, value] : doc.items())
    if (std::find(kKeys.begin(), kKeys.end(), key) == kKeys.end())
      throw ValidationError("unknown config key '" + key + "'");

  ExperimentConfig c;
  try {
    if (doc.contains("manifest"))
      c.manifest = Rebase(doc["manifest"].get<std::string>(), base);
    if (doc.contains("split"))
      c.split = SplitSpec::Parse(doc["split"].get<std::string>());
    c.window = doc.value("window", c.window);
    c.dim = doc.value("dim", c.dim);
    if (doc.contains("metrics")) {
      c.metrics.clear();
      for (const auto &m : doc["metrics"])
        c.metrics.push_back(ParseMetric(m.get<std::string>()));
    }
    if (doc.contains("channel"))
      c.channel = ParseSourceChannel(doc["channel"].get<std::string>());
    if (doc.contains("fusion"))
      c.fusion = doc["fusion"].get<std::vector<std::string>>();
    if (doc.contains("dcf")) {
      const auto &d = doc["dcf"];
      for (auto &[key, value] : d.items())
        if (key != "cMiss" && key != "cFa" && key != "priors")
          throw ValidationError("unknown dcf key '" + key + "'");
      c.c_miss = d.value("cMiss", c.c_miss);
      c.c_fa = d.value("cFa", c.c_fa);
      if (d.contains("priors"))
        c.priors = d["priors"].get<std::vector<double>>();
    }
    if (doc.contains("output"))
      c.output = Rebase(doc["output"].get<std::string>(), base);
    c.svg = doc.value("svg", c.svg);
  } catch (const json::exception &e) {
    throw ValidationError(std::string("config: ") + e.what());
  }
  return c;
}

ExperimentConfig ExperimentConfig::Load(const std::filesystem::path &path) {
  std::string text;
  try {
    text = ReadFile(path);
  } catch (const DataError &e) {
    throw ValidationError(e.what());
  }
  return FromJson(text, path.parent_path());
}

std::string ExperimentConfig::ToJson() const {
  ordered_json doc;
  doc["manifest"] = manifest.generic_string();
  doc["split"] = split.ToString();
  doc["window"] = window;
  doc["dim"] = dim;
  doc["metrics"] = ordered_json::array();
  for (auto m : metrics) doc["metrics"].push_back(ToString(m));
  doc["channel"] = ToString(channel);
  doc["fusion"] = fusion;
  doc["dcf"] = {{"cMiss", c_miss}, {"cFa", c_fa}, {"priors", priors}};
  doc["output"] = output.generic_string();
  doc["svg"] = svg;
  return doc.dump(2);
}

void ExperimentConfig::Validate() const {
  if (manifest.empty()) throw ValidationError("config has no manifest path");
  if (!std::filesystem::exists(manifest))
    throw ValidationError("manifest " + manifest.string() + " does not exist");
  FeatureSettings{channel, window, dim}.Validate();
  if (metrics.empty()) throw ValidationError("config lists no metrics");
  for (double p : priors) DcfParams{c_miss, c_fa, p}.Validate();
  for (const auto &f : fusion) FusionSpec::Parse(f);
}

std::string ConfigHash(const ExperimentConfig &config) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : config.ToJson()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

std::string ProvenanceJson(const ExperimentConfig &config,
                           const std::string &command) {
  ordered_json doc;
  doc["tool"] = "dctface";
  doc["version"] = kToolVersion;
  doc["command"] = command;
  doc["configHash"] = ConfigHash(config);
  doc["config"] = ordered_json::parse(config.ToJson());
  return doc.dump(2) + "\n";
}

struct PriorReport {
  std::string source;
  double p_true;
  MinDcfResult result;
};

std::vector<PriorReport> MinDcfPerPrior(const ExperimentConfig &config,
                                        const Evaluation &ev) {
  std::vector<PriorReport> out;
  for (double p : config.priors)
    out.push_back({"config", p,
                   MinDcf(ev.det, DcfParams{config.c_miss, config.c_fa, p})});
  const double empirical = double(ev.genuine_trials) /
                           double(ev.genuine_trials + ev.impostor_trials);
  out.push_back({"empirical", empirical,
                 MinDcf(ev.det, DcfParams{config.c_miss, config.c_fa, empirical})});
  return out;
}

ordered_json EvaluationJson(const ExperimentConfig &config,
                            const Evaluation &ev) {
  ordered_json row;
  row["identificationRate"] = ev.identification.rate();
  row["successes"] = ev.identification.successes;
  row["errors"] = ev.identification.errors;
  row["eer"] = ev.eer;
  row["minDcf"] = ordered_json::array();
  for (const auto &r : MinDcfPerPrior(config, ev))
    row["minDcf"].push_back({{"prior", r.source},
                             {"pTrue", r.p_true},
                             {"value", r.result.value},
                             {"threshold", JsonNumber(r.result.threshold)}});
  return row;
}

void WriteTensorFile(const ScoreTensor &t, const std::filesystem::path &p) {
  std::ostringstream s;
  WriteTensorCsv(t, s);
  WriteFile(p, s.str());
}

void WriteDetFile(std::span<const DetPoint> det, const std::filesystem::path &p) {
  std::ostringstream s;
  WriteDetCsv(det, s);
  WriteFile(p, s.str());
}

FeatureSettings GallerySettings(const Gallery &gallery, int fallback_window) {
  return FeatureSettings{gallery.channel(),
                         gallery.window() > 0 ? gallery.window()
                                              : fallback_window,
                         static_cast<int>(gallery.feature_dim())};
}

}  // namespace

Gallery CmdEnroll(const ExperimentConfig &config,
                  const std::filesystem::path &gallery_dir) {
  config.Validate();
  const DatasetManifest manifest = LoadManifest(config.manifest);
  const SplitResult parts = ApplySplit(manifest, config.split);
  Gallery gallery = EnrollSamples(
      manifest, parts.train,
      FeatureSettings{config.channel, config.window, config.dim});
  SaveGalleryDir(gallery, gallery_dir);
  WriteFile(gallery_dir / "provenance.json", ProvenanceJson(config, "enroll"));
  return gallery;
}

std::string CmdEvaluate(const ExperimentConfig &config,
                        const std::filesystem::path &gallery_dir) {
  config.Validate();
  const Gallery gallery = LoadGalleryDir(gallery_dir);
  const FeatureSettings settings = GallerySettings(gallery, config.window);
  if (std::size_t(config.dim) != gallery.feature_dim())
    throw ValidationError("config dim " + std::to_string(config.dim) +
                          " does not match gallery dim " +
                          std::to_string(gallery.feature_dim()));
  if (config.channel != gallery.channel())
    throw ValidationError(std::string("config channel ") +
                          ToString(config.channel) +
                          " does not match gallery channel " +
                          ToString(gallery.channel()));
  if (config.window != settings.window)
    throw ValidationError("config window " + std::to_string(config.window) +
                          " does not match gallery window " +
                          std::to_string(settings.window));

  const DatasetManifest manifest = LoadManifest(config.manifest);
  const SplitResult parts = ApplySplit(manifest, config.split);
  const ProbeSet probes = ExtractSamples(manifest, parts.test, settings);

  std::filesystem::create_directories(config.output);
  ordered_json results;
  results["tool"] = "dctface";
  results["version"] = kToolVersion;
  results["configHash"] = ConfigHash(config);
  results["channel"] = ToString(gallery.channel());
  results["featureDim"] = gallery.feature_dim();
  results["rows"] = ordered_json::array();

  bool first = true;
  for (Metric metric : config.metrics) {
    const ScoreTensor tensor = BuildScoreTensor(probes, gallery, metric);
    const Evaluation ev =
        EvaluateTensor(tensor, DcfParams{config.c_miss, config.c_fa,
                                         config.priors.front()});
    if (first) {
      results["trials"] = {
          {"probeSubjects", tensor.probe_count()},
          {"modelSubjects", tensor.model_count()},
          {"perSubject", tensor.trials()},
          {"genuine", ev.genuine_trials},
          {"impostor", ev.impostor_trials},
          {"total", ev.genuine_trials + ev.impostor_trials},
          {"minResolvableErrorRate",
           MinResolvableErrorRate(ev.genuine_trials + ev.impostor_trials,
                                  SizingRule::kSimplified)}};
      WriteTensorFile(tensor, config.output / "scores.csv");
      WriteDetFile(ev.det, config.output / "det.csv");
      if (config.svg) {
        std::ostringstream svg;
        WriteDetSvg(ev.det, ev.eer, svg);
        WriteFile(config.output / "det.svg", svg.str());
      }
    }
    const std::string suffix = Lower(ToString(metric));
    WriteTensorFile(tensor, config.output / ("scores_" + suffix + ".csv"));
    WriteDetFile(ev.det, config.output / ("det_" + suffix + ".csv"));
    ordered_json row;
    row["metric"] = ToString(metric);
    row.update(EvaluationJson(config, ev));
    results["rows"].push_back(std::move(row));
    first = false;
  }
  const std::string text = results.dump(2) + "\n";
  WriteFile(config.output / "results.json", text);
  WriteFile(config.output / "provenance.json",
            ProvenanceJson(config, "evaluate"));
  return text;
}

void CmdIdentify(const std::filesystem::path &gallery_dir,
                 const std::filesystem::path &image, Metric metric, int top,
                 std::ostream &out) {
  const Gallery gallery = LoadGalleryDir(gallery_dir);
  const FeatureSettings settings = GallerySettings(gallery, 64);
  const FeatureVector probe = ExtractFeatures(
      LoadAnalysisPlane(image, settings), settings.dim, settings.channel);
  std::vector<std::pair<double, std::string>> ranking;
  for (const auto &[id, templates] : gallery.subjects())
    ranking.emplace_back(PersonScore(probe, templates, metric), id);
  std::stable_sort(ranking.begin(), ranking.end(),
                   [](const auto &a, const auto &b) { return a.first < b.first; });
  ordered_json doc;
  doc["probe"] = image.generic_string();
  doc["metric"] = ToString(metric);
  doc["best"] = ranking.front().second;
  doc["ranking"] = ordered_json::array();
  const std::size_t n =
      std::min<std::size_t>(ranking.size(), top > 0 ? top : ranking.size());
  for (std::size_t r = 0; r < n; ++r)
    doc["ranking"].push_back(
        {{"subject", ranking[r].second}, {"score", ranking[r].first}});
  out << doc.dump(2) << '\n';
}

double CmdDetExport(const std::filesystem::path &scores_csv,
                    const std::filesystem::path &det_csv,
                    const std::optional<std::filesystem::path> &svg) {
  std::ifstream in(scores_csv, std::ios::binary);
  if (!in) throw DataError("cannot open " + scores_csv.string());
  const ScoreTensor tensor = ReadTensorCsv(in, Metric::kMse);
  TrialScores trials = [&] {
    try {
      return SplitIntraInter(tensor);
    } catch (const ValidationError &e) {
      throw DataError(scores_csv.string() + ": " + e.what());
    }
  }();
  const auto det = DetCurve(trials);
  const double eer = Eer(det);
  WriteDetFile(det, det_csv);
  if (svg) {
    std::ostringstream s;
    WriteDetSvg(det, eer, s);
    WriteFile(*svg, s.str());
  }
  return eer;
}

std::string CmdFuseEval(const ExperimentConfig &config) {
  config.Validate();
  const DatasetManifest manifest = LoadManifest(config.manifest);
  const Metric metric = config.metrics.front();
  const DcfParams params{config.c_miss, config.c_fa, config.priors.front()};

  std::vector<FusionSpec> recipes;
  for (const auto &f : config.fusion) recipes.push_back(FusionSpec::Parse(f));

  const SourceChannel kRows[] = {SourceChannel::kRed, SourceChannel::kGreen,
                                 SourceChannel::kBlue, SourceChannel::kLuma};
  std::map<SourceChannel, ChannelRun> runs;
  for (SourceChannel c : kRows)
    runs[c] = RunChannelPipeline(manifest, config.split, c, metric, config.dim,
                                 config.window, params);

  std::ostringstream csv;
  csv << "input,identificationRate,minDcf\n";
  ordered_json doc;
  doc["tool"] = "dctface";
  doc["version"] = kToolVersion;
  doc["configHash"] = ConfigHash(config);
  doc["metric"] = ToString(metric);
  doc["rows"] = ordered_json::array();
  auto emit = [&](const std::string &label, const Evaluation &ev) {
    csv << label << ',' << FormatExact(ev.identification.rate()) << ','
        << FormatExact(ev.min_dcf.value) << '\n';
    ordered_json row;
    row["input"] = label;
    row.update(EvaluationJson(config, ev));
    doc["rows"].push_back(std::move(row));
  };
  for (SourceChannel c : kRows) emit(ToString(c), runs[c].evaluation);
  for (const auto &spec : recipes) {
    std::vector<ScoreTensor> tensors;
    std::vector<double> weights;
    for (const auto &term : spec.terms) {
      tensors.push_back(runs.at(term.channel).tensor);
      weights.push_back(term.weight);
    }
    const ScoreTensor fused = spec.weighted
                                  ? FuseScoresWeighted(tensors, weights)
                                  : FuseScoresSum(tensors);
    emit("Score fusion: " + spec.Label(), EvaluateTensor(fused, params));
  }
  std::filesystem::create_directories(config.output);
  WriteFile(config.output / "fusion_results.csv", csv.str());
  WriteFile(config.output / "fusion_results.json", doc.dump(2) + "\n");
  WriteFile(config.output / "provenance.json",
            ProvenanceJson(config, "fuse-eval"));
  return csv.str();
}

void CmdSigsize(const SigsizeRequest &request, std::ostream &out,
                std::ostream &err) {
  if (request.p.has_value() == request.n.has_value())
    throw ValidationError("sigsize needs exactly one of --p or --n");
  ordered_json doc;
  doc["alpha"] = request.alpha;
  doc["beta"] = request.beta;
  char line[256];
  if (request.p) {
    const SignificanceParams params{request.alpha, request.beta, *request.p};
    const auto exact = RequiredN(params);
    doc["p"] = *request.p;
    doc["exact"] = {{"n", exact}};
    if (*request.p < 1) {
      const auto simplified = SimplifiedN(*request.p);
      doc["simplified"] = {{"n", simplified}};
      std::snprintf(line, sizeof line,
                    "p=%g: need N >= %llu trials (exact, alpha=%g beta=%g), "
                    "N >= %llu (simplified 100/p)",
                    *request.p, static_cast<unsigned long long>(exact),
                    request.alpha, request.beta,
                    static_cast<unsigned long long>(simplified));
    } else {
      doc["simplified"] = nullptr;
      std::snprintf(line, sizeof line,
                    "p=%g: need N >= %llu trials (exact, alpha=%g beta=%g)",
                    *request.p, static_cast<unsigned long long>(exact),
                    request.alpha, request.beta);
    }
  } else {
    const auto n = *request.n;
    const double exact = MinResolvableErrorRate(n, SizingRule::kExact,
                                                request.alpha, request.beta);
    const double simplified = MinResolvableErrorRate(n, SizingRule::kSimplified);
    doc["n"] = n;
    doc["exact"] = {{"minErrorRate", exact}};
    doc["simplified"] = {{"minErrorRate", simplified}};
    std::snprintf(line, sizeof line,
                  "N=%llu: significant down to %.4g%% (simplified 100/N), "
                  "%.4g%% (exact, alpha=%g beta=%g)",
                  static_cast<unsigned long long>(n), simplified * 100,
                  exact * 100, request.alpha, request.beta);
  }
  doc["iid"] = request.iid;
  out << line << '\n' << doc.dump() << '\n';
  if (!request.iid)
    err << "note: sizes assume independent trials; correlated samples need a "
           "larger N (pass --iid to acknowledge)\n";
}

DatasetManifest CmdSynthData(const SynthSpec &spec,
                             const std::filesystem::path &dir,
                             std::ostream &out) {
  DatasetManifest manifest = GenerateDataset(spec, dir);
  out << "wrote " << spec.subjects * spec.samples << " images for "
      << spec.subjects << " subjects to " << dir.generic_string()
      << " (manifest.json)\n";
  return manifest;
}

}  // namespace dctface
