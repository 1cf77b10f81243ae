// src/matching.cpp

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

#include "dctface/matching.hpp"

#include <algorithm>
#include <cstdlib>
#include <istream>
#include <limits>
#include <ostream>
#include <unordered_map>

namespace dctface {

namespace {

void CheckSameDim(const FeatureVector &x, const FeatureVector &y) {
  if (x.dim() != y.dim())
    throw ValidationError("distance between dim-" + std::to_string(x.dim()) +
                          " and dim-" + std::to_string(y.dim()) + " vectors");
}

}  // namespace

double Mse(const FeatureVector &x, const FeatureVector &y) {
  CheckSameDim(x, y);
  return kernels::SquaredError(x.coeffs(), y.coeffs());
}

double Mad(const FeatureVector &x, const FeatureVector &y) {
  CheckSameDim(x, y);
  return kernels::AbsoluteError(x.coeffs(), y.coeffs());
}

double Distance(Metric metric, const FeatureVector &x, const FeatureVector &y) {
  return metric == Metric::kMse ? Mse(x, y) : Mad(x, y);
}

double PersonScore(const FeatureVector &probe,
                   const std::vector<FeatureVector> &templates, Metric metric) {
  if (templates.empty()) throw ValidationError("person has no templates");
  double best = std::numeric_limits<double>::infinity();
  for (const auto &t : templates) best = std::min(best, Distance(metric, probe, t));
  return best;
}

ScoreTensor::ScoreTensor(std::vector<std::string> probe_ids,
                         std::vector<std::string> model_ids,
                         std::size_t trials, Metric metric)
    : probe_ids_(std::move(probe_ids)), model_ids_(std::move(model_ids)),
      trials_(trials), metric_(metric) {
  if (trials_ == 0) throw ValidationError("score tensor needs >= 1 trial");
  if (probe_ids_.empty() || model_ids_.empty())
    throw ValidationError("score tensor needs probe and model subjects");
  std::unordered_map<std::string, std::size_t> col;
  for (std::size_t j = 0; j < model_ids_.size(); ++j)
    if (!col.emplace(model_ids_[j], j).second)
      throw ValidationError("duplicate model subject '" + model_ids_[j] + "'");
  std::unordered_map<std::string, std::size_t> seen;
  for (const auto &id : probe_ids_) {
    if (!seen.emplace(id, 0).second)
      throw ValidationError("duplicate probe subject '" + id + "'");
    auto it = col.find(id);
    if (it == col.end())
      throw ValidationError("probe subject '" + id + "' is not in the gallery");
    genuine_col_.push_back(it->second);
  }
  values_.assign(probe_ids_.size() * model_ids_.size() * trials_, 0.0);
}

bool ScoreTensor::SameShape(const ScoreTensor &other) const {
  return probe_ids_ == other.probe_ids_ && model_ids_ == other.model_ids_ &&
         trials_ == other.trials_;
}

ScoreTensor BuildScoreTensor(const ProbeSet &probes, const Gallery &gallery,
                             Metric metric, kernels::Execution exec) {
  if (gallery.empty()) throw ValidationError("gallery is empty");
  if (probes.empty()) throw ValidationError("probe set is empty");
  const std::size_t trials = probes.begin()->second.size();
  std::vector<std::string> probe_ids;
  for (const auto &[id, vecs] : probes) {
    if (!gallery.contains(id))
      throw ValidationError("probe subject '" + id + "' is not enrolled");
    if (vecs.size() != trials)
      throw ValidationError("subject '" + id + "' has " +
                            std::to_string(vecs.size()) + " test images, " +
                            "expected " + std::to_string(trials) +
                            " like the other subjects");
    probe_ids.push_back(id);
  }
  ScoreTensor tensor(std::move(probe_ids), gallery.subject_ids(), trials,
                     metric);

  kernels::TemplateBank bank;
  for (const auto &[id, templates] : gallery.subjects())
    bank.AddSubject(templates);

  // Probe rows in (i, k) order.
  std::vector<double> block;
  block.reserve(tensor.probe_count() * trials * gallery.feature_dim());
  for (const auto &[id, vecs] : probes)
    for (const auto &v : vecs) {
      if (v.dim() != gallery.feature_dim())
        throw ValidationError("probe of subject '" + id + "' has dim " +
                              std::to_string(v.dim()) + ", gallery has " +
                              std::to_string(gallery.feature_dim()));
      if (v.channel() != gallery.channel())
        throw ValidationError(std::string("probe channel ") +
                              ToString(v.channel()) + " does not match " +
                              "gallery channel " + ToString(gallery.channel()));
      block.insert(block.end(), v.coeffs().begin(), v.coeffs().end());
    }

  const std::size_t models = tensor.model_count();
  std::vector<double> dist(tensor.probe_count() * trials * models);
  kernels::NearestTemplateDistances(block, bank, metric, dist, exec);
  for (std::size_t i = 0; i < tensor.probe_count(); ++i)
    for (std::size_t k = 0; k < trials; ++k)
      for (std::size_t j = 0; j < models; ++j)
        tensor.at(i, j, k) = dist[(i * trials + k) * models + j];
  return tensor;
}

IdentificationResult IdentificationRate(const ScoreTensor &tensor) {
  IdentificationResult result;
  for (std::size_t i = 0; i < tensor.probe_count(); ++i) {
    const std::size_t g = tensor.genuine_column(i);
    for (std::size_t k = 0; k < tensor.trials(); ++k) {
      const double own = tensor.at(i, g, k);
      bool success = true;
      for (std::size_t j = 0; j < tensor.model_count() && success; ++j)
        if (j != g && !(own < tensor.at(i, j, k))) success = false;
      if (success)
        ++result.successes;
      else
        ++result.errors;
    }
  }
  return result;
}

void WriteTensorCsv(const ScoreTensor &tensor, std::ostream &out) {
  out << "i,j,k,score\n";
  for (std::size_t i = 0; i < tensor.probe_count(); ++i)
    for (std::size_t j = 0; j < tensor.model_count(); ++j)
      for (std::size_t k = 0; k < tensor.trials(); ++k)
        out << tensor.probe_ids()[i] << ',' << tensor.model_ids()[j] << ','
            << (k + 1) << ',' << FormatExact(tensor.at(i, j, k)) << '\n';
}

ScoreTensor ReadTensorCsv(std::istream &in, Metric metric) {
  struct Cell {
    std::string i, j;
    std::size_t k;
    double score;
  };
  std::vector<Cell> cells;
  std::vector<std::string> rows, cols;
  std::unordered_map<std::string, std::size_t> row_index, col_index;
  std::size_t trials = 0;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line_no == 1 && line == "i,j,k,score") continue;
    std::vector<std::string> f;
    std::size_t start = 0;
    while (true) {
      auto comma = line.find(',', start);
      f.push_back(line.substr(start, comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    auto bad = [&](const std::string &why) {
      return DataError("scores line " + std::to_string(line_no) + ": " + why);
    };
    if (f.size() != 4) throw bad("expected 4 fields");
    char *end = nullptr;
    long k = std::strtol(f[2].c_str(), &end, 10);
    if (f[2].empty() || *end != '\0' || k < 1) throw bad("bad trial index");
    double score = std::strtod(f[3].c_str(), &end);
    if (f[3].empty() || *end != '\0') throw bad("bad score");
    if (!(score >= 0) || score == std::numeric_limits<double>::infinity())
      throw bad("scores must be finite and >= 0");
    if (row_index.emplace(f[0], rows.size()).second) rows.push_back(f[0]);
    if (col_index.emplace(f[1], cols.size()).second) cols.push_back(f[1]);
    trials = std::max(trials, std::size_t(k));
    cells.push_back({f[0], f[1], std::size_t(k), score});
  }
  if (cells.empty()) throw DataError("scores file has no cells");

  ScoreTensor tensor;
  try {
    tensor = ScoreTensor(rows, cols, trials, metric);
  } catch (const ValidationError &e) {
    throw DataError(std::string("scores file: ") + e.what());
  }
  if (cells.size() != tensor.size())
    throw DataError("scores file has " + std::to_string(cells.size()) +
                    " cells, a full tensor needs " +
                    std::to_string(tensor.size()));
  std::vector<char> filled(tensor.size(), 0);
  for (const auto &c : cells) {
    const std::size_t i = row_index[c.i], j = col_index[c.j], k = c.k - 1;
    const std::size_t flat = (i * tensor.model_count() + j) * trials + k;
    if (filled[flat])
      throw DataError("scores file repeats cell (" + c.i + "," + c.j + "," +
                      std::to_string(c.k) + ")");
    filled[flat] = 1;
    tensor.at(i, j, k) = c.score;
  }
  return tensor;
}

}  // namespace dctface
