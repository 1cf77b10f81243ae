// src/fusion.cpp

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

#include "dctface/fusion.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace dctface {

namespace {

void CheckCompatible(std::span<const ScoreTensor> tensors) {
  if (tensors.empty()) throw ValidationError("nothing to fuse");
  for (const auto &t : tensors.subspan(1)) {
    if (!t.SameShape(tensors.front()))
      throw ValidationError("fused tensors differ in dimensions or subjects");
    if (t.metric() != tensors.front().metric())
      throw ValidationError("fused tensors use different metrics");
  }
}

}  // namespace

ScoreTensor FuseScoresSum(std::span<const ScoreTensor> tensors) {
  CheckCompatible(tensors);
  ScoreTensor fused = tensors.front();
  auto &out = fused.values();
  for (const auto &t : tensors.subspan(1))
    for (std::size_t c = 0; c < out.size(); ++c) out[c] += t.values()[c];
  return fused;
}

ScoreTensor FuseScoresWeighted(std::span<const ScoreTensor> tensors,
                               std::span<const double> weights) {
  CheckCompatible(tensors);
  if (weights.size() != tensors.size())
    throw ValidationError("fusion has " + std::to_string(tensors.size()) +
                          " tensors but " + std::to_string(weights.size()) +
                          " weights");
  bool any = false;
  for (double w : weights) {
    if (!(w >= 0) || !std::isfinite(w))
      throw ValidationError("fusion weights must be finite and >= 0");
    any = any || w > 0;
  }
  if (!any) throw ValidationError("fusion weights are all zero");
  ScoreTensor fused = tensors.front();
  auto &out = fused.values();
  for (std::size_t c = 0; c < out.size(); ++c) {
    double acc = 0.0;
    for (std::size_t t = 0; t < tensors.size(); ++t)
      acc += weights[t] * tensors[t].values()[c];
    out[c] = acc;
  }
  return fused;
}

namespace {

SourceChannel ParseColor(std::string_view s) {
  SourceChannel c = ParseSourceChannel(s);
  if (c != SourceChannel::kRed && c != SourceChannel::kGreen &&
      c != SourceChannel::kBlue)
    throw ValidationError("fusion terms must be R, G or B, got '" +
                          std::string(s) + "'");
  return c;
}

std::vector<std::string_view> Split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace

FusionSpec FusionSpec::Parse(std::string_view text) {
  FusionSpec spec;
  if (text.starts_with("sum:")) {
    for (auto item : Split(text.substr(4), ','))
      spec.terms.push_back({ParseColor(item), 1.0});
  } else if (text.starts_with("w:")) {
    spec.weighted = true;
    for (auto item : Split(text.substr(2), '+')) {
      if (item.empty()) throw ValidationError("empty fusion term");
      std::string term(item);
      char *end = nullptr;
      double w = std::strtod(term.c_str(), &end);
      if (end == term.c_str())
        throw ValidationError("fusion term '" + term + "' has no weight");
      spec.terms.push_back({ParseColor(end), w});
    }
  } else {
    throw ValidationError("fusion spec must start with 'sum:' or 'w:', got '" +
                          std::string(text) + "'");
  }
  if (spec.terms.empty()) throw ValidationError("fusion spec has no terms");
  for (std::size_t a = 0; a < spec.terms.size(); ++a)
    for (std::size_t b = a + 1; b < spec.terms.size(); ++b)
      if (spec.terms[a].channel == spec.terms[b].channel)
        throw ValidationError("fusion spec repeats a channel");
  return spec;
}

std::string FusionSpec::Label() const {
  std::string out;
  for (const auto &t : terms) {
    if (!out.empty()) out += '+';
    if (weighted) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%g", t.weight);
      out += buf;
    }
    out += ToString(t.channel);
  }
  return out;
}

}  // namespace dctface
