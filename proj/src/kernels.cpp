// src/kernels.cpp

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

#include "dctface/kernels.hpp"

#include <algorithm>
#include <cctype>
#include <exception>
#include <limits>
#include <optional>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace dctface {

const char *ToString(Metric metric) {
  return metric == Metric::kMse ? "MSE" : "MAD";
}

Metric ParseMetric(std::string_view text) {
  std::string up(text);
  for (auto &c : up) c = char(std::toupper(static_cast<unsigned char>(c)));
  if (up == "MSE") return Metric::kMse;
  if (up == "MAD") return Metric::kMad;
  throw ValidationError("unknown metric '" + std::string(text) +
                        "' (expected MSE or MAD)");
}

namespace kernels {

void TemplateBank::AddSubject(std::span<const FeatureVector> templates) {
  if (templates.empty())
    throw ValidationError("subject has no templates");
  if (dim == 0) dim = templates.front().dim();
  for (const auto &t : templates) {
    if (t.dim() != dim)
      throw ValidationError("template dimension mismatch in bank");
    data.insert(data.end(), t.coeffs().begin(), t.coeffs().end());
  }
  offsets.push_back(offsets.back() + templates.size());
}

namespace {

void ProbeRow(std::span<const double> probe, const TemplateBank &bank,
              Metric metric, double *out) {
  const std::size_t subjects = bank.subject_count();
  for (std::size_t s = 0; s < subjects; ++s) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t t = bank.offsets[s]; t < bank.offsets[s + 1]; ++t)
      best = std::min(best, Distance(metric, probe, bank.row(t)));
    out[s] = best;
  }
}

}  // namespace

void NearestTemplateDistances(std::span<const double> probes,
                              const TemplateBank &bank, Metric metric,
                              std::span<double> out, Execution exec) {
  if (bank.dim == 0 || probes.size() % bank.dim != 0)
    throw ValidationError("probe block is not a whole number of rows");
  const std::size_t n_probes = probes.size() / bank.dim;
  const std::size_t subjects = bank.subject_count();
  if (out.size() != n_probes * subjects)
    throw ValidationError("output block has the wrong size");
  const auto n = static_cast<std::ptrdiff_t>(n_probes);
  if (exec == Execution::kSerial) {
    for (std::ptrdiff_t p = 0; p < n; ++p)
      ProbeRow(probes.subspan(p * bank.dim, bank.dim), bank, metric,
               out.data() + p * subjects);
    return;
  }
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t p = 0; p < n; ++p)
    ProbeRow(probes.subspan(p * bank.dim, bank.dim), bank, metric,
             out.data() + p * subjects);
}

std::vector<FeatureVector> ExtractBatch(std::span<const GrayPlane> planes,
                                        int dim, SourceChannel channel,
                                        Execution exec) {
  std::vector<FeatureVector> out(planes.size());
  const auto n = static_cast<std::ptrdiff_t>(planes.size());
  if (exec == Execution::kSerial) {
    for (std::ptrdiff_t i = 0; i < n; ++i)
      out[i] = ExtractFeatures(planes[i], dim, channel);
    return out;
  }
  // Exceptions may not leave an OpenMP region; rethrow the lowest index so
  // the reported error matches the serial run.
  std::vector<std::exception_ptr> errors(planes.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      out[i] = ExtractFeatures(planes[i], dim, channel);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto &e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

int MaxThreads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace kernels
}  // namespace dctface
