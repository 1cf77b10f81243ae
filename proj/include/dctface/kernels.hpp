// include/dctface/kernels.hpp

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

#ifndef DCTFACE_KERNELS_HPP_
#define DCTFACE_KERNELS_HPP_

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "dctface/features.hpp"

namespace dctface {

enum class Metric { kMse, kMad };

const char *ToString(Metric metric);
/// "MSE" or "MAD", case-insensitive.
Metric ParseMetric(std::string_view text);

namespace kernels {

/// Serial kernels are the reference; parallel ones must reproduce them
/// bit for bit.
enum class Execution { kSerial, kParallel };

/// Sum of squared differences (no division by the dimension).
inline double SquaredError(std::span<const double> x, std::span<const double> y) {
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double d = x[i] - y[i];
    acc += d * d;
  }
  return acc;
}

/// Sum of absolute differences.
inline double AbsoluteError(std::span<const double> x, std::span<const double> y) {
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double d = x[i] - y[i];
    acc += d < 0 ? -d : d;
  }
  return acc;
}

inline double Distance(Metric metric, std::span<const double> x,
                       std::span<const double> y) {
  return metric == Metric::kMse ? SquaredError(x, y) : AbsoluteError(x, y);
}

/// Templates of several subjects packed contiguously; subject s owns
/// templates [offsets[s], offsets[s+1]).
struct TemplateBank {
  std::size_t dim = 0;
  std::vector<double> data;
  std::vector<std::size_t> offsets{0};

  std::size_t subject_count() const { return offsets.size() - 1; }
  std::span<const double> row(std::size_t t) const {
    return {data.data() + t * dim, dim};
  }
  void AddSubject(std::span<const FeatureVector> templates);
};

/// out[p * subjects + s] = min over subject s's templates of
/// distance(probe p, template). `probes` holds n_probes rows of bank.dim.
void NearestTemplateDistances(std::span<const double> probes,
                              const TemplateBank &bank, Metric metric,
                              std::span<double> out, Execution exec);

/// Runs ExtractFeatures over a batch of planes.
std::vector<FeatureVector> ExtractBatch(std::span<const GrayPlane> planes,
                                        int dim, SourceChannel channel,
                                        Execution exec);

/// Number of threads a parallel kernel would use.
int MaxThreads();

}  // namespace kernels
}  // namespace dctface

#endif  // DCTFACE_KERNELS_HPP_
